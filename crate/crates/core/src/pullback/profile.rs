//! Two-sided estimates of the backward-contraction profile `R(δ)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::pull_back_along_orbit;
use super::disk::DiskEnclosure;
use crate::error::{Error, Result};
use crate::map::{root_modulus, OrbitSegment, UnicriticalMap};
use crate::serde_util::extended_f64;

/// Default number of grid points.
pub const DEFAULT_GRID_LEN: usize = 40;

/// Geometric grid `δ_j = δ_0 · 2^{-j}`, `j = 0..count`.
pub fn dyadic_grid(delta0: f64, count: usize) -> Vec<f64> {
    (0..count).map(|j| delta0 * 0.5f64.powi(j as i32)).collect()
}

/// Estimates at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleEntry {
    pub delta: f64,
    /// Minimum of `δ / diam_upper` over unambiguous chains.
    #[serde(with = "extended_f64")]
    pub r_lo: f64,
    /// Minimum of `δ / diam_lower` over all chains.
    #[serde(with = "extended_f64")]
    pub r_hi: f64,
    /// Times `n ≤ N` with `f^n(c) ∈ B̃(δ)`.
    pub return_times_used: Vec<usize>,
    /// Return times whose chain had an ambiguous step.
    pub invalid_times: Vec<usize>,
    /// No return time was found below the cutoff.
    pub cutoff_limited: bool,
}

/// `R(δ)` bounds on a δ-grid, from return times up to `cutoff`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleProfile {
    pub degree: u32,
    pub delta_grid: Vec<f64>,
    pub entries: Vec<ScaleEntry>,
    pub cutoff: usize,
}

impl ScaleProfile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Some grid point saw no return below the cutoff.
    pub fn cutoff_limited(&self) -> bool {
        self.entries.iter().any(|e| e.cutoff_limited)
    }

    /// Entry whose `delta` equals `delta` up to relative `1e-12`.
    pub fn entry_at(&self, delta: f64) -> Option<&ScaleEntry> {
        self.entries.iter().find(|e| (e.delta - delta).abs() <= 1e-12 * delta.abs())
    }
}

/// Bounds for a single `δ` from the orbit of the critical value.
pub fn scale_entry(map: &UnicriticalMap, orbit: &OrbitSegment, delta: f64) -> Result<ScaleEntry> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("δ must be positive and finite, got {delta}")));
    }
    let target = DiskEnclosure::critical_ball(map, delta);
    let radius = root_modulus(delta, map.degree());
    let mut r_lo = f64::INFINITY;
    let mut r_hi = f64::INFINITY;
    let mut used = Vec::new();
    let mut invalid = Vec::new();
    for (n, z) in orbit.points.iter().enumerate() {
        if z.norm() > radius {
            continue;
        }
        let chain = pull_back_along_orbit(map, &target, orbit, n)?;
        used.push(n);
        r_hi = r_hi.min(delta / chain.diam_lower);
        if chain.valid {
            r_lo = r_lo.min(delta / chain.diam_upper);
        } else {
            invalid.push(n);
        }
    }
    let cutoff_limited = used.is_empty();
    if !cutoff_limited && invalid.len() == used.len() {
        r_lo = 0.0;
    }
    Ok(ScaleEntry {
        delta,
        r_lo: r_lo.min(r_hi),
        r_hi,
        return_times_used: used,
        invalid_times: invalid,
        cutoff_limited,
    })
}

/// `R(δ)` on `delta_grid` from return times `n ≤ cutoff` of the critical value.
///
/// For each return the disk `B̃(δ)` is pulled back along the orbit of `c`;
/// `R_hi` uses the diameter lower bound of every chain, `R_lo` the outer
/// enclosure of unambiguous chains only (and is `0` when no chain is
/// unambiguous). Grid points are independent and run in parallel.
pub fn backward_contraction_profile(
    map: &UnicriticalMap,
    delta_grid: &[f64],
    cutoff: usize,
) -> Result<ScaleProfile> {
    let orbit = map.critical_value_orbit(cutoff)?;
    let entries = delta_grid
        .par_iter()
        .map(|&delta| scale_entry(map, &orbit, delta))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaleProfile { degree: map.degree(), delta_grid: delta_grid.to_vec(), entries, cutoff })
}
