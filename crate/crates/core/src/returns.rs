//! Close returns of the critical orbit.
//!
//! `n(δ)` is the first time `n ≥ 1` with `f^n(0) ∈ B̃(δ)`. It is a step
//! function of `δ` whose jumps sit at `|f^m(0)|^d` for the running-minimum
//! times `m` of `|f^m(0)|`. For each step the marked point `ζ(δ)` is the
//! preimage of `0` under `f^n` inside the pull-back of `B̃(δ)` that contains
//! `0`, obtained by tracking roots backward along the critical orbit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{OrbitSegment, UnicriticalMap};
use crate::pullback::{pull_back_along_orbit, DiskEnclosure, ScaleProfile};
use crate::serde_util::{complex_pair_opt, extended_f64, extended_f64_opt};

/// Forward residual allowed for `f^n(ζ)`, relative to the largest reference point.
pub const ZETA_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// One step of the staircase: `n(δ) = n` for `δ ∈ [delta_lo, delta_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloseReturn {
    pub delta_hi: f64,
    pub delta_lo: f64,
    pub n: usize,
    /// `ζ(delta_hi)`; absent when the tracking was ambiguous or failed the
    /// forward check.
    #[serde(with = "complex_pair_opt")]
    pub zeta: Option<Complex64>,
    /// `log|Df^n(ζ)|` summed along the backward-tracked points.
    #[serde(with = "extended_f64_opt")]
    pub log_deriv_at_zeta: Option<f64>,
    /// `|f^n(ζ)|` after re-iterating `ζ` forward.
    #[serde(with = "extended_f64_opt")]
    pub residual: Option<f64>,
    /// Largest difference of the forward `log|Df^n|` over the `d` choices of
    /// the final root.
    #[serde(with = "extended_f64_opt")]
    pub symmetry_spread: Option<f64>,
    pub ambiguous: bool,
}

impl CloseReturn {
    pub fn accepted(&self) -> bool {
        self.zeta.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnStaircase {
    /// Ordered by decreasing `δ`.
    pub returns: Vec<CloseReturn>,
    pub delta_min: f64,
    pub delta_max: f64,
    pub cutoff: usize,
}

impl ReturnStaircase {
    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }
}

/// `ζ` with its cocycle, residual and symmetry spread; `zeta` is `None` when
/// the chain is ambiguous or the forward check fails.
struct Marked {
    zeta: Option<Complex64>,
    log_deriv: f64,
    residual: f64,
    spread: f64,
    ambiguous: bool,
}

fn mark_return(map: &UnicriticalMap, delta: f64, n: usize, orbit: &OrbitSegment) -> Result<Marked> {
    let target = DiskEnclosure::critical_ball(map, delta);
    let chain = pull_back_along_orbit(map, &target, orbit, n)?;
    let zeta = chain.endpoint();
    let log_deriv: f64 = chain.steps.iter().map(|s| map.log_abs_derivative(s.inner_point)).sum();
    let scale = orbit.points[..=n].iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let residual = map.apply_n(zeta, n).norm();

    // the d roots of the last step are rotations of each other
    let d = map.degree();
    let forward: Vec<f64> = (0..d)
        .map(|k| {
            let z = zeta * Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(d));
            map.iterate(z, n).log_deriv.get(n).copied().unwrap_or(f64::INFINITY)
        })
        .collect();
    let lo = forward.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = forward.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let accepted = chain.valid && residual <= ZETA_RESIDUAL_TOLERANCE * scale;
    Ok(Marked {
        zeta: accepted.then_some(zeta),
        log_deriv,
        residual,
        spread: if hi == lo { 0.0 } else { hi - lo },
        ambiguous: !chain.valid,
    })
}

/// The staircase `n(δ)` on `[delta_min, delta_max]` from the orbit of `0` up to `cutoff`.
pub fn return_staircase(
    map: &UnicriticalMap,
    delta_min: f64,
    delta_max: f64,
    cutoff: usize,
) -> Result<ReturnStaircase> {
    if !(delta_min > 0.0 && delta_min <= delta_max && delta_max.is_finite()) {
        return Err(Error::Domain(format!(
            "need 0 < delta_min <= delta_max, got [{delta_min}, {delta_max}]"
        )));
    }
    let orbit = map.critical_orbit(cutoff)?;
    let d = map.degree() as i32;
    let mut returns = Vec::new();
    let mut upper = f64::INFINITY;
    for (m, r) in orbit.closest_returns() {
        let beta = r.powi(d);
        let (lo, hi) = (beta.max(delta_min), upper.min(delta_max));
        upper = beta;
        if lo > hi {
            continue;
        }
        let marked = mark_return(map, hi, m, &orbit)?;
        returns.push(CloseReturn {
            delta_hi: hi,
            delta_lo: lo,
            n: m,
            zeta: marked.zeta,
            log_deriv_at_zeta: marked.zeta.map(|_| marked.log_deriv),
            residual: Some(marked.residual),
            symmetry_spread: Some(marked.spread),
            ambiguous: marked.ambiguous,
        });
        if beta <= delta_min {
            break;
        }
    }
    Ok(ReturnStaircase { returns, delta_min, delta_max, cutoff })
}

/// Diameter bound of the pull-back `W` of `B̃(2δ)` by `f^{n-1}` containing `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub delta: f64,
    pub n: usize,
    pub diam_lower: f64,
    pub diam_upper: f64,
    /// `δ / diam_upper`.
    pub r_implied: f64,
}

/// Pulls `B̃(2δ)` back `n - 1` steps along the orbit of `c` for the return
/// `ret` and turns the diameter bound into a lower estimate of `R(δ)`.
pub fn first_entry_bridge(map: &UnicriticalMap, ret: &CloseReturn) -> Result<BridgeReport> {
    if ret.n == 0 {
        return Err(Error::Domain("return time must be at least 1".into()));
    }
    let steps = ret.n - 1;
    let orbit = map.critical_value_orbit(steps)?;
    let delta = ret.delta_hi;
    let target = DiskEnclosure::critical_ball(map, 2.0 * delta);
    let chain = pull_back_along_orbit(map, &target, &orbit, steps)?;
    if let Some(j) = chain.steps.iter().position(|s| s.ambiguous) {
        return Err(Error::Ambiguous { step: j + 1 });
    }
    Ok(BridgeReport {
        delta,
        n: ret.n,
        diam_lower: chain.diam_lower,
        diam_upper: chain.diam_upper,
        r_implied: delta / chain.diam_upper,
    })
}

/// Exponent applied to `R(δ)` in the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentMode {
    T,
    TOverD,
}

impl ExponentMode {
    pub fn exponent(self, t: f64, degree: u32) -> f64 {
        match self {
            ExponentMode::T => t,
            ExponentMode::TOverD => t / f64::from(degree),
        }
    }
}

/// `(ln δ, R_lo(δ)^{-e})` sorted by `δ`.
fn integrand_nodes(profile: &ScaleProfile, e: f64) -> Vec<(f64, f64)> {
    let mut nodes: Vec<(f64, f64)> = profile
        .entries
        .iter()
        .map(|entry| {
            let g = if entry.r_lo == f64::INFINITY {
                0.0
            } else if entry.r_lo == 0.0 {
                f64::INFINITY
            } else {
                entry.r_lo.powf(-e)
            };
            (entry.delta.ln(), g)
        })
        .collect();
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
    nodes.dedup_by(|a, b| a.0 == b.0);
    nodes
}

fn segment(x0: f64, g0: f64, x1: f64, g1: f64) -> f64 {
    if g0 == 0.0 && g1 == 0.0 {
        0.0
    } else {
        0.5 * (g0 + g1) * (x1 - x0)
    }
}

/// `∫ R(δ)^{-e} dδ/δ` over the profile's δ range by the trapezoid rule in
/// `ln δ`, with `R_lo` as the integrand bound.
///
/// Grid points without returns contribute `0`; a grid point with `R_lo = 0`
/// makes the integral infinite.
pub fn bc_integral(profile: &ScaleProfile, t: f64, mode: ExponentMode) -> Result<f64> {
    let nodes = integrand_nodes(profile, mode.exponent(t, profile.degree));
    if nodes.len() < 2 {
        return Err(Error::EmptyProfile);
    }
    Ok(nodes.windows(2).map(|w| segment(w[0].0, w[0].1, w[1].0, w[1].1)).sum())
}

/// The same integral restricted to `[lo, hi] ∩ [δ_min, δ_max]`, using the
/// piecewise-linear interpolant in `ln δ`.
pub fn bc_integral_between(
    profile: &ScaleProfile,
    t: f64,
    mode: ExponentMode,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let nodes = integrand_nodes(profile, mode.exponent(t, profile.degree));
    if nodes.len() < 2 {
        return Err(Error::EmptyProfile);
    }
    let (a, b) = (lo.ln().max(nodes[0].0), hi.ln().min(nodes[nodes.len() - 1].0));
    if !(a < b) {
        return Ok(0.0);
    }
    let interp = |x0: f64, g0: f64, x1: f64, g1: f64, x: f64| {
        if g0 == g1 {
            g0
        } else {
            g0 + (g1 - g0) * (x - x0) / (x1 - x0)
        }
    };
    let mut total = 0.0;
    for w in nodes.windows(2) {
        let ((x0, g0), (x1, g1)) = (w[0], w[1]);
        let (s, e) = (x0.max(a), x1.min(b));
        if s >= e {
            continue;
        }
        total += segment(s, interp(x0, g0, x1, g1, s), e, interp(x0, g0, x1, g1, e));
    }
    Ok(total)
}

/// Grid for [`close_return_ratios`]: `per_interval` geometric points across
/// each of the first `intervals` staircase steps, endpoints included.
pub fn staircase_grid(staircase: &ReturnStaircase, intervals: usize, per_interval: usize) -> Vec<f64> {
    let per = per_interval.max(2);
    let mut grid: Vec<f64> = staircase
        .returns
        .iter()
        .filter(|r| r.delta_lo < r.delta_hi)
        .take(intervals)
        .flat_map(|r| {
            let ratio = (r.delta_lo / r.delta_hi).ln();
            (0..per).map(move |i| match i {
                0 => r.delta_hi,
                i if i == per - 1 => r.delta_lo,
                i => r.delta_hi * (ratio * i as f64 / (per - 1) as f64).exp(),
            })
        })
        .collect();
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();
    grid
}

/// Integral over one staircase step against `|Df^n(ζ)|^{-t}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloseReturnRatio {
    pub delta_lo: f64,
    pub delta_hi: f64,
    pub n: usize,
    #[serde(with = "extended_f64")]
    pub integral: f64,
    #[serde(with = "extended_f64_opt")]
    pub deriv_term: Option<f64>,
    #[serde(with = "extended_f64_opt")]
    pub ratio: Option<f64>,
}

/// For each staircase step with `δ₁ < δ₂`, the `t/d` integral over
/// `[δ₁, δ₂]` and its ratio to `exp(-t · log|Df^n(ζ)|)`.
pub fn close_return_ratios(
    staircase: &ReturnStaircase,
    profile: &ScaleProfile,
    t: f64,
) -> Result<Vec<CloseReturnRatio>> {
    staircase
        .returns
        .iter()
        .filter(|r| r.delta_lo < r.delta_hi)
        .map(|r| {
            let integral = bc_integral_between(profile, t, ExponentMode::TOverD, r.delta_lo, r.delta_hi)?;
            let deriv_term = r.log_deriv_at_zeta.map(|l| (-t * l).exp());
            let ratio = deriv_term.map(|dt| if integral == 0.0 { 0.0 } else { integral / dt });
            Ok(CloseReturnRatio { delta_lo: r.delta_lo, delta_hi: r.delta_hi, n: r.n, integral, deriv_term, ratio })
        })
        .collect()
}

/// Largest over smallest of the finite positive values.
pub fn spread(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (lo, hi) = values
        .into_iter()
        .filter(|v| v.is_finite() && *v > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    (hi > 0.0).then(|| hi / lo)
}
