//! Round-disk enclosures and their one-step preimages under `z^d + c`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{root_difference, root_modulus, UnicriticalMap};
use crate::serde_util::complex_pair;

/// Relative widening applied to computed outer radii to absorb rounding.
const ROUNDING_SLACK: f64 = 1e-13;

/// Closed disk `B(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskEnclosure {
    #[serde(with = "complex_pair")]
    pub center: Complex64,
    pub radius: f64,
}

impl DiskEnclosure {
    pub fn new(center: Complex64, radius: f64) -> Self {
        debug_assert!(radius >= 0.0 && radius.is_finite());
        Self { center, radius }
    }

    /// `B̃(δ) = B(0, δ^(1/d))`.
    pub fn critical_ball(map: &UnicriticalMap, delta: f64) -> Self {
        Self::new(Complex64::new(0.0, 0.0), root_modulus(delta, map.degree()))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius
    }

    /// Point on the boundary circle at angle `phi`.
    pub fn boundary_point(&self, phi: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, phi)
    }

    fn widened(self) -> Self {
        if self.radius == 0.0 {
            return self;
        }
        let slack = ROUNDING_SLACK * (self.radius + self.center.norm());
        Self { radius: self.radius + slack, ..self }
    }
}

/// One backward step: a component of `f^{-1}(image)` with its enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PullbackStep {
    /// The disk being pulled back.
    pub image: DiskEnclosure,
    /// Certified superset of the component.
    pub outer: DiskEnclosure,
    /// A tracked preimage point inside the component.
    #[serde(with = "complex_pair")]
    pub inner_point: Complex64,
    /// `B(inner_point, inner_radius)` lies inside the component.
    pub inner_radius: f64,
    /// Lower bound on the component diameter from tracked points.
    pub diam_lower: f64,
    /// The component contains `0`, i.e. `c` lies in the image disk.
    pub critical: bool,
    /// Branch selection could not be made with the required margin.
    pub ambiguous: bool,
}

/// Smallest disk containing the annular sector
/// `{ρ e^{iθ} : ρ_in ≤ ρ ≤ ρ_out, |θ - axis| ≤ half_angle}` for `half_angle ≤ π/4`.
///
/// The sector lies in the convex hull of its four corners and outer arc, and
/// for a center on the axis the farthest points are corners.
fn sector_disk(rho_in: f64, rho_out: f64, gap: f64, half_angle: f64, axis: f64) -> DiskEnclosure {
    let (sin_a, cos_a) = half_angle.sin_cos();
    let (x0, radius) = if gap * gap * cos_a * cos_a <= gap * (rho_in + rho_out) * sin_a * sin_a {
        // the chord between the outer corners already covers the inner corners
        (rho_out * cos_a, rho_out * sin_a)
    } else {
        let x0 = (rho_in + rho_out) / (2.0 * cos_a);
        let dx = (2.0 * rho_out * sin_a * sin_a - gap) / (2.0 * cos_a);
        (x0, dx.hypot(rho_out * sin_a))
    };
    DiskEnclosure::new(Complex64::from_polar(x0, axis), radius)
}

/// Radius `s` such that the component of `f^{-1}(B(a + c, r))` through a root
/// `z0` of modulus `rho` lies in `B(z0, s)`, when `|z0 + h|^d` cannot return
/// to the disk for `|h| = s`.
///
/// Uses `|(z0 + h)^d - z0^d| ≥ 2 d ρ^{d-1} s - ((ρ + s)^d - ρ^d)`.
fn root_disk_radius(rho: f64, r: f64, d: u32) -> Option<f64> {
    let lin = f64::from(d) * rho.powi(d as i32 - 1);
    // h(s) = lin*s - Σ_{j≥2} C(d,j) ρ^{d-j} s^j, concave, maximal at s_max
    let h = |s: f64| {
        let mut acc = lin * s;
        let mut binom = f64::from(d);
        for j in 2..=d {
            binom *= f64::from(d - j + 1) / f64::from(j);
            acc -= binom * rho.powi((d - j) as i32) * s.powi(j as i32);
        }
        acc
    };
    let dh = |s: f64| {
        let mut acc = lin;
        let mut binom = f64::from(d);
        for j in 2..=d {
            binom *= f64::from(d - j + 1) / f64::from(j);
            acc -= binom * f64::from(j) * rho.powi((d - j) as i32) * s.powi(j as i32 - 1);
        }
        acc
    };
    let s_max = rho * (2f64.powf(1.0 / f64::from(d - 1)) - 1.0);
    if r == 0.0 {
        return Some(0.0);
    }
    if !(h(s_max) > r * (1.0 + 1e-9)) {
        return None;
    }
    // Newton from the left converges monotonically from below on a concave h
    let mut s = 0.0;
    for _ in 0..100 {
        let next = s + (r - h(s)) / dh(s);
        if !(next > s) || next >= s_max {
            break;
        }
        let done = (next - s) <= 1e-16 * next;
        s = next;
        if done {
            break;
        }
    }
    let mut s = if s > 0.0 { s.min(s_max) } else { (r / lin).min(s_max) };
    let mut widen = 1e-12;
    while h(s) < r && s < s_max {
        s = (s * (1.0 + widen)).min(s_max);
        widen *= 10.0;
    }
    (h(s) >= r).then_some(s)
}

/// Outer enclosure of branch `k` of the preimage of `B(a + c, r)` when `|a| > r`.
pub(crate) fn branch_outer(a: Complex64, r: f64, d: u32, k: u32) -> DiskEnclosure {
    let na = a.norm();
    let df = f64::from(d);
    let axis = (a.arg() + 2.0 * PI * f64::from(k)) / df;
    let rho = root_modulus(na, d);
    if r == 0.0 {
        return DiskEnclosure::new(Complex64::from_polar(rho, axis), 0.0);
    }
    let rho_in = root_modulus(na - r, d);
    let rho_out = root_modulus(na + r, d);
    let gap = root_difference(na + r, na - r, d);
    let half_angle = (r / na).min(1.0).asin() / df;
    let sector = sector_disk(rho_in, rho_out, gap, half_angle, axis);
    let outer = match root_disk_radius(rho, r, d) {
        Some(s) if s < sector.radius => DiskEnclosure::new(Complex64::from_polar(rho, axis), s),
        _ => sector,
    };
    outer.widened()
}

/// Outer enclosure of the single (critical) preimage of `B(a + c, r)` when `|a| ≤ r`.
pub(crate) fn critical_outer(a: Complex64, r: f64, d: u32) -> DiskEnclosure {
    DiskEnclosure::new(Complex64::new(0.0, 0.0), root_modulus(a.norm() + r, d)).widened()
}

/// Radius of a disk around a root of `p - c` contained in `f^{-1}(B(p, rho))`.
pub(crate) fn inner_radius(a_norm: f64, rho: f64, d: u32) -> f64 {
    root_difference(a_norm + rho, a_norm, d)
}

/// Index of the branch whose axis is angularly closest to `z`.
pub(crate) fn nearest_branch(a: Complex64, d: u32, z: Complex64) -> u32 {
    let df = f64::from(d);
    let base = a.arg() / df;
    let sector = 2.0 * PI / df;
    let offset = (z.arg() - base).rem_euclid(2.0 * PI);
    ((offset / sector).round() as u32) % d
}

/// Components of `f^{-1}(D)`.
///
/// With `a = D.center - c` and `r = D.radius`: if `|a| > r` there are `d`
/// components, one per branch of `a^(1/d)`; otherwise a single critical
/// component enclosed by `B(0, (|a| + r)^(1/d))`.
pub fn disk_preimage_components(map: &UnicriticalMap, disk: &DiskEnclosure) -> Vec<PullbackStep> {
    let d = map.degree();
    let a = disk.center - map.parameter();
    let r = disk.radius;
    let na = a.norm();
    let lower = inner_radius(na, r, d);
    if na <= r {
        let inner_point = map.branch_root(a, 0);
        return vec![PullbackStep {
            image: *disk,
            outer: critical_outer(a, r, d),
            inner_point,
            inner_radius: lower,
            diam_lower: 2.0 * lower,
            critical: true,
            ambiguous: false,
        }];
    }
    (0..d)
        .map(|k| PullbackStep {
            image: *disk,
            outer: branch_outer(a, r, d, k),
            inner_point: map.branch_root(a, k),
            inner_radius: lower,
            diam_lower: 2.0 * lower,
            critical: false,
            ambiguous: false,
        })
        .collect()
}

/// Modulus `log(outer / inner)` of a round annulus.
pub fn modulus_round(outer_radius: f64, inner_radius: f64) -> Result<f64> {
    if !(inner_radius > 0.0 && inner_radius <= outer_radius && outer_radius.is_finite()) {
        return Err(Error::Domain(format!(
            "annulus needs 0 < inner <= outer, got inner {inner_radius}, outer {outer_radius}"
        )));
    }
    Ok((outer_radius / inner_radius).ln())
}
