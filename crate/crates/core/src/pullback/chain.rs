//! Pull-backs of a disk along a reference orbit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::disk::{branch_outer, critical_outer, inner_radius, nearest_branch, DiskEnclosure, PullbackStep};
use crate::error::{Error, Result};
use crate::map::{polar_root, root_modulus, OrbitSegment, UnicriticalMap};
use crate::tree::COLLISION_TOLERANCE;

/// Second-nearest candidate must be more than this factor farther away.
pub const AMBIGUITY_FACTOR: f64 = 2.0;

/// Antipodal boundary pairs tracked for the diameter lower bound.
const PROBE_PAIRS: usize = 2;

/// The component of `f^{-n}(target)` selected by a reference orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PullbackChain {
    pub target: DiskEnclosure,
    /// `steps[j - 1]` is the component at level `n - j`.
    pub steps: Vec<PullbackStep>,
    pub diam_upper: f64,
    pub diam_lower: f64,
    /// No step was ambiguous.
    pub valid: bool,
}

impl PullbackChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The final component's tracked point, a preimage of `target.center`.
    pub fn endpoint(&self) -> Complex64 {
        self.steps.last().map_or(self.target.center, |s| s.inner_point)
    }

    /// Outer enclosure of the component at `level` (`0` is the last step,
    /// `n` is the target itself).
    pub fn outer_at_level(&self, level: usize) -> DiskEnclosure {
        let n = self.steps.len();
        if level >= n {
            self.target
        } else {
            self.steps[n - 1 - level].outer
        }
    }

    /// `(lower, upper)` diameter bounds of the component at `level`.
    pub fn diam_bounds_at_level(&self, level: usize) -> (f64, f64) {
        let n = self.steps.len();
        if level >= n {
            (self.target.diameter(), self.target.diameter())
        } else {
            let step = &self.steps[n - 1 - level];
            (step.diam_lower, step.outer.diameter())
        }
    }
}

/// The `d` roots of `p - c` rotated so that `roots[k] = ω^k roots[0]`.
fn roots_of(map: &UnicriticalMap, p: Complex64) -> impl Iterator<Item = Complex64> {
    let d = map.degree();
    let a = p - map.parameter();
    let rho = root_modulus(a.norm(), d);
    let theta = a.arg();
    (0..d).map(move |k| polar_root(rho, theta, d, k))
}

/// Root of `p - c` nearest to `anchor`.
fn nearest_root(map: &UnicriticalMap, p: Complex64, anchor: Complex64) -> Complex64 {
    roots_of(map, p)
        .min_by(|x, y| (x - anchor).norm().total_cmp(&(y - anchor).norm()))
        .expect("degree >= 2")
}

/// Root of `p - c` with argument in `[0, 2π/d)`.
fn canonical_root(map: &UnicriticalMap, p: Complex64) -> Complex64 {
    let sector = 2.0 * PI / f64::from(map.degree());
    roots_of(map, p)
        .find(|z| {
            let arg = z.arg().rem_euclid(2.0 * PI);
            arg < sector || (2.0 * PI - arg) < 1e-15
        })
        .expect("one root per sector")
}

fn pair_spread(points: &[Complex64]) -> f64 {
    points
        .chunks(2)
        .map(|pair| (pair[0] - pair[1]).norm())
        .fold(0.0, f64::max)
}

/// Pulls `target` back `n` steps along `reference`, which must satisfy
/// `reference.points[n] ∈ target`.
///
/// At each step the tracked point moves to the root nearest the reference
/// point; the step is ambiguous when the second-nearest root is within
/// [`AMBIGUITY_FACTOR`] of that distance. Non-critical steps enclose the
/// branch sector containing the tracked point, critical steps the single
/// component around `0`. Antipodal boundary points of `target` follow the
/// same branches and give the diameter lower bound.
pub fn pull_back_along_orbit(
    map: &UnicriticalMap,
    target: &DiskEnclosure,
    reference: &OrbitSegment,
    n: usize,
) -> Result<PullbackChain> {
    if reference.points.len() <= n {
        return Err(Error::Domain(format!(
            "reference orbit has {} iterates, need {n}",
            reference.len()
        )));
    }
    if !target.contains(reference.points[n]) {
        return Err(Error::Domain(format!(
            "reference endpoint {} is outside the target disk",
            reference.points[n]
        )));
    }
    let d = map.degree();
    let c = map.parameter();

    let mut probes: Vec<Complex64> = (0..2 * PROBE_PAIRS)
        .map(|i| {
            let pair = (i / 2) as f64;
            let phi = PI * pair / PROBE_PAIRS as f64 + if i % 2 == 1 { PI } else { 0.0 };
            target.boundary_point(phi)
        })
        .collect();
    let mut image = *target;
    let mut inner = target.center;
    let mut inner_r = target.radius;
    let mut steps = Vec::with_capacity(n);

    for j in 1..=n {
        let reference_point = reference.points[n - j];
        let a = image.center - c;
        let critical = a.norm() <= image.radius;

        let mut ambiguous = false;
        let next_inner = if critical && reference_point.norm() < COLLISION_TOLERANCE {
            canonical_root(map, inner)
        } else {
            let mut dist: Vec<(f64, Complex64)> =
                roots_of(map, inner).map(|z| ((z - reference_point).norm(), z)).collect();
            dist.sort_by(|x, y| x.0.total_cmp(&y.0));
            if !critical && dist[1].0 <= AMBIGUITY_FACTOR * dist[0].0 {
                ambiguous = true;
            }
            dist[0].1
        };

        let outer = if critical {
            critical_outer(a, image.radius, d)
        } else {
            let k = nearest_branch(a, d, next_inner);
            let outer = branch_outer(a, image.radius, d, k);
            if !outer.contains(reference_point) {
                let elsewhere = (0..d)
                    .filter(|&m| m != k)
                    .any(|m| branch_outer(a, image.radius, d, m).contains(reference_point));
                if !elsewhere {
                    return Err(Error::Selection { step: j, point: reference_point });
                }
                ambiguous = true;
            }
            outer
        };
        if critical && !outer.contains(reference_point) {
            return Err(Error::Selection { step: j, point: reference_point });
        }

        let next_inner_r = inner_radius((inner - c).norm(), inner_r, d);
        for p in probes.iter_mut() {
            let anchor = if critical { next_inner } else { outer.center };
            *p = nearest_root(map, *p, anchor);
        }
        let diam_lower = pair_spread(&probes).max(2.0 * next_inner_r);

        steps.push(PullbackStep {
            image,
            outer,
            inner_point: next_inner,
            inner_radius: next_inner_r,
            diam_lower,
            critical,
            ambiguous,
        });
        image = outer;
        inner = next_inner;
        inner_r = next_inner_r;
    }

    let (diam_lower, diam_upper) = match steps.last() {
        Some(last) => (last.diam_lower, last.outer.diameter()),
        None => (target.diameter(), target.diameter()),
    };
    let valid = steps.iter().all(|s| !s.ambiguous);
    Ok(PullbackChain { target: *target, steps, diam_upper, diam_lower, valid })
}
