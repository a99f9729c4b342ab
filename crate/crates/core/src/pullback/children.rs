//! Children of the round disk `V = B̃(δ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chain::{pull_back_along_orbit, PullbackChain};
use super::disk::DiskEnclosure;
use crate::error::Result;
use crate::map::{root_modulus, UnicriticalMap};
use crate::serde_util::extended_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    CertainChild,
    CertainNot,
    Unknown,
}

/// A return of `0` to `V` and the pull-back of `V` containing `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChildRecord {
    pub time: usize,
    pub enclosure: PullbackChain,
    /// `(lower, upper)` bounds on `diam f(Y)`.
    pub image_diam_bounds: (f64, f64),
    pub certainty: Certainty,
}

fn classify(chain: &PullbackChain) -> Certainty {
    let origin = Complex64::new(0.0, 0.0);
    let (last, intermediate) = chain.steps.split_last().expect("time >= 1");
    if !chain.valid {
        return Certainty::Unknown;
    }
    if intermediate
        .iter()
        .any(|s| (s.inner_point - origin).norm() < s.inner_radius)
    {
        return Certainty::CertainNot;
    }
    let clear = intermediate.iter().all(|s| !s.critical && !s.outer.contains(origin));
    if last.critical && clear {
        Certainty::CertainChild
    } else {
        Certainty::Unknown
    }
}

/// Pull-backs of `B̃(δ)` along the critical orbit at every return time
/// `1 ≤ n ≤ cutoff` of `0`.
///
/// A record is a certain child when only its last step is critical and no
/// intermediate enclosure meets `0`; it is certainly not a child when an
/// intermediate inner disk contains `0`.
pub fn find_children(map: &UnicriticalMap, delta: f64, cutoff: usize) -> Result<Vec<ChildRecord>> {
    let orbit = map.critical_orbit(cutoff)?;
    let target = DiskEnclosure::critical_ball(map, delta);
    let radius = root_modulus(delta, map.degree());
    let mut out = Vec::new();
    for (n, z) in orbit.points.iter().enumerate().skip(1) {
        if z.norm() > radius {
            continue;
        }
        let chain = pull_back_along_orbit(map, &target, &orbit, n)?;
        let image_diam_bounds = chain.diam_bounds_at_level(1);
        let certainty = classify(&chain);
        out.push(ChildRecord { time: n, enclosure: chain, image_diam_bounds, certainty });
    }
    Ok(out)
}

/// Sum of `diam f(Y)^s` over children against `(1 - 2^{-s})^{-1} (δ/R)^s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChildSumReport {
    pub delta: f64,
    pub t: f64,
    /// `s = t / d`.
    pub s: f64,
    pub certain_children: usize,
    pub unknown: usize,
    /// Sum of upper image diameters over certain children.
    pub sum_certain: f64,
    /// Same sum including records of unknown status.
    pub sum_with_unknown: f64,
    #[serde(with = "extended_f64")]
    pub r_lo: f64,
    #[serde(with = "extended_f64")]
    pub bound: f64,
    pub within_bound: bool,
}

pub fn child_sum_report(
    map: &UnicriticalMap,
    records: &[ChildRecord],
    delta: f64,
    t: f64,
    r_lo: f64,
) -> ChildSumReport {
    let s = t / f64::from(map.degree());
    let mut sum_certain = 0.0;
    let mut sum_with_unknown = 0.0;
    let mut certain_children = 0;
    let mut unknown = 0;
    for r in records {
        let term = r.image_diam_bounds.1.powf(s);
        match r.certainty {
            Certainty::CertainChild => {
                certain_children += 1;
                sum_certain += term;
                sum_with_unknown += term;
            }
            Certainty::Unknown => {
                unknown += 1;
                sum_with_unknown += term;
            }
            Certainty::CertainNot => {}
        }
    }
    let bound = (delta / r_lo).powf(s) / (1.0 - 2f64.powf(-s));
    ChildSumReport {
        delta,
        t,
        s,
        certain_children,
        unknown,
        sum_certain,
        sum_with_unknown,
        r_lo,
        bound,
        within_bound: sum_certain <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_has_no_children() {
        let f = UnicriticalMap::quadratic(-2.0);
        assert!(find_children(&f, 0.05, 1000).unwrap().is_empty());
    }

    #[test]
    fn zero_cutoff() {
        let f = UnicriticalMap::quadratic(-1.0);
        assert!(find_children(&f, 0.05, 0).unwrap().is_empty());
    }

    #[test]
    fn basilica_first_return_is_child() {
        let f = UnicriticalMap::quadratic(-1.0);
        let records = find_children(&f, 0.04, 6).unwrap();
        assert_eq!(records.iter().map(|r| r.time).collect::<Vec<_>>(), vec![2, 4, 6]);
        assert_eq!(records[0].certainty, Certainty::CertainChild);
        // later returns pass through the first child
        assert_eq!(records[1].certainty, Certainty::CertainNot);
        let (lo, hi) = records[0].image_diam_bounds;
        assert!(lo <= hi && hi > 0.0);
        let report = child_sum_report(&f, &records, 0.04, 1.0, f64::INFINITY);
        assert_eq!(report.bound, 0.0);
        assert!(!report.within_bound);
        assert_eq!(report.certain_children, 1);
    }
}
