//! Return-derivative statistics `M_+`, `M_-` and `M` of `V = B̃(δ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::map::{root_modulus, UnicriticalMap};
use crate::serde_util::extended_f64;
use crate::tree::{fold_preimage_tree, TreeConfig, Visit};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnDerivativeStats {
    pub delta: f64,
    /// `min |Df^n(c)|` over `1 ≤ n ≤ cutoff` with `f^n(0) ∈ V`.
    #[serde(with = "extended_f64")]
    pub m_plus: f64,
    /// `min |Df^n(ζ)|^d` over `ζ ∈ V ∩ f^{-n}(0)`, `1 ≤ n ≤ tree_depth`.
    #[serde(with = "extended_f64")]
    pub m_minus: f64,
    #[serde(with = "extended_f64")]
    pub m: f64,
    pub cutoff: usize,
    pub tree_depth: usize,
}

/// Scans the critical orbit to `cutoff` for `M_+` and the preimage tree of
/// `0` to `tree_depth` for `M_-`. Empty scans give `+∞`.
pub fn return_derivative_stats(
    map: &UnicriticalMap,
    delta: f64,
    cutoff: usize,
    tree_depth: usize,
    config: &TreeConfig,
) -> Result<ReturnDerivativeStats> {
    let radius = root_modulus(delta, map.degree());
    let d = f64::from(map.degree());

    let orbit = map.critical_orbit(cutoff)?;
    let c_orbit = map.critical_value_orbit(cutoff)?;
    let m_plus = (1..=cutoff)
        .filter(|&n| orbit.points[n].norm() <= radius)
        .map(|n| c_orbit.log_deriv[n])
        .fold(f64::INFINITY, f64::min)
        .exp();

    let (min_log, _) = fold_preimage_tree(
        map,
        Complex64::new(0.0, 0.0),
        tree_depth,
        config,
        || f64::INFINITY,
        |acc: &mut f64, node| {
            if node.depth >= 1 && node.point.norm() <= radius {
                *acc = acc.min(node.log_abs_deriv);
            }
            Visit::Descend
        },
        f64::min,
    )?;
    let m_minus = (d * min_log).exp();

    Ok(ReturnDerivativeStats {
        delta,
        m_plus,
        m_minus,
        m: m_plus.max(m_minus),
        cutoff,
        tree_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_has_no_forward_returns() {
        let f = UnicriticalMap::quadratic(-2.0);
        let s = return_derivative_stats(&f, 0.05, 100, 12, &TreeConfig::default()).unwrap();
        assert_eq!(s.m_plus, f64::INFINITY);
        assert_eq!(s.m, f64::INFINITY);
    }

    #[test]
    fn first_return_at_one() {
        let f = UnicriticalMap::quadratic(-1.0);
        // |f(0)| = 1 <= δ^(1/2) for δ = 1
        let s = return_derivative_stats(&f, 1.0, 1, 1, &TreeConfig::default()).unwrap();
        assert!((s.m_plus - 2.0).abs() < 1e-15);
        // f^{-1}(0) = ±1, |Df| = 2, squared
        assert!((s.m_minus - 4.0).abs() < 1e-12);
        assert_eq!(s.m, 4.0);
    }
}
