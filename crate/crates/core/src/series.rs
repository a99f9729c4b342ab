//! Poincaré series truncations, the forward series along the critical value,
//! and the pressure-root estimate of the convergence exponent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::UnicriticalMap;
use crate::serde_util::{complex_pair, extended_f64, extended_f64_vec};
use crate::sum::{neumaier_sum, LogSum, NeumaierSum};
use crate::tree::{fold_preimage_tree, TreeConfig, Visit};

/// How the preimage tree is traversed for a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Traversal {
    #[default]
    Exhaustive,
    /// Skip the children of any node whose term falls below `floor`.
    ///
    /// This is a heuristic: `|Df^n|^{-t}` is not monotone along branches.
    Pruned { floor: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationMode {
    Exhaustive,
    Pruned,
}

/// Truncation `𝒫_N(w, t) = Σ_{n ≤ N} S_n(w, t)` of the Poincaré series at `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoincareTruncation {
    #[serde(with = "complex_pair")]
    pub target: Complex64,
    pub exponent: f64,
    pub depth: usize,
    /// `S_n(w, t) = Σ_{z ∈ f^{-n}(w)} |Df^n(z)|^{-t}` for `n = 0..=N`.
    #[serde(with = "extended_f64_vec")]
    pub level_sums: Vec<f64>,
    #[serde(with = "extended_f64")]
    pub partial: f64,
    /// Heuristic bound on the mass skipped by pruning; `0` when exhaustive.
    pub dropped_mass_bound: f64,
    pub mode: TruncationMode,
}

/// Truncation `F_N(t) = Σ_{n ≤ N} |Df^n(c)|^{-t/d}` of the forward series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardSeriesTruncation {
    pub exponent: f64,
    pub depth: usize,
    #[serde(with = "extended_f64_vec")]
    pub terms: Vec<f64>,
    #[serde(with = "extended_f64")]
    pub partial: f64,
}

/// Bisection result for the root of `t ↦ P_n(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceExponentEstimate {
    #[serde(with = "complex_pair")]
    pub target: Complex64,
    pub depth: usize,
    /// `(t, P_n(t))` in evaluation order.
    pub pressure_samples: Vec<(f64, f64)>,
    pub root: f64,
    pub bracket: (f64, f64),
}

fn level_accumulators(depth: usize) -> Vec<LogSum> {
    vec![LogSum::new(); depth + 1]
}

fn merge_levels(mut a: Vec<LogSum>, b: Vec<LogSum>) -> Vec<LogSum> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.merge(y);
    }
    a
}

/// Log of the level sum `S_n(w, t)`.
pub fn log_level_sum(
    map: &UnicriticalMap,
    w: Complex64,
    t: f64,
    n: usize,
    config: &TreeConfig,
) -> Result<f64> {
    let (acc, _) = fold_preimage_tree(
        map,
        w,
        n,
        config,
        LogSum::new,
        |acc, node| {
            if node.depth == n {
                acc.push(-t * node.log_abs_deriv);
            }
            Visit::Descend
        },
        LogSum::merge,
    )?;
    Ok(acc.ln())
}

/// One level `S_n(w, t)` of the Poincaré series.
pub fn level_sum(
    map: &UnicriticalMap,
    w: Complex64,
    t: f64,
    n: usize,
    config: &TreeConfig,
) -> Result<f64> {
    Ok(log_level_sum(map, w, t, n, config)?.exp())
}

/// All level sums up to depth `N` in a single traversal, plus their partial sum.
pub fn poincare_truncation(
    map: &UnicriticalMap,
    w: Complex64,
    t: f64,
    depth: usize,
    traversal: Traversal,
    config: &TreeConfig,
) -> Result<PoincareTruncation> {
    let d = u64::from(map.degree());
    // leaves_below[k] = Σ_{j=1}^{N-k} d^j, the descendants skipped by pruning at depth k
    let leaves_below: Vec<f64> = (0..=depth)
        .map(|k| (1..=depth - k).map(|j| (d as f64).powi(j as i32)).sum())
        .collect();
    let ((levels, dropped), _) = fold_preimage_tree(
        map,
        w,
        depth,
        config,
        || (level_accumulators(depth), NeumaierSum::new()),
        |(levels, dropped), node| {
            let log_term = -t * node.log_abs_deriv;
            levels[node.depth].push(log_term);
            match traversal {
                Traversal::Pruned { floor } if node.depth < depth && log_term < floor.ln() => {
                    *dropped += floor * leaves_below[node.depth];
                    Visit::Prune
                }
                _ => Visit::Descend,
            }
        },
        |(la, da), (lb, db)| (merge_levels(la, lb), da + db),
    )?;
    let level_sums: Vec<f64> = levels.iter().map(LogSum::value).collect();
    let partial = neumaier_sum(&level_sums);
    Ok(PoincareTruncation {
        target: w,
        exponent: t,
        depth,
        level_sums,
        partial,
        dropped_mass_bound: dropped.total(),
        mode: match traversal {
            Traversal::Exhaustive => TruncationMode::Exhaustive,
            Traversal::Pruned { .. } => TruncationMode::Pruned,
        },
    })
}

/// Forward series `Σ_{n ≤ N} |Df^n(c)|^{-t/d}` along the critical value.
///
/// Fails with [`Error::Escape`] if the critical orbit leaves the escape disk.
pub fn forward_series(map: &UnicriticalMap, t: f64, depth: usize) -> Result<ForwardSeriesTruncation> {
    let orbit = map.critical_value_orbit(depth)?;
    let s = t / f64::from(map.degree());
    let terms: Vec<f64> = orbit.log_deriv.iter().map(|&l| (-s * l).exp()).collect();
    let partial = neumaier_sum(&terms);
    Ok(ForwardSeriesTruncation { exponent: t, depth, terms, partial })
}

/// Pressure proxy `P_n(t) = (1/n) log S_n(w, t)`.
pub fn pressure_estimate(
    map: &UnicriticalMap,
    w: Complex64,
    t: f64,
    n: usize,
    config: &TreeConfig,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("pressure needs depth n >= 1".into()));
    }
    Ok(log_level_sum(map, w, t, n, config)? / n as f64)
}

const MAX_BISECTION_STEPS: usize = 200;

/// Root of `t ↦ P_n(t)` by bisection on `[t_lo, t_hi]`.
///
/// Stops once `|P_n| < tol` or the bracket is narrower than `tol`. The root
/// is a finite-depth proxy for the convergence threshold of the series.
pub fn convergence_exponent(
    map: &UnicriticalMap,
    w: Complex64,
    n: usize,
    t_lo: f64,
    t_hi: f64,
    tol: f64,
    config: &TreeConfig,
) -> Result<ConvergenceExponentEstimate> {
    let pressure = |t: f64| pressure_estimate(map, w, t, n, config);
    if !(t_lo < t_hi) {
        return Err(Error::Bracket { t_lo, t_hi, p_lo: f64::NAN, p_hi: f64::NAN });
    }
    let p_lo = pressure(t_lo)?;
    let p_hi = pressure(t_hi)?;
    if !(p_lo > 0.0 && p_hi < 0.0) {
        return Err(Error::Bracket { t_lo, t_hi, p_lo, p_hi });
    }
    let mut samples = vec![(t_lo, p_lo), (t_hi, p_hi)];
    let (mut lo, mut hi) = (t_lo, t_hi);
    let mut root = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTION_STEPS {
        root = 0.5 * (lo + hi);
        let p = pressure(root)?;
        samples.push((root, p));
        if p.abs() < tol || hi - lo < tol {
            break;
        }
        if p > 0.0 {
            lo = root;
        } else {
            hi = root;
        }
    }
    Ok(ConvergenceExponentEstimate {
        target: w,
        depth: n,
        pressure_samples: samples,
        root,
        bracket: (lo, hi),
    })
}

/// `min_{ζ ∈ f^{-n}(0)} |Df^n(ζ)|`.
pub fn min_level_derivative(map: &UnicriticalMap, n: usize, config: &TreeConfig) -> Result<f64> {
    let (min_log, _) = fold_preimage_tree(
        map,
        Complex64::new(0.0, 0.0),
        n,
        config,
        || f64::INFINITY,
        |acc, node| {
            if node.depth == n {
                *acc = acc.min(node.log_abs_deriv);
            }
            Visit::Descend
        },
        f64::min,
    )?;
    Ok(min_log.exp())
}
