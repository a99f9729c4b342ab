//! Report builders behind each subcommand.

use num_complex::Complex64;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::emit::{Cell, Plot, Report, Table};
use super::presets::{feigenbaum_oracle, FeigenbaumOracle, FEIGENBAUM_LEVELS, FEIGENBAUM_REFERENCE, FEIGENBAUM_TOLERANCE};
use crate::error::{Error, Result};
use crate::map::{OrbitSegment, UnicriticalMap};
use crate::pullback::{
    backward_contraction_profile, child_sum_report, dyadic_grid, find_children, max_pullback_diameters,
    return_derivative_stats, scale_entry, Certainty, ChildSumReport, DiskEnclosure, ReturnDerivativeStats,
    ScaleProfile,
};
use crate::returns::{
    bc_integral, close_return_ratios, first_entry_bridge, return_staircase, spread, staircase_grid, BridgeReport,
    CloseReturnRatio, ExponentMode, ReturnStaircase,
};
use crate::serde_util::{complex_pair, extended_f64, extended_f64_opt, extended_f64_vec};
use crate::series::{
    convergence_exponent, forward_series, min_level_derivative, poincare_truncation, ConvergenceExponentEstimate,
    ForwardSeriesTruncation, PoincareTruncation,
};
use crate::tree::enumerate_preimage_tree;
use crate::tree::Visit;

fn log_plot(title: &str, x: &'static str, ys: Vec<&'static str>, y_label: &'static str) -> Plot {
    Plot { title: title.to_string(), x, ys, y_label, log_x: true, log_y: true }
}

// ---------------------------------------------------------------- orbit

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub map: UnicriticalMap,
    pub orbit: OrbitSegment,
    /// Running-minimum returns `(k, |z_k|)`.
    pub closest_returns: Vec<(usize, f64)>,
}

pub fn orbit_report(cfg: &ExperimentConfig) -> Result<OrbitReport> {
    let map = cfg.map()?;
    let orbit = map.iterate(cfg.start(), cfg.n_orbit);
    let closest_returns = orbit.closest_returns();
    Ok(OrbitReport { map, orbit, closest_returns })
}

impl Report for OrbitReport {
    fn kind(&self) -> &'static str {
        "orbit"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["k", "re", "im", "abs", "abs_deriv"]);
        for (k, z) in self.orbit.points.iter().enumerate() {
            t.push(vec![k.into(), z.re.into(), z.im.into(), z.norm().into(), self.orbit.abs_derivative(k).into()]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot("Orbit modulus and derivative", "k", vec!["abs", "abs_deriv"], "value")
    }
}

// ---------------------------------------------------------------- preimages

#[derive(Debug, Clone, Serialize)]
pub struct PreimageRow {
    pub depth: usize,
    /// Branch indices from the root, one digit per level.
    pub path: String,
    #[serde(with = "complex_pair")]
    pub point: Complex64,
    pub log_abs_deriv: f64,
}

/// Cocycle derivative against a central difference of `f^n`.
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeCheck {
    pub depth: usize,
    pub path: String,
    pub cocycle: f64,
    pub finite_difference: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PreimagesReport {
    pub map: UnicriticalMap,
    #[serde(with = "complex_pair")]
    pub target: Complex64,
    pub depth: usize,
    pub per_depth: Vec<u64>,
    pub nodes: Vec<PreimageRow>,
    pub samples: Vec<DerivativeCheck>,
}

/// `|Df^n(z)|` from a central difference whose image displacement is about
/// `1e-6`, with the step rounded to a representable offset of `z`.
pub fn finite_difference_abs_derivative(map: &UnicriticalMap, z: Complex64, n: usize, abs_deriv: f64) -> f64 {
    let target_step = 1e-6 / abs_deriv.max(1e-300);
    let step = ((z.re + target_step) - z.re).max(f64::MIN_POSITIVE);
    let forward = map.apply_n(Complex64::new(z.re + step, z.im), n);
    let backward = map.apply_n(Complex64::new(z.re - step, z.im), n);
    (forward - backward).norm() / (2.0 * step)
}

pub fn preimages_report(cfg: &ExperimentConfig) -> Result<PreimagesReport> {
    let map = cfg.map()?;
    let target = cfg.target();
    let mut nodes = Vec::new();
    let summary = enumerate_preimage_tree(&map, target, cfg.n_tree, &cfg.tree_config(), |node| {
        nodes.push(PreimageRow {
            depth: node.depth,
            path: node.branches.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("."),
            point: node.point,
            log_abs_deriv: node.log_abs_deriv,
        });
        Visit::Descend
    })?;
    let candidates: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].depth >= 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let amount = cfg.sample.min(candidates.len());
    let mut picks = index::sample(&mut rng, candidates.len(), amount).into_vec();
    picks.sort_unstable();
    let samples = picks
        .into_iter()
        .map(|i| {
            let row = &nodes[candidates[i]];
            let cocycle = row.log_abs_deriv.exp();
            let finite_difference = finite_difference_abs_derivative(&map, row.point, row.depth, cocycle);
            DerivativeCheck {
                depth: row.depth,
                path: row.path.clone(),
                cocycle,
                finite_difference,
                rel_error: (finite_difference - cocycle).abs() / cocycle,
            }
        })
        .collect();
    Ok(PreimagesReport { map, target, depth: cfg.n_tree, per_depth: summary.per_depth, nodes, samples })
}

impl Report for PreimagesReport {
    fn kind(&self) -> &'static str {
        "preimages"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["depth", "path", "re", "im", "abs_deriv"]);
        for r in &self.nodes {
            t.push(vec![
                r.depth.into(),
                r.path.clone().into(),
                r.point.re.into(),
                r.point.im.into(),
                r.log_abs_deriv.exp().into(),
            ]);
        }
        t
    }

    fn plot(&self) -> Plot {
        Plot {
            title: "Preimage derivatives by depth".into(),
            x: "depth",
            ys: vec!["abs_deriv"],
            y_label: "|Df^n|",
            log_x: false,
            log_y: true,
        }
    }
}

// ---------------------------------------------------------------- poincare / forward / exponent

#[derive(Debug, Clone, Serialize)]
pub struct PoincareReport {
    pub map: UnicriticalMap,
    pub truncation: PoincareTruncation,
}

pub fn poincare_report(cfg: &ExperimentConfig) -> Result<PoincareReport> {
    let map = cfg.map()?;
    let truncation =
        poincare_truncation(&map, cfg.target(), cfg.t, cfg.n_series, cfg.traversal(), &cfg.tree_config())?;
    Ok(PoincareReport { map, truncation })
}

fn cumulative_rows(values: &[f64], columns: Vec<&'static str>) -> Table {
    let mut t = Table::new(columns);
    let mut partial = crate::sum::NeumaierSum::new();
    for (n, &v) in values.iter().enumerate() {
        partial += v;
        t.push(vec![n.into(), v.into(), partial.total().into()]);
    }
    t
}

impl Report for PoincareReport {
    fn kind(&self) -> &'static str {
        "poincare"
    }

    fn table(&self) -> Table {
        cumulative_rows(&self.truncation.level_sums, vec!["n", "level_sum", "partial"])
    }

    fn plot(&self) -> Plot {
        log_plot("Poincaré series levels", "n", vec!["level_sum", "partial"], "sum")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ForwardReport {
    pub map: UnicriticalMap,
    pub truncation: ForwardSeriesTruncation,
}

pub fn forward_report(cfg: &ExperimentConfig) -> Result<ForwardReport> {
    let map = cfg.map()?;
    let truncation = forward_series(&map, cfg.t, cfg.n_series)?;
    Ok(ForwardReport { map, truncation })
}

impl Report for ForwardReport {
    fn kind(&self) -> &'static str {
        "forward"
    }

    fn table(&self) -> Table {
        cumulative_rows(&self.truncation.terms, vec!["n", "term", "partial"])
    }

    fn plot(&self) -> Plot {
        log_plot("Forward series terms", "n", vec!["term", "partial"], "value")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub map: UnicriticalMap,
    pub estimate: ConvergenceExponentEstimate,
}

pub fn exponent_report(cfg: &ExperimentConfig) -> Result<ExponentReport> {
    let map = cfg.map()?;
    let estimate =
        convergence_exponent(&map, cfg.target(), cfg.exponent_depth, cfg.t_lo, cfg.t_hi, cfg.tol, &cfg.tree_config())?;
    Ok(ExponentReport { map, estimate })
}

impl Report for ExponentReport {
    fn kind(&self) -> &'static str {
        "exponent"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["step", "t", "pressure"]);
        for (i, &(x, p)) in self.estimate.pressure_samples.iter().enumerate() {
            t.push(vec![i.into(), x.into(), p.into()]);
        }
        t
    }

    fn plot(&self) -> Plot {
        Plot {
            title: format!("Pressure samples, root {}", self.estimate.root),
            x: "t",
            ys: vec!["pressure"],
            y_label: "P_n(t)",
            log_x: false,
            log_y: false,
        }
    }
}

// ---------------------------------------------------------------- rprofile

#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport {
    pub map: UnicriticalMap,
    pub profile: ScaleProfile,
}

pub fn profile_report(cfg: &ExperimentConfig) -> Result<ProfileReport> {
    let map = cfg.map()?;
    let profile = backward_contraction_profile(&map, &dyadic_grid(cfg.delta0, cfg.delta_count), cfg.n_profile)?;
    Ok(ProfileReport { map, profile })
}

fn profile_table(profile: &ScaleProfile) -> Table {
    let mut t = Table::new(vec!["delta", "r_lo", "r_hi", "returns", "invalid", "cutoff_limited"]);
    for e in &profile.entries {
        t.push(vec![
            e.delta.into(),
            e.r_lo.into(),
            e.r_hi.into(),
            e.return_times_used.len().into(),
            e.invalid_times.len().into(),
            e.cutoff_limited.into(),
        ]);
    }
    t
}

impl Report for ProfileReport {
    fn kind(&self) -> &'static str {
        "rprofile"
    }

    fn table(&self) -> Table {
        profile_table(&self.profile)
    }

    fn plot(&self) -> Plot {
        log_plot("Backward-contraction profile", "delta", vec!["r_lo", "r_hi"], "R(delta)")
    }
}

// ---------------------------------------------------------------- children

#[derive(Debug, Clone, Serialize)]
pub struct ChildRow {
    pub time: usize,
    pub certainty: Certainty,
    pub valid: bool,
    pub image_diam_lower: f64,
    pub image_diam_upper: f64,
    /// Pull-back steps that passed through the critical value.
    pub critical_steps: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChildrenReport {
    pub map: UnicriticalMap,
    pub delta: f64,
    pub cutoff: usize,
    pub records: Vec<ChildRow>,
    pub child_sum: ChildSumReport,
    pub return_derivatives: ReturnDerivativeStats,
}

pub fn children_report(cfg: &ExperimentConfig) -> Result<ChildrenReport> {
    let map = cfg.map()?;
    let found = find_children(&map, cfg.delta, cfg.n_profile)?;
    let orbit = map.critical_value_orbit(cfg.n_profile)?;
    let r_lo = scale_entry(&map, &orbit, cfg.delta)?.r_lo;
    let child_sum = child_sum_report(&map, &found, cfg.delta, cfg.t, r_lo);
    let return_derivatives = return_derivative_stats(&map, cfg.delta, cfg.n_profile, cfg.tree_depth, &cfg.tree_config())?;
    let records = found
        .iter()
        .map(|r| ChildRow {
            time: r.time,
            certainty: r.certainty,
            valid: r.enclosure.valid,
            image_diam_lower: r.image_diam_bounds.0,
            image_diam_upper: r.image_diam_bounds.1,
            critical_steps: r.enclosure.steps.iter().enumerate().filter(|(_, s)| s.critical).map(|(i, _)| i).collect(),
        })
        .collect();
    Ok(ChildrenReport { map, delta: cfg.delta, cutoff: cfg.n_profile, records, child_sum, return_derivatives })
}

impl Certainty {
    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::CertainChild => "certain-child",
            Certainty::CertainNot => "certain-not",
            Certainty::Unknown => "unknown",
        }
    }
}

impl Report for ChildrenReport {
    fn kind(&self) -> &'static str {
        "children"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["time", "certainty", "valid", "image_diam_lower", "image_diam_upper"]);
        for r in &self.records {
            t.push(vec![
                r.time.into(),
                r.certainty.as_str().into(),
                r.valid.into(),
                r.image_diam_lower.into(),
                r.image_diam_upper.into(),
            ]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot("Children of the critical disk", "time", vec!["image_diam_lower", "image_diam_upper"], "diameter")
    }
}

// ---------------------------------------------------------------- returns

#[derive(Debug, Clone, Serialize)]
pub struct BridgeRow {
    pub n: usize,
    pub bridge: Option<BridgeReport>,
    pub error: Option<String>,
    /// `R_hi` of the staircase-grid profile at the bridge scale, when on the grid.
    #[serde(with = "extended_f64_opt")]
    pub profile_r_hi: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReturnsReport {
    pub map: UnicriticalMap,
    pub staircase: ReturnStaircase,
    pub bridges: Vec<BridgeRow>,
    pub profile: ScaleProfile,
    pub ratios: Vec<CloseReturnRatio>,
    pub ratio_spread: Option<f64>,
    #[serde(with = "extended_f64")]
    pub bc_integral_t: f64,
    #[serde(with = "extended_f64")]
    pub bc_integral_t_over_d: f64,
}

pub fn returns_report(cfg: &ExperimentConfig) -> Result<ReturnsReport> {
    let map = cfg.map()?;
    let staircase = return_staircase(&map, cfg.delta_min, cfg.delta_max, cfg.n_orbit)?;
    let grid = staircase_grid(&staircase, cfg.intervals, cfg.per_interval);
    let profile = backward_contraction_profile(&map, &grid, cfg.n_profile)?;
    let bridges = staircase
        .returns
        .iter()
        .map(|ret| match first_entry_bridge(&map, ret) {
            Ok(b) => {
                let profile_r_hi = profile.entry_at(b.delta).map(|e| e.r_hi);
                BridgeRow { n: ret.n, bridge: Some(b), error: None, profile_r_hi }
            }
            Err(e) => BridgeRow { n: ret.n, bridge: None, error: Some(e.to_string()), profile_r_hi: None },
        })
        .collect();
    let first = ReturnStaircase {
        returns: staircase.returns.iter().filter(|r| r.delta_lo < r.delta_hi).take(cfg.intervals).cloned().collect(),
        ..staircase.clone()
    };
    let ratios = close_return_ratios(&first, &profile, cfg.t)?;
    let ratio_spread = spread(ratios.iter().filter_map(|r| r.ratio));
    let (bc_integral_t, bc_integral_t_over_d) = if profile.len() >= 2 {
        (bc_integral(&profile, cfg.t, ExponentMode::T)?, bc_integral(&profile, cfg.t, ExponentMode::TOverD)?)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ReturnsReport { map, staircase, bridges, profile, ratios, ratio_spread, bc_integral_t, bc_integral_t_over_d })
}

impl Report for ReturnsReport {
    fn kind(&self) -> &'static str {
        "returns"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "n",
            "delta_lo",
            "delta_hi",
            "accepted",
            "residual",
            "symmetry_spread",
            "log_deriv_at_zeta",
            "bridge_r_implied",
            "profile_r_hi",
            "ratio",
        ]);
        for (ret, bridge) in self.staircase.returns.iter().zip(&self.bridges) {
            let ratio = self.ratios.iter().find(|r| r.n == ret.n).and_then(|r| r.ratio);
            t.push(vec![
                ret.n.into(),
                ret.delta_lo.into(),
                ret.delta_hi.into(),
                ret.accepted().into(),
                ret.residual.into(),
                ret.symmetry_spread.into(),
                ret.log_deriv_at_zeta.into(),
                bridge.bridge.as_ref().map(|b| b.r_implied).into(),
                bridge.profile_r_hi.into(),
                ratio.into(),
            ]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot("First-entry staircase", "delta_lo", vec!["n"], "n(delta)")
    }
}

// ---------------------------------------------------------------- theoremb

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Shrinking,
    Growing,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BothShrinking,
    BothGrowing,
    Mixed,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::BothShrinking => "both-shrinking",
            Verdict::BothGrowing => "both-growing",
            Verdict::Mixed => "mixed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::Shrinking => "shrinking",
            Trend::Growing => "growing",
            Trend::Inconclusive => "inconclusive",
        }
    }
}

/// Ratio below which a tail counts as shrinking.
pub const SHRINK_THRESHOLD: f64 = 0.95;
/// Ratio above which a tail counts as growing.
pub const GROW_THRESHOLD: f64 = 1.0;
/// Number of trailing ratios inspected.
pub const TAIL_RATIOS: usize = 5;

/// `values[n] / values[n-1]` for the last [`TAIL_RATIOS`] indices `n ≥ 1`.
pub fn tail_ratios(values: &[f64]) -> Vec<f64> {
    let start = values.len().saturating_sub(TAIL_RATIOS).max(1);
    (start..values.len()).map(|n| values[n] / values[n - 1]).collect()
}

pub fn trend(ratios: &[f64]) -> Trend {
    if ratios.is_empty() {
        Trend::Inconclusive
    } else if ratios.iter().all(|&r| r < SHRINK_THRESHOLD) {
        Trend::Shrinking
    } else if ratios.iter().all(|&r| r > GROW_THRESHOLD) {
        Trend::Growing
    } else {
        Trend::Inconclusive
    }
}

pub fn verdict(level: Trend, forward: Trend) -> Verdict {
    use Trend::*;
    match (level, forward) {
        (Shrinking, Shrinking) => Verdict::BothShrinking,
        (Growing, Growing) => Verdict::BothGrowing,
        (Shrinking, Growing) | (Growing, Shrinking) => Verdict::Mixed,
        _ => Verdict::Inconclusive,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremBRow {
    pub t: f64,
    #[serde(with = "extended_f64")]
    pub forward_partial: f64,
    #[serde(with = "extended_f64")]
    pub poincare_partial: f64,
    #[serde(with = "extended_f64_vec")]
    pub level_sums: Vec<f64>,
    #[serde(with = "extended_f64_vec")]
    pub forward_terms: Vec<f64>,
    #[serde(with = "extended_f64_vec")]
    pub level_ratios: Vec<f64>,
    #[serde(with = "extended_f64_vec")]
    pub forward_ratios: Vec<f64>,
    pub level_trend: Trend,
    pub forward_trend: Trend,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremBReport {
    pub map: UnicriticalMap,
    pub depth: usize,
    pub shrink_threshold: f64,
    pub grow_threshold: f64,
    pub rows: Vec<TheoremBRow>,
}

/// The forward series and the Poincaré series at the critical point side by
/// side on the t grid, with tail verdicts at truncation depth `n_series`.
pub fn theoremb_report(cfg: &ExperimentConfig) -> Result<TheoremBReport> {
    if cfg.t_grid.is_empty() {
        return Err(Error::Usage("t_grid is empty".into()));
    }
    let map = cfg.map()?;
    let zero = Complex64::new(0.0, 0.0);
    let rows = cfg
        .t_grid
        .iter()
        .map(|&t| {
            let fwd = forward_series(&map, t, cfg.n_series)?;
            let pc = poincare_truncation(&map, zero, t, cfg.n_series, cfg.traversal(), &cfg.tree_config())?;
            let level_ratios = tail_ratios(&pc.level_sums);
            let forward_ratios = tail_ratios(&fwd.terms);
            let (level_trend, forward_trend) = (trend(&level_ratios), trend(&forward_ratios));
            Ok(TheoremBRow {
                t,
                forward_partial: fwd.partial,
                poincare_partial: pc.partial,
                level_sums: pc.level_sums,
                forward_terms: fwd.terms,
                level_ratios,
                forward_ratios,
                level_trend,
                forward_trend,
                verdict: verdict(level_trend, forward_trend),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremBReport {
        map,
        depth: cfg.n_series,
        shrink_threshold: SHRINK_THRESHOLD,
        grow_threshold: GROW_THRESHOLD,
        rows,
    })
}

impl Report for TheoremBReport {
    fn kind(&self) -> &'static str {
        "theoremb"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "t",
            "forward_partial",
            "poincare_partial",
            "level_ratio_min",
            "level_ratio_max",
            "forward_ratio_min",
            "forward_ratio_max",
            "level_trend",
            "forward_trend",
            "verdict",
        ]);
        let min = |v: &[f64]| v.iter().copied().reduce(f64::min);
        let max = |v: &[f64]| v.iter().copied().reduce(f64::max);
        for r in &self.rows {
            t.push(vec![
                r.t.into(),
                r.forward_partial.into(),
                r.poincare_partial.into(),
                min(&r.level_ratios).into(),
                max(&r.level_ratios).into(),
                min(&r.forward_ratios).into(),
                max(&r.forward_ratios).into(),
                r.level_trend.as_str().into(),
                r.forward_trend.as_str().into(),
                r.verdict.as_str().into(),
            ]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot(
            &format!("Truncated series at depth {}", self.depth),
            "t",
            vec!["forward_partial", "poincare_partial"],
            "partial sum",
        )
    }
}

// ---------------------------------------------------------------- lb2bc

#[derive(Debug, Clone, Serialize)]
pub struct Lb2bcRow {
    pub n: usize,
    #[serde(with = "extended_f64")]
    pub abs_deriv_c: f64,
    #[serde(with = "extended_f64_opt")]
    pub min_level_derivative: Option<f64>,
    pub notice: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSummary {
    pub cutoff: usize,
    pub grid_len: usize,
    #[serde(with = "extended_f64")]
    pub r_lo_min: f64,
    #[serde(with = "extended_f64")]
    pub r_hi_min: f64,
    pub cutoff_limited_points: usize,
    pub invalid_chains: usize,
    pub profile: ScaleProfile,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lb2bcReport {
    pub map: UnicriticalMap,
    pub rows: Vec<Lb2bcRow>,
    pub profile_summary: ProfileSummary,
    pub return_derivatives: ReturnDerivativeStats,
}

/// Forward and backward derivative growth next to the measured `R` bounds.
pub fn lb2bc_report(cfg: &ExperimentConfig) -> Result<Lb2bcReport> {
    let map = cfg.map()?;
    let tree_cfg = cfg.tree_config();
    let orbit = map.critical_value_orbit(cfg.tree_depth)?;
    let rows = (0..=cfg.tree_depth)
        .map(|n| {
            let (min_level, notice) = match min_level_derivative(&map, n, &tree_cfg) {
                Ok(v) => (Some(v), None),
                Err(e @ Error::Budget { .. }) => (None, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            Ok(Lb2bcRow { n, abs_deriv_c: orbit.abs_derivative(n), min_level_derivative: min_level, notice })
        })
        .collect::<Result<Vec<_>>>()?;
    let profile = backward_contraction_profile(&map, &dyadic_grid(cfg.delta0, cfg.delta_count), cfg.n_profile)?;
    let profile_summary = ProfileSummary {
        cutoff: profile.cutoff,
        grid_len: profile.len(),
        r_lo_min: profile.entries.iter().map(|e| e.r_lo).fold(f64::INFINITY, f64::min),
        r_hi_min: profile.entries.iter().map(|e| e.r_hi).fold(f64::INFINITY, f64::min),
        cutoff_limited_points: profile.entries.iter().filter(|e| e.cutoff_limited).count(),
        invalid_chains: profile.entries.iter().map(|e| e.invalid_times.len()).sum(),
        profile,
    };
    let stats_depth = (0..=cfg.tree_depth)
        .rev()
        .find(|&n| tree_cfg.check_budget(map.degree(), n).is_ok())
        .unwrap_or(0);
    let return_derivatives = return_derivative_stats(&map, cfg.delta, cfg.n_profile, stats_depth, &tree_cfg)?;
    Ok(Lb2bcReport { map, rows, profile_summary, return_derivatives })
}

impl Report for Lb2bcReport {
    fn kind(&self) -> &'static str {
        "lb2bc"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["n", "abs_deriv_c", "min_level_derivative", "notice"]);
        for r in &self.rows {
            t.push(vec![
                r.n.into(),
                r.abs_deriv_c.into(),
                r.min_level_derivative.into(),
                r.notice.clone().map_or(Cell::Empty, Cell::Text),
            ]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot("Derivative growth", "n", vec!["abs_deriv_c", "min_level_derivative"], "derivative")
    }
}

// ---------------------------------------------------------------- decay

#[derive(Debug, Clone, Serialize)]
pub struct DecayRow {
    pub m: usize,
    pub max_diam_upper: f64,
    /// `d log(diam) / d log m` between `m - 1` and `m`.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub map: UnicriticalMap,
    pub delta_ref: f64,
    pub rows: Vec<DecayRow>,
}

pub fn decay_report(cfg: &ExperimentConfig) -> Result<DecayReport> {
    let map = cfg.map()?;
    let disk = DiskEnclosure::critical_ball(&map, cfg.delta_ref);
    let diams = max_pullback_diameters(&map, &disk, cfg.decay_depth, &cfg.tree_config())?;
    let rows = diams
        .iter()
        .enumerate()
        .map(|(m, &diam)| DecayRow {
            m,
            max_diam_upper: diam,
            slope: (m >= 2).then(|| (diam / diams[m - 1]).ln() / (m as f64 / (m - 1) as f64).ln()),
        })
        .collect();
    Ok(DecayReport { map, delta_ref: cfg.delta_ref, rows })
}

impl Report for DecayReport {
    fn kind(&self) -> &'static str {
        "decay"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["m", "max_diam_upper", "slope"]);
        for r in &self.rows {
            t.push(vec![r.m.into(), r.max_diam_upper.into(), r.slope.into()]);
        }
        t
    }

    fn plot(&self) -> Plot {
        log_plot("Pull-back diameter decay", "m", vec!["max_diam_upper"], "diameter")
    }
}

// ---------------------------------------------------------------- regen-feigenbaum

#[derive(Debug, Clone, Serialize)]
pub struct FeigenbaumReport {
    pub oracle: FeigenbaumOracle,
    pub reference: f64,
    pub difference: f64,
}

pub fn feigenbaum_report() -> FeigenbaumReport {
    let oracle = feigenbaum_oracle(FEIGENBAUM_LEVELS, FEIGENBAUM_TOLERANCE);
    let difference = oracle.limit - FEIGENBAUM_REFERENCE;
    FeigenbaumReport { oracle, reference: FEIGENBAUM_REFERENCE, difference }
}

impl Report for FeigenbaumReport {
    fn kind(&self) -> &'static str {
        "regen-feigenbaum"
    }

    fn table(&self) -> Table {
        let mut t = Table::new(vec!["k", "superstable", "gap", "ratio"]);
        let cs = &self.oracle.superstable;
        for (k, &c) in cs.iter().enumerate() {
            let gap = (k >= 1).then(|| cs[k - 1] - c);
            let ratio = (k >= 2).then(|| self.oracle.ratios[k - 2]);
            t.push(vec![k.into(), c.into(), gap.into(), ratio.into()]);
        }
        t
    }

    fn plot(&self) -> Plot {
        Plot {
            title: format!("Superstable parameters, limit {}", self.oracle.limit),
            x: "k",
            ys: vec!["gap"],
            y_label: "c_(k-1) - c_k",
            log_x: false,
            log_y: true,
        }
    }
}
