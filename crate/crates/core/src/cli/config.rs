//! Experiment configuration: `key = value` lines plus command-line overrides.

use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use super::presets::{preset, PRESET_NAMES};
use crate::error::{Error, Result};
use crate::map::UnicriticalMap;
use crate::serde_util::parse_f64;
use crate::series::Traversal;
use crate::tree::{TreeConfig, DEFAULT_NODE_BUDGET};

/// Every key with its default and a one-line description.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("preset", "chebyshev", "chebyshev | feigenbaum | basilica | custom"),
    ("degree", "2", "degree d of a custom map"),
    ("c_re", "0", "real part of c for a custom map"),
    ("c_im", "0", "imaginary part of c for a custom map"),
    ("target_re", "0", "real part of the Poincaré target w"),
    ("target_im", "0", "imaginary part of the Poincaré target w"),
    ("start_re", "0", "real part of the orbit start point"),
    ("start_im", "0", "imaginary part of the orbit start point"),
    ("n_series", "12", "depth N of Poincaré and forward series"),
    ("n_orbit", "4096", "orbit cutoff for orbit, children and returns"),
    ("n_profile", "4096", "return-time cutoff of the R(δ) profile"),
    ("n_tree", "4", "depth of the preimages listing"),
    ("tree_depth", "12", "preimage-tree depth for M_- and the lb2bc table"),
    ("node_budget", "16777216", "largest allowed d^N"),
    ("t", "1", "exponent for poincare, forward, children and returns"),
    ("t_grid", "0.2,0.5,1,1.5,2", "comma-separated, strictly increasing exponents for theoremb"),
    ("t_lo", "0.5", "lower end of the exponent bracket"),
    ("t_hi", "2", "upper end of the exponent bracket"),
    ("tol", "1e-10", "bisection tolerance of the exponent estimate"),
    ("exponent_depth", "14", "level n of the pressure P_n(t)"),
    ("mode", "exhaustive", "exhaustive | pruned"),
    ("prune_floor", "1e-30", "term floor in pruned mode"),
    ("delta0", "1", "largest δ of the profile grid"),
    ("delta_count", "40", "number of dyadic profile grid points"),
    ("delta", "0.05", "δ of V = B̃(δ) for children"),
    ("delta_min", "1e-6", "smallest δ of the staircase"),
    ("delta_max", "0.5", "largest δ of the staircase"),
    ("intervals", "4", "staircase steps used for the integral ratios"),
    ("per_interval", "8", "profile points per staircase step"),
    ("delta_ref", "0.01", "δ of the reference disk of the decay report"),
    ("decay_depth", "10", "deepest level of the decay report"),
    ("sample", "0", "preimage nodes sampled for the derivative check"),
    ("seed", "0", "seed of the sampled checks"),
];

/// Everything a subcommand needs, with documented defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub preset: String,
    pub degree: u32,
    pub c_re: f64,
    pub c_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub start_re: f64,
    pub start_im: f64,
    pub n_series: usize,
    pub n_orbit: usize,
    pub n_profile: usize,
    pub n_tree: usize,
    pub tree_depth: usize,
    pub node_budget: u64,
    pub t: f64,
    pub t_grid: Vec<f64>,
    pub t_lo: f64,
    pub t_hi: f64,
    pub tol: f64,
    pub exponent_depth: usize,
    pub mode: String,
    pub prune_floor: f64,
    pub delta0: f64,
    pub delta_count: usize,
    pub delta: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub intervals: usize,
    pub per_interval: usize,
    pub delta_ref: f64,
    pub decay_depth: usize,
    pub sample: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let mut cfg = Self {
            preset: String::new(),
            degree: 0,
            c_re: 0.0,
            c_im: 0.0,
            target_re: 0.0,
            target_im: 0.0,
            start_re: 0.0,
            start_im: 0.0,
            n_series: 0,
            n_orbit: 0,
            n_profile: 0,
            n_tree: 0,
            tree_depth: 0,
            node_budget: DEFAULT_NODE_BUDGET,
            t: 0.0,
            t_grid: Vec::new(),
            t_lo: 0.0,
            t_hi: 0.0,
            tol: 0.0,
            exponent_depth: 0,
            mode: String::new(),
            prune_floor: 0.0,
            delta0: 0.0,
            delta_count: 0,
            delta: 0.0,
            delta_min: 0.0,
            delta_max: 0.0,
            intervals: 0,
            per_interval: 0,
            delta_ref: 0.0,
            decay_depth: 0,
            sample: 0,
            seed: 0,
        };
        for (key, value, _) in KEYS {
            cfg.set(key, value).expect("defaults parse");
        }
        cfg
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Usage(format!("{key}: cannot parse {value:?}")))
}

fn real(key: &str, value: &str) -> Result<f64> {
    parse_f64(value).ok_or_else(|| Error::Usage(format!("{key}: cannot parse {value:?} as a number")))
}

impl ExperimentConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "preset" => self.preset = v.to_string(),
            "degree" => self.degree = number(key, v)?,
            "c_re" => self.c_re = real(key, v)?,
            "c_im" => self.c_im = real(key, v)?,
            "target_re" => self.target_re = real(key, v)?,
            "target_im" => self.target_im = real(key, v)?,
            "start_re" => self.start_re = real(key, v)?,
            "start_im" => self.start_im = real(key, v)?,
            "n_series" => self.n_series = number(key, v)?,
            "n_orbit" => self.n_orbit = number(key, v)?,
            "n_profile" => self.n_profile = number(key, v)?,
            "n_tree" => self.n_tree = number(key, v)?,
            "tree_depth" => self.tree_depth = number(key, v)?,
            "node_budget" => self.node_budget = number(key, v)?,
            "t" => self.t = real(key, v)?,
            "t_grid" => {
                self.t_grid = if v.is_empty() {
                    Vec::new()
                } else {
                    v.split(',').map(|x| real(key, x.trim())).collect::<Result<_>>()?
                }
            }
            "t_lo" => self.t_lo = real(key, v)?,
            "t_hi" => self.t_hi = real(key, v)?,
            "tol" => self.tol = real(key, v)?,
            "exponent_depth" => self.exponent_depth = number(key, v)?,
            "mode" => self.mode = v.to_string(),
            "prune_floor" => self.prune_floor = real(key, v)?,
            "delta0" => self.delta0 = real(key, v)?,
            "delta_count" => self.delta_count = number(key, v)?,
            "delta" => self.delta = real(key, v)?,
            "delta_min" => self.delta_min = real(key, v)?,
            "delta_max" => self.delta_max = real(key, v)?,
            "intervals" => self.intervals = number(key, v)?,
            "per_interval" => self.per_interval = number(key, v)?,
            "delta_ref" => self.delta_ref = real(key, v)?,
            "decay_depth" => self.decay_depth = number(key, v)?,
            "sample" => self.sample = number(key, v)?,
            "seed" => self.seed = number(key, v)?,
            other => return Err(Error::Usage(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("expected key=value, got {assignment:?}")))?;
        self.set(key.trim(), value)
    }

    /// Applies every `key = value` line of `text`; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.apply_override(line)
                .map_err(|e| Error::Usage(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// Checks ranges that the parser cannot.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Usage(msg));
        if !PRESET_NAMES.contains(&self.preset.as_str()) {
            return Err(Error::UnknownPreset(self.preset.clone()));
        }
        if self.t_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return fail(format!("t_grid must be strictly increasing, got {:?}", self.t_grid));
        }
        if self.mode != "exhaustive" && self.mode != "pruned" {
            return fail(format!("mode must be exhaustive or pruned, got {:?}", self.mode));
        }
        for (key, v) in [
            ("delta0", self.delta0),
            ("delta", self.delta),
            ("delta_min", self.delta_min),
            ("delta_max", self.delta_max),
            ("delta_ref", self.delta_ref),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return fail(format!("{key} must be positive, got {v}"));
            }
        }
        if self.delta_min > self.delta_max {
            return fail("delta_min must not exceed delta_max".into());
        }
        if self.exponent_depth == 0 {
            return fail("exponent_depth must be at least 1".into());
        }
        Ok(())
    }

    pub fn map(&self) -> Result<UnicriticalMap> {
        preset(&self.preset, self.degree, Complex64::new(self.c_re, self.c_im))
    }

    pub fn tree_config(&self) -> TreeConfig {
        TreeConfig::with_budget(self.node_budget)
    }

    pub fn traversal(&self) -> Traversal {
        if self.mode == "pruned" {
            Traversal::Pruned { floor: self.prune_floor }
        } else {
            Traversal::Exhaustive
        }
    }

    pub fn target(&self) -> Complex64 {
        Complex64::new(self.target_re, self.target_im)
    }

    pub fn start(&self) -> Complex64 {
        Complex64::new(self.start_re, self.start_im)
    }
}

/// The key table for `--help`.
pub fn keys_help() -> String {
    let mut out = String::from("Config keys (file lines `key = value`, or --set key=value):\n");
    for (key, default, doc) in KEYS {
        out.push_str(&format!("  {key:<15} {doc} [default: {default}]\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.preset, "chebyshev");
        assert_eq!(cfg.t_grid, vec![0.2, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(cfg.node_budget, DEFAULT_NODE_BUDGET);
    }

    #[test]
    fn file_and_overrides() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text("# comment\npreset = basilica\n\nn_series = 7 # trailing\n").unwrap();
        cfg.apply_override("t_grid=1,2").unwrap();
        assert_eq!(cfg.preset, "basilica");
        assert_eq!(cfg.n_series, 7);
        assert_eq!(cfg.t_grid, vec![1.0, 2.0]);
        assert_eq!(cfg.map().unwrap().parameter(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let mut cfg = ExperimentConfig::default();
        assert!(matches!(cfg.apply_text("bogus = 1"), Err(Error::Usage(_))));
        assert!(cfg.apply_override("n_series").is_err());
        assert!(cfg.set("n_series", "-3").is_err());
        cfg.set("t_grid", "2,1").unwrap();
        assert!(cfg.validate().is_err());
        cfg.set("t_grid", "1,2").unwrap();
        cfg.set("preset", "nope").unwrap();
        assert!(matches!(cfg.validate(), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn bundled_reference_file_parses() {
        let text = include_str!("../../config/reference.conf");
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        for (key, _, _) in KEYS {
            assert!(text.lines().any(|l| l.starts_with(&format!("{key} ="))), "{key} missing");
        }
    }
}
