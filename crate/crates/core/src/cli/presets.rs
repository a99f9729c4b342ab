//! Named parameter presets and the Feigenbaum bisection oracle.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::UnicriticalMap;

/// Reference value of the real Feigenbaum parameter.
pub const FEIGENBAUM_REFERENCE: f64 = -1.401_155_189_092_050_6;

/// Largest `k` of the superstable `2^k`-periodic parameters used.
pub const FEIGENBAUM_LEVELS: u32 = 12;

/// Bisection width for each superstable parameter.
pub const FEIGENBAUM_TOLERANCE: f64 = 1e-12;

pub const PRESET_NAMES: [&str; 4] = ["chebyshev", "feigenbaum", "basilica", "custom"];

fn critical_iterate(c: f64, n: u64) -> f64 {
    let mut z = 0.0;
    for _ in 0..n {
        z = z * z + c;
    }
    z
}

/// Superstable parameters of the real quadratic family and their limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeigenbaumOracle {
    /// `superstable[k]` has a critical cycle of period `2^k`.
    pub superstable: Vec<f64>,
    /// Successive gap ratios `(c_{k-1} - c_{k-2}) / (c_k - c_{k-1})`.
    pub ratios: Vec<f64>,
    /// Aitken extrapolation of the last three parameters.
    pub limit: f64,
}

/// Locates `c_k` for `k ≤ levels` and extrapolates the accumulation point.
///
/// `c_0 = 0` and `c_1 = -1` are exact. Each later `c_k` is the first sign
/// change of `c ↦ f_c^{2^k}(0)` below `c_{k-1}`, found by stepping down in
/// units of `(c_{k-2} - c_{k-1}) / 64` and then bisecting to `tolerance`.
pub fn feigenbaum_oracle(levels: u32, tolerance: f64) -> FeigenbaumOracle {
    assert!(levels >= 2, "need at least three superstable parameters");
    let mut cs = vec![0.0, -1.0];
    for k in 2..=levels {
        let period = 1u64 << k;
        let prev = cs[cs.len() - 1];
        let step = (cs[cs.len() - 2] - prev) / 64.0;
        let mut hi = prev - 1e-3 * step;
        let mut g_hi = critical_iterate(hi, period);
        let mut lo = hi - step;
        let mut g_lo = critical_iterate(lo, period);
        while (g_lo < 0.0) == (g_hi < 0.0) {
            hi = lo;
            g_hi = g_lo;
            lo -= step;
            g_lo = critical_iterate(lo, period);
        }
        while hi - lo > tolerance {
            let mid = 0.5 * (lo + hi);
            let g_mid = critical_iterate(mid, period);
            if (g_mid < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        cs.push(0.5 * (lo + hi));
    }
    let ratios = cs.windows(3).map(|w| (w[1] - w[0]) / (w[2] - w[1])).collect();
    let [a, b, c] = [cs[cs.len() - 3], cs[cs.len() - 2], cs[cs.len() - 1]];
    let limit = c - (c - b) * (c - b) / ((c - b) - (b - a));
    FeigenbaumOracle { superstable: cs, ratios, limit }
}

/// The Feigenbaum parameter regenerated by [`feigenbaum_oracle`].
pub fn feigenbaum_parameter() -> f64 {
    feigenbaum_oracle(FEIGENBAUM_LEVELS, FEIGENBAUM_TOLERANCE).limit
}

/// Map for a named preset. `custom` takes `degree` and `parameter`.
pub fn preset(name: &str, degree: u32, parameter: Complex64) -> Result<UnicriticalMap> {
    match name {
        "chebyshev" => Ok(UnicriticalMap::quadratic(-2.0)),
        "basilica" => Ok(UnicriticalMap::quadratic(-1.0)),
        "feigenbaum" => Ok(UnicriticalMap::quadratic(feigenbaum_parameter())),
        "custom" => UnicriticalMap::new(degree, parameter),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_presets() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(preset("chebyshev", 2, z).unwrap().parameter(), Complex64::new(-2.0, 0.0));
        assert_eq!(preset("basilica", 2, z).unwrap().parameter(), Complex64::new(-1.0, 0.0));
        let custom = preset("custom", 3, Complex64::new(0.1, 0.2)).unwrap();
        assert_eq!(custom.degree(), 3);
        assert!(matches!(preset("mandelbrot", 2, z), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn oracle_finds_period_doubling_cascade() {
        let o = feigenbaum_oracle(FEIGENBAUM_LEVELS, FEIGENBAUM_TOLERANCE);
        assert_eq!(o.superstable.len(), 13);
        assert!((o.superstable[2] + 1.310_702_641_336_832_9).abs() < 1e-11);
        for (k, &c) in o.superstable.iter().enumerate().skip(1) {
            let z = critical_iterate(c, 1 << k);
            assert!(z.abs() < 1e-6, "c_{k} = {c} leaves f^(2^k)(0) = {z}");
        }
        assert!((o.ratios.last().unwrap() - 4.669_201_6).abs() < 1e-3);
        assert!((o.limit - FEIGENBAUM_REFERENCE).abs() < 1e-11);
    }
}
