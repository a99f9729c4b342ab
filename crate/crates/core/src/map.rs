//! The polynomial `z^d + c`, forward orbits and one-step preimages.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::complex_pair;

/// Normalized unicritical polynomial `f(z) = z^d + c`.
///
/// The critical point is `0` and the critical value is `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnicriticalMap {
    degree: u32,
    #[serde(with = "complex_pair")]
    parameter: Complex64,
}

impl UnicriticalMap {
    pub fn new(degree: u32, parameter: Complex64) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidMap(format!("degree must be at least 2, got {degree}")));
        }
        if !(parameter.re.is_finite() && parameter.im.is_finite()) {
            return Err(Error::InvalidMap(format!("parameter must be finite, got {parameter}")));
        }
        Ok(Self { degree, parameter })
    }

    /// Quadratic map `z^2 + c` with real parameter.
    pub fn quadratic(c: f64) -> Self {
        Self::new(2, Complex64::new(c, 0.0)).expect("finite real parameter")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parameter(&self) -> Complex64 {
        self.parameter
    }

    /// Critical value `f(0) = c`.
    pub fn critical_value(&self) -> Complex64 {
        self.parameter
    }

    pub fn ln_degree(&self) -> f64 {
        f64::from(self.degree).ln()
    }

    /// Escape radius `1 + max(|c|, 1)`; beyond it `|f(z)| > |z|` and the orbit escapes.
    pub fn escape_radius(&self) -> f64 {
        1.0 + self.parameter.norm().max(1.0)
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        z.powu(self.degree) + self.parameter
    }

    /// `f^n(z)` without bookkeeping.
    pub fn apply_n(&self, mut z: Complex64, n: usize) -> Complex64 {
        for _ in 0..n {
            z = self.apply(z);
        }
        z
    }

    /// `Df(z) = d z^(d-1)`.
    #[inline]
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        z.powu(self.degree - 1) * f64::from(self.degree)
    }

    /// `log|Df(z)| = log d + (d-1) log|z|`; `-inf` at the critical point.
    #[inline]
    pub fn log_abs_derivative(&self, z: Complex64) -> f64 {
        self.ln_degree() + f64::from(self.degree - 1) * z.norm().ln()
    }

    /// Forward orbit of `start` for `n` steps with the log-derivative cocycle.
    ///
    /// Iteration stops at the first iterate outside the escape radius; the
    /// returned segment is then shorter than `n + 1` and records `escaped_at`.
    pub fn iterate(&self, start: Complex64, n: usize) -> OrbitSegment {
        let r_esc = self.escape_radius();
        let mut points = Vec::with_capacity(n + 1);
        let mut log_deriv = Vec::with_capacity(n + 1);
        let mut z = start;
        let mut acc = 0.0;
        let mut escaped_at = None;
        for k in 0..=n {
            points.push(z);
            log_deriv.push(acc);
            if z.norm() > r_esc {
                escaped_at = Some(k);
                break;
            }
            if k < n {
                acc += self.log_abs_derivative(z);
                z = self.apply(z);
            }
        }
        OrbitSegment { start, points, log_deriv, escaped_at }
    }

    /// Orbit of the critical value `c`, failing if it escapes within `n` steps.
    pub fn critical_value_orbit(&self, n: usize) -> Result<OrbitSegment> {
        self.iterate(self.parameter, n).require_bounded()
    }

    /// Orbit of the critical point `0`, failing if it escapes within `n` steps.
    pub fn critical_orbit(&self, n: usize) -> Result<OrbitSegment> {
        self.iterate(Complex64::new(0.0, 0.0), n).require_bounded()
    }

    /// The `d` solutions of `z^d = w - c`, ordered by branch index.
    pub fn preimages(&self, w: Complex64) -> Preimages {
        let a = w - self.parameter;
        if a == Complex64::new(0.0, 0.0) {
            return Preimages {
                roots: vec![Complex64::new(0.0, 0.0); self.degree as usize],
                multiple: true,
            };
        }
        let roots = (0..self.degree).map(|k| self.branch_root(a, k)).collect();
        Preimages { roots, multiple: false }
    }

    /// Branch `k` of `a^(1/d)`: modulus `|a|^(1/d)`, argument `(Arg a + 2πk)/d`.
    #[inline]
    pub fn branch_root(&self, a: Complex64, k: u32) -> Complex64 {
        polar_root(root_modulus(a.norm(), self.degree), a.arg(), self.degree, k)
    }
}

/// Branch `k` of the `d`-th root of `rho^d e^{iθ}`. For even `d` the upper
/// half of the branches is the exact negation of the lower half.
#[inline]
pub(crate) fn polar_root(rho: f64, theta: f64, d: u32, k: u32) -> Complex64 {
    if d % 2 == 0 && k >= d / 2 {
        return -polar_root(rho, theta, d, k - d / 2);
    }
    Complex64::from_polar(rho, (theta + 2.0 * PI * f64::from(k)) / f64::from(d))
}

/// `x^(1/d)` for `x >= 0`.
#[inline]
pub(crate) fn root_modulus(x: f64, d: u32) -> f64 {
    match d {
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / f64::from(d)),
    }
}

/// `x^(1/d) - y^(1/d)` for `x >= y >= 0`, without cancellation.
pub(crate) fn root_difference(x: f64, y: f64, d: u32) -> f64 {
    let rx = root_modulus(x, d);
    let ry = root_modulus(y, d);
    if y == 0.0 {
        return rx;
    }
    // x - y = (rx - ry) * sum_k rx^k ry^(d-1-k)
    let denom: f64 = (0..d).map(|k| rx.powi(k as i32) * ry.powi((d - 1 - k) as i32)).sum();
    (x - y) / denom
}

/// Result of [`UnicriticalMap::preimages`].
#[derive(Debug, Clone, PartialEq)]
pub struct Preimages {
    pub roots: Vec<Complex64>,
    /// Set when `w` is the critical value: every root is the critical point.
    pub multiple: bool,
}

/// A forward orbit segment with its log-derivative cocycle.
///
/// `points[k] = f^k(start)` and `log_deriv[k] = log|Df^k(start)|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSegment {
    #[serde(with = "complex_pair")]
    pub start: Complex64,
    #[serde(with = "crate::serde_util::complex_vec")]
    pub points: Vec<Complex64>,
    #[serde(with = "crate::serde_util::extended_f64_vec")]
    pub log_deriv: Vec<f64>,
    pub escaped_at: Option<usize>,
}

impl OrbitSegment {
    /// Number of iterates after the start point.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() <= 1
    }

    pub fn require_bounded(self) -> Result<Self> {
        match self.escaped_at {
            Some(index) => Err(Error::Escape { start: self.start, index }),
            None => Ok(self),
        }
    }

    /// `|Df^k(start)|`.
    pub fn abs_derivative(&self, k: usize) -> f64 {
        self.log_deriv[k].exp()
    }

    /// Distances of running-minimum returns of the orbit to `0`:
    /// `(k, |points[k]|)` for every `k >= 1` whose modulus beats all earlier ones.
    pub fn closest_returns(&self) -> Vec<(usize, f64)> {
        let mut best = f64::INFINITY;
        let mut out = Vec::new();
        for (k, z) in self.points.iter().enumerate().skip(1) {
            let r = z.norm();
            if r < best {
                best = r;
                out.push((k, r));
            }
        }
        out
    }
}
