//! Dynamical quantities of unicritical polynomials `f(z) = z^d + c` at
//! controlled truncation depth.
//!
//! The crate is organised bottom-up:
//!
//! * [`map`] holds the polynomial, forward orbits with their derivative
//!   cocycle, and one-step preimages.
//! * [`tree`] enumerates the backward (preimage) tree of a point, serially or
//!   with a deterministic parallel reduction.
//! * [`series`] builds the Poincaré series truncations, the forward series
//!   along the critical value, and the pressure-root exponent estimate.
//! * [`pullback`] propagates disk enclosures backward and estimates the
//!   backward-contraction profile `R(δ)`, children of round disks and
//!   return-derivative statistics.
//! * [`returns`] covers close returns of the critical orbit: the first-entry
//!   staircase `n(δ)`, the marked preimage `ζ(δ)` and the integral checks.
//! * [`cli`] is the experiment front end used by the `unicrit` binary.
//!
//! All derivative products are kept in log space; level sums use
//! largest-term rescaling with Neumaier-compensated accumulation.

pub mod cli;
pub mod error;
pub mod map;
pub mod pullback;
pub mod returns;
pub mod serde_util;
pub mod series;
pub mod sum;
pub mod tree;

pub use error::{Error, Result};
pub use map::{OrbitSegment, Preimages, UnicriticalMap};
pub use num_complex::Complex64;
