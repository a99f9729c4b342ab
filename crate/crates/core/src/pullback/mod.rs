//! Disk pull-backs, the backward-contraction profile `R(δ)`, children of
//! round disks and return-derivative statistics.
//!
//! Enclosures are certified up to binary64 rounding, which is absorbed by a
//! small relative widening of every outer radius. No interval arithmetic is
//! used.

mod chain;
mod children;
mod decay;
mod disk;
mod profile;
mod stats;

pub use chain::{pull_back_along_orbit, PullbackChain, AMBIGUITY_FACTOR};
pub use children::{child_sum_report, find_children, Certainty, ChildRecord, ChildSumReport};
pub use decay::max_pullback_diameters;
pub use disk::{disk_preimage_components, modulus_round, DiskEnclosure, PullbackStep};
pub use profile::{
    backward_contraction_profile, dyadic_grid, scale_entry, ScaleEntry, ScaleProfile, DEFAULT_GRID_LEN,
};
pub use stats::{return_derivative_stats, ReturnDerivativeStats};
