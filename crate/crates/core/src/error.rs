use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("preimage node {point} at depth {depth} hits the critical point")]
    CriticalCollision { depth: usize, point: Complex64 },

    #[error("tree of degree {degree} and depth {depth} exceeds the node budget of {budget}")]
    Budget { degree: u32, depth: usize, budget: u64 },

    #[error("orbit of {start} escapes at iterate {index}")]
    Escape { start: Complex64, index: usize },

    #[error("bracket [{t_lo}, {t_hi}] does not straddle a root (P = {p_lo}, {p_hi})")]
    Bracket { t_lo: f64, t_hi: f64, p_lo: f64, p_hi: f64 },

    #[error("reference point {point} lies outside every component at pull-back step {step}")]
    Selection { step: usize, point: Complex64 },

    #[error("pull-back chain is ambiguous at step {step}")]
    Ambiguous { step: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("profile has fewer than two grid points")]
    EmptyProfile,

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } | Error::Selection { .. } | Error::Ambiguous { .. } => 3,
            Error::CriticalCollision { .. } | Error::Escape { .. } => 4,
            Error::Io { .. } => 1,
            _ => 2,
        }
    }
}
