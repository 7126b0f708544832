use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown preset `{name}`; available presets: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("limit-case index must lie in -2..=2, got {0}")]
    LambdaOutOfRange(i32),

    #[error("chain length must be even and at least {min}, got {n}")]
    InvalidChainLength { n: usize, min: usize },

    #[error("chain length {n} exceeds the supported maximum {max}")]
    ChainTooLong { n: usize, max: usize },

    #[error("states for lambda = +/-2 need a chain length divisible by 4, got {0}")]
    UnsupportedSpecialState(usize),

    #[error("needed at least {min} sample points, got {got}")]
    TooFewPoints { got: usize, min: usize },

    #[error("degenerate loop (minimum radius {min_radius:.3e}): the curve passes through the origin")]
    DegenerateLoop { min_radius: f64 },

    #[error("tolerance must be a positive finite number, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("phase diagram axes must vary distinct parameters (both vary `{0}`)")]
    SameAxis(&'static str),

    #[error("invalid Pauli string: {0}")]
    InvalidPauliString(String),

    #[error("parameters must be finite")]
    NonFiniteParams,

    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
