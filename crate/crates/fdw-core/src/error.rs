use thiserror::Error;

/// Errors produced by grid construction, spectral operations and norm
/// evaluation. Numerical blow-up is *not* an error: it is signalled
/// through NaN/Inf field values and trajectory outcomes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("multiplier returned NaN at lattice frequency {xi:?}")]
    MultiplierNan { xi: Vec<f64> },

    #[error("coefficients violate Hermitian symmetry: max deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    HermitianViolation { deviation: f64, tolerance: f64 },

    #[error("grid mismatch: operation requires fields on the same grid")]
    GridMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
