use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("slope {xi} outside the derivative range [{lo}, {hi}]")]
    OutOfRange { xi: f64, lo: f64, hi: f64 },

    #[error("flux value {y} is below the flux minimum {min}")]
    BelowMinimum { y: f64, min: f64 },

    #[error("invalid time {0}: evaluation requires t >= 1e-9")]
    InvalidTime(f64),

    #[error("interface traces did not stabilize (last eps {eps})")]
    NoConvergence { eps: f64 },

    #[error("fractional exponent s = {0} must lie in (0, 1]")]
    InvalidExponent(f64),

    #[error("brute-force variation limited to 16 samples, got {0}")]
    TooLarge(usize),

    #[error("time step {dt} exceeds the CFL limit {limit}")]
    CflViolation { dt: f64, limit: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid flux: {0}")]
    InvalidFlux(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("degenerate least-squares fit: {0}")]
    DegenerateFit(String),
}
