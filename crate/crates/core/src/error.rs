use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series must be nonempty")]
    EmptySeries,
    #[error("series contains a non-finite value at index {0}")]
    NonFiniteValue(usize),
    #[error("block length {b} out of range for series length {n}: require {min} <= b <= {max}")]
    BadBlockLength { b: usize, n: usize, min: usize, max: usize },
    #[error("degenerate sample: {0}")]
    DegenerateSeries(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature did not converge on [{a}, {b}]")]
    QuadratureNonConvergence { a: f64, b: f64 },
    #[error("no tabulated extremal index for {model} with lambda = {lambda}")]
    UnknownTheta { model: &'static str, lambda: f64 },
    #[error("{failures} of {reps} replications failed ({first})")]
    TooManyFailures { failures: usize, reps: usize, first: String },
}

pub type Result<T> = std::result::Result<T, Error>;
