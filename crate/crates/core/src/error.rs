use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("all amplitudes are zero")]
    ZeroVector,
    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("root search did not reach tolerance {tol} after {iterations} iterations")]
    NoConvergence { tol: f64, iterations: usize },
    #[error("{axis} value {value} is outside [0, 1]")]
    OutOfRange { axis: &'static str, value: f64 },
    #[error("histogram shapes differ")]
    ShapeMismatch,
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("slice [{lo}, {hi}) contains no counts")]
    EmptySlice { lo: f64, hi: f64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
