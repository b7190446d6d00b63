use thiserror::Error;

/// Errors produced by state construction and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is not one (|Tr - 1| = {0:e})")]
    TraceNotOne(f64),
    #[error("operator is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("direction vector is not unit length (|v| = {0})")]
    NonUnitDirection(f64),
    #[error("iterative solver did not converge within {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("invalid Bell spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("matrix is not unitary (max |U†U - I| = {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not a proper rotation (orthogonality error {orthogonality:e}, det {det})")]
    NotProperRotation { orthogonality: f64, det: f64 },
    #[error("invalid alpha {0}: Rényi order must be >= 1")]
    InvalidAlpha(f64),
    #[error("state is not a T-state (|r| = {r_norm:e}, |s| = {s_norm:e})")]
    NotTState { r_norm: f64, s_norm: f64 },
    #[error("sample count must be positive")]
    InvalidSampleCount,
    #[error("count must be positive")]
    InvalidCount,
}

pub type Result<T> = std::result::Result<T, Error>;
