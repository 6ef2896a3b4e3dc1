use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |X - X^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("cannot split a {0}x{0} matrix into 2x2 blocks of size {1}")]
    BadBlockSize(usize, usize),

    #[error("empty input")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid U: {0}")]
    InvalidU(String),

    #[error("matrix is not unitary (max |V^dagger V - I| = {0:e})")]
    NotUnitary(f64),

    #[error("lambda = {0} is outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("mixing parameter p = {0} is outside [0, 1]")]
    MixingOutOfRange(f64),

    #[error("bisection bracket [0, 1] does not contain a sign change of the minimum eigenvalue")]
    NonBracketing,

    #[error("witness does not match the requested construction: {0}")]
    WitnessMismatch(String),

    #[error("trace has a non-negligible imaginary part ({0:e})")]
    NonRealTrace(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
