use thiserror::Error;

/// Which validation step rejected a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityCheck {
    NotSquare,
    NotHermitian { deviation: f64 },
    Trace { trace: f64 },
    NotPositive { min_eigenvalue: f64 },
}

impl std::fmt::Display for DensityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DensityCheck::NotSquare => write!(f, "matrix is not square"),
            DensityCheck::NotHermitian { deviation } => {
                write!(f, "not Hermitian (max deviation {deviation:e})")
            }
            DensityCheck::Trace { trace } => write!(f, "trace is {trace}, expected 1"),
            DensityCheck::NotPositive { min_eigenvalue } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A[i][j] - conj(A[j][i])| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("Case-1 formulas require K = 0, got K = {k}")]
    CaseMismatch { k: f64 },

    #[error("temperature must be positive and finite, got {0}")]
    NonPositiveTemperature(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(DensityCheck),

    #[error("log base must be finite and > 1, got {0}")]
    InvalidLogBase(f64),

    #[error("Hermitian eigensolver did not converge")]
    EigenFailed,

    #[error("singular value decomposition did not converge")]
    SvdFailed,

    #[error("threshold not bracketed: detector({t_lo}) = {value_lo:e}, detector({t_hi}) = {value_hi:e}")]
    NotBracketed { t_lo: f64, t_hi: f64, value_lo: f64, value_hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("grid point ({i}, {j}) failed: {source}")]
    Point {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
