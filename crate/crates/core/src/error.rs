use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed matrix, frame or gauge input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The Jacobi sweeps did not reach orthogonality.
    #[error("singular value decomposition did not converge after {iterations} sweeps")]
    Convergence { iterations: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rank k = {k} is out of range 1..={q}")]
    RankOutOfRange { k: usize, q: usize },

    /// Every rank-one partial isometry is equally close to the zero matrix.
    #[error(
        "no partial isometry of rank >= 1 is defined as nearest for the zero matrix; \
         every rank-1 partial isometry is at distance {distance}"
    )]
    ZeroMatrix { distance: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::DimensionMismatch(_) | Error::Io(_) => 2,
            Error::Convergence { .. } | Error::Numerical(_) => 3,
            Error::Precondition(_) | Error::RankOutOfRange { .. } | Error::ZeroMatrix { .. } => 4,
        }
    }
}
