use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension: m = {0} (supported: 1..=5)")]
    UnsupportedDimension(u32),

    #[error("inverse of zero in GF(2^{0})")]
    ZeroInverse(u32),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("operators do not commute (deviation {0:e})")]
    NonCommuting(f64),

    #[error("degenerate joint spectrum: eigenspace of dimension {0} after refinement")]
    Degenerate(usize),

    #[error("translation operators of striation {0} do not commute; field basis and dual basis are inconsistent")]
    BasisDuality(usize),

    #[error("invalid net digits {digits:?} for N = {order}")]
    InvalidNet { digits: Vec<u32>, order: usize },

    #[error("net index {index} out of range (N^(N+1) = {count})")]
    NetIndexRange { index: u128, count: String },

    #[error("refusing to enumerate all {0} nets; request a sample instead")]
    EnumerationTooLarge(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),

    #[error("input is not Hermitian (imaginary residue {0:e})")]
    NotHermitian(f64),

    #[error("net mismatch: expected {expected}, found {found}")]
    NetMismatch { expected: String, found: String },

    #[error("net construction failed: {0}")]
    NetConstruction(String),

    #[error("net is not product-structured")]
    NotProductNet,

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// `true` for errors caused by bad input rather than broken invariants.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Internal(_)
                | Error::BasisDuality(_)
                | Error::NetConstruction(_)
                | Error::Degenerate(_)
        )
    }
}
