use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("weight {weight} does not fit {algebra}")]
    ShapeMismatch { weight: String, algebra: String },

    #[error("non-integral weight: coefficient {0} is not an integer")]
    NonIntegralWeight(String),

    #[error("weights {0} and {1} are not linked")]
    NotLinked(String, String),

    #[error("weights {hi} and {lo} are not comparable in the Bruhat order")]
    NotComparable { hi: String, lo: String },

    #[error("labels of {weight} do not fit the interval [{a}, {b}]")]
    IntervalTooSmall { weight: String, a: i64, b: i64 },

    #[error("{0} is not a minimal coset representative")]
    NotCosetRepresentative(String),

    #[error("permutation error: {0}")]
    Permutation(String),

    #[error("inconsistent embedding: closed form gives {formula}, table gives {observed}")]
    InconsistentEmbedding { formula: String, observed: String },

    #[error("singular typical block: projective dimension lies in [{lower}, {upper}]")]
    SingularTypicalUnsupported { lower: u64, upper: u64 },

    #[error("budget exceeded: {reason}")]
    BudgetExceeded { reason: String, partial: Vec<i64> },

    #[error("convention self-test failed: {0}")]
    SelfTest(String),

    #[error("engine invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidAlgebra(_)
            | Error::ShapeMismatch { .. }
            | Error::NonIntegralWeight(_)
            | Error::NotCosetRepresentative(_)
            | Error::Permutation(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
