use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidCartanType { family: String, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("word {0} is not a reduced word of the longest element")]
    NotLongest(String),

    #[error("illegal move {mv} on word {word}")]
    IllegalMove { mv: String, word: String },

    #[error("words {0} and {1} represent different Weyl group elements")]
    DifferentElements(String, String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial has a non-positive coefficient and cannot be tropicalized")]
    NotSubtractionFree,

    #[error("cannot mutate at frozen vertex {0}")]
    FrozenMutation(usize),

    #[error("convention violation: {0}")]
    Convention(String),

    #[error("letter {0} is not minuscule")]
    NotMinuscule(usize),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors that indicate an internal sign or labeling convention is broken,
    /// as opposed to bad user input.
    pub fn is_convention_violation(&self) -> bool {
        matches!(self, Error::Convention(_))
    }

    /// Errors caused by malformed or out-of-range input.
    pub fn is_usage_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidCartanType { .. }
                | Error::Parse(_)
                | Error::LetterOutOfRange { .. }
                | Error::NotReduced(_)
                | Error::NotLongest(_)
                | Error::IllegalMove { .. }
                | Error::DifferentElements(..)
                | Error::DimensionMismatch { .. }
                | Error::NotMinuscule(_)
                | Error::InvalidWitness(_)
        )
    }
}
