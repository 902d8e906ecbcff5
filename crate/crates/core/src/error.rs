use thiserror::Error;

use crate::matroid::Subset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set of {0} elements exceeds the supported maximum of 16")]
    TooManyElements(usize),
    #[error("subset {subset} is not contained in the ground set of size {n}")]
    ElementOutOfRange { n: usize, subset: Subset },
    #[error("the basis family is empty")]
    EmptyBases,
    #[error("bases {first} and {second} have different sizes")]
    UnequalBasisSizes { first: Subset, second: Subset },
    #[error("basis exchange fails for {b1}, {b2} removing element {element}")]
    ExchangeAxiomViolated {
        b1: Subset,
        b2: Subset,
        element: usize,
    },
    #[error("{0} is not a flat")]
    NotAFlat(Subset),
    #[error("matroid has loops {0}")]
    HasLoops(Subset),
    #[error("operation undefined on the empty matroid")]
    EmptyMatroid,
    #[error("flats {0} and {1} are not comparable")]
    NotComparable(Subset, Subset),
    #[error("characteristic polynomial is not divisible by t - 1")]
    NonzeroRemainder,
    #[error("Kazhdan-Lusztig recursion inconsistent at degree {degree}")]
    RecursionInconsistent { degree: usize },
    #[error("expected an integer result, got {0}")]
    NonIntegerResult(String),
    #[error("identity sum over flats above {flat} is {got}, expected {expected}")]
    ProofIdentityViolated {
        flat: Subset,
        got: String,
        expected: String,
    },
    #[error("flag length {k} outside 0..{rank}")]
    KOutOfRange { k: usize, rank: usize },
    #[error("matrix has no rows or no columns")]
    EmptyMatrix,
    #[error("matrix row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("invalid rank {r} for ground set of size {n}")]
    InvalidRank { r: usize, n: usize },
    #[error("graph edge ({0}, {1}) references a missing vertex")]
    BadEdge(usize, usize),
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("enumeration supports at most {max} elements, requested {n}")]
    TooLarge { n: usize, max: usize },
    #[error("revlex code has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("revlex code contains invalid character {0:?}")]
    BadChar(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("input {index}: {source}")]
    AtInput { index: usize, source: Box<Error> },
}

impl Error {
    /// Tags an error with the position of the input that caused it.
    pub fn at_input(self, index: usize) -> Error {
        Error::AtInput {
            index,
            source: Box::new(self),
        }
    }

    /// The error with any input position stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtInput { source, .. } => source.root(),
            other => other,
        }
    }

    /// Parse and I/O failures, as opposed to violated invariant preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.root(),
            Error::Parse(_)
                | Error::Io(_)
                | Error::BadLength { .. }
                | Error::BadChar(_)
                | Error::UnknownName(_)
                | Error::EmptyMatrix
                | Error::RaggedMatrix { .. }
                | Error::BadEdge(..)
                | Error::TooLarge { .. }
                | Error::TooManyElements(_)
                | Error::ElementOutOfRange { .. }
                | Error::EmptyBases
                | Error::UnequalBasisSizes { .. }
                | Error::ExchangeAxiomViolated { .. }
                | Error::InvalidRank { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
