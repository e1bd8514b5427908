use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An edge names a paper outside `0..n_papers`.
    EdgeOutOfRange { citing: usize, cited: usize, n_papers: usize },
    /// Damping must lie strictly inside `(0, 1)`.
    InvalidDamping(f64),
    InvalidTolerance(f64),
    InvalidMaxIter,
    /// The dummy-paper model needs at least one citation.
    EmptyCitationMatrix,
    /// The vector has too few entries for the requested operation.
    TooShort { len: usize, min: usize },
    /// Every entry is zero, so scaling by the maximum is undefined.
    AllZero,
    NotNormalized { sum: f64 },
    LengthMismatch { expected: usize, found: usize },
    /// A paper that contributes to an author rank has no authors.
    NoAuthors { paper: usize },
    NoJournal { paper: usize },
    NoDate { paper: usize },
    MissingMetadata { paper: usize },
    DuplicateMetadata { paper: usize },
    UnknownPaper { paper: usize, n_papers: usize },
    InvalidWindow(String),
    InvalidSpec(String),
    UnknownExample(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EdgeOutOfRange { citing, cited, n_papers } => write!(
                f,
                "edge ({citing} -> {cited}) references a paper outside 0..{n_papers}"
            ),
            Error::InvalidDamping(p) => write!(f, "damping parameter {p} is not in the open interval (0, 1)"),
            Error::InvalidTolerance(t) => write!(f, "tolerance {t} must be positive and finite"),
            Error::InvalidMaxIter => write!(f, "max_iter must be at least 1"),
            Error::EmptyCitationMatrix => write!(
                f,
                "dummy-paper model requires L != 0 (at least one citation between distinct papers)"
            ),
            Error::TooShort { len, min } => write!(f, "vector of length {len} is shorter than {min}"),
            Error::AllZero => write!(f, "cannot scale an all-zero vector to [0, 1]"),
            Error::NotNormalized { sum } => write!(f, "vector must sum to one, sums to {sum}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::NoAuthors { paper } => write!(f, "paper {paper} has an empty author set"),
            Error::NoJournal { paper } => write!(f, "paper {paper} has no journal assignment"),
            Error::NoDate { paper } => write!(f, "paper {paper} has no publication date"),
            Error::MissingMetadata { paper } => write!(f, "no metadata record for paper {paper}"),
            Error::DuplicateMetadata { paper } => write!(f, "duplicate metadata record for paper {paper}"),
            Error::UnknownPaper { paper, n_papers } => {
                write!(f, "metadata names paper {paper}, but only {n_papers} papers are ranked")
            }
            Error::InvalidWindow(msg) => write!(f, "invalid time window: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid block-model spec: {msg}"),
            Error::UnknownExample(n) => write!(f, "unknown example {n}, expected 1..=6"),
        }
    }
}

impl core::error::Error for Error {}
