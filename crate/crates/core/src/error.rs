use thiserror::Error;

/// Errors raised by the laboratory.
///
/// Every operation that can refuse its input returns one of these; internal
/// consistency failures (a table that fails orthogonality, a search that
/// contradicts a structural lemma) surface as [`Error::Internal`] rather than
/// being swallowed.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("group of order {order} exceeds the supported bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("element {0} does not belong to the group")]
    ForeignElement(usize),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("search space of {candidates} candidates exceeds the guard {bound}")]
    SearchSpaceTooLarge { candidates: u128, bound: u128 },
    #[error("case {case} is not valid for n = {n}")]
    InvalidCase { case: String, n: u32 },
    #[error("Galois exponent {0} is even")]
    EvenGaloisExponent(i64),
    #[error("incomplete Galois transversal: {0}")]
    IncompleteTransversal(String),
    #[error("value is not integral: {0}")]
    NonIntegral(String),
    #[error("no prime congruent to 1 mod {exponent} found below {bound}")]
    NoSuitablePrime { exponent: u64, bound: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero decomposition row")]
    ZeroRow,
    #[error("A^2 table miss for a group of order {order} with {classes} classes")]
    TableMiss { order: usize, classes: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
