use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient of the divisor is not a single τ-monomial")]
    NonUnitLeadingCoefficient,
    #[error("division by a series that is zero to known order")]
    DivisionByZeroSeries,
    #[error("exp requires a series supported on positive λ-exponents")]
    NonPositiveValuation,
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("map has an entry at the empty partition")]
    EmptyKeyPresent,
    #[error("constant term is not 1")]
    BadConstantTerm,
    #[error("partition must be nonempty")]
    EmptyPartition,
    #[error("both partitions are empty")]
    BothEmpty,
    #[error("number of simple branch points would be negative ({0})")]
    NegativeR(i64),
    #[error("brute force bound exceeded: {0}")]
    TooLarge(String),
    #[error("tau0 must be nonzero")]
    ZeroTau0,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}
