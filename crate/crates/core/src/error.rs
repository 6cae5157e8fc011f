use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the limit of {0} elements")]
    LimitExceeded(usize),
    #[error("element {elem} has {} inverses (expected exactly one)", witnesses.len())]
    NotInverse { elem: usize, witnesses: Vec<usize> },
    #[error("semigroup carries no inversion table")]
    MissingInverses,
    #[error("element index {0} is out of range")]
    IndexInvalid(usize),
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("rook monoid dimension {0} exceeds the supported maximum of 5")]
    DimensionTooLarge(usize),
    #[error("construction size {size} exceeds the bound {bound}")]
    SizeExceeded { size: u128, bound: u128 },
    #[error("partial maps act on different ground sets ({0} vs {1} points)")]
    GroundSetMismatch(usize, usize),
    #[error("elements {0} and {1} have no infimum under the natural order")]
    NotASemilattice(usize, usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("variable {0} is not bound by the substitution")]
    UnboundVariable(String),
    #[error("terms must be nonempty")]
    EmptyTerm,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exhaustive search needs {0} substitutions, over the budget")]
    BudgetExceeded(String),
    #[error("term flavor does not match: {0}")]
    FlavorMismatch(String),
    #[error("inner blocks of a composed word share variable {0}")]
    DisjointnessViolated(String),
    #[error("factor not recognized as a Brandt semigroup: {0}")]
    UnrecognizedFactor(String),
    #[error("bad algebra spec: {0}")]
    BadSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
