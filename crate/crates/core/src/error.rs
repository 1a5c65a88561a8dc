//! Error type shared by every module.

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failures reported by the engine. None of them is ever converted into a
/// silently wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision to decide the result")]
    InsufficientPrecision,
    #[error("valuation is not divisible by 2")]
    OddExponent,
    #[error("leading coefficient is not a square in the coefficient field")]
    NonSquareResidue,
    #[error("negative value where a nonnegative one is required")]
    NegativeValue,
    #[error("no approximation element found within the search bound")]
    NotReachable,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("embedding is not multiplicative on basis pair ({0}, {1})")]
    EmbeddingNotMultiplicative(String, String),
    #[error("scalar fields do not match")]
    FieldMismatch,
    #[error("base is singular")]
    SingularBase,
    #[error("incompatible coarsenings of components {i} and {j} on base element {element}: {left} vs {right}")]
    IncompatibleCoarsenings { i: usize, j: usize, element: String, left: String, right: String },
    #[error("radical computation needs characteristic 0")]
    UnsupportedCharacteristic,
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("central probes do not separate the components: {0}")]
    MatchAmbiguous(String),
    #[error("lift constraint violated: {0}")]
    LiftConstraintViolated(String),
    #[error("gamma must satisfy 0 < gamma < 1/2")]
    GammaOutOfRange,
    #[error("not surmultiplicative: {0}")]
    NotSurmultiplicative(String),
    #[error("degenerate value function: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
