//! Shared error type for all berkstat-core operations.
//!
//! Every fallible operation in this crate returns [`Error`]; the variants
//! describe violated preconditions rather than internal failures, so callers
//! can map them onto user-facing diagnostics (the CLI maps them to exit
//! codes).

use num_bigint::BigInt;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by berkstat-core operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// A scalar of one field kind was combined with data of the other kind
    /// (for example a rational function under a p-adic field).
    #[error("scalar kind does not match the field: {0}")]
    KindMismatch(&'static str),

    /// Field description is invalid (missing or composite p, or base <= 1).
    #[error("invalid field description: {0}")]
    InvalidFieldSpec(String),

    /// `reduce_scalar` requires a non-negative valuation.
    #[error("cannot reduce a scalar of negative valuation {0}")]
    NegativeValuation(i64),

    /// The zero polynomial was passed where a nonzero one is required.
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    /// Number of variables (or coordinates) does not match between operands.
    #[error("arity mismatch: {expected} variables expected, {found} found")]
    ArityMismatch { expected: usize, found: usize },

    /// `reduce_poly` requires height at most 1.
    #[error("polynomial height exceeds 1; normalize before reducing")]
    HeightExceedsOne,

    /// A homogeneous polynomial was required.
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    /// All coordinates of a projective tuple are zero.
    #[error("all coordinates are zero")]
    AllZero,

    /// Equality testing is only decided for pairs of type-I points.
    #[error("equality is only supported between type-I points")]
    UnsupportedComparison,

    /// The operation supports only type-I points (and, where documented, the
    /// Gauss class).
    #[error("unsupported point for this operation: {0}")]
    UnsupportedPoint(&'static str),

    /// A coordinate expected to be a unit (valuation 0) is not.
    #[error("coordinate {index} is not a unit (valuation must be 0)")]
    NotAUnit { index: usize },

    /// Trial division hit the configured prime bound with a part > 1 left.
    #[error("factorization bound {bound} exceeded; unfactored part {remaining}")]
    FactorBoundExceeded { bound: u64, remaining: BigInt },

    /// A relation vector must be nonzero.
    #[error("relation vector is identically zero")]
    ZeroRelation,

    /// The relation does not hold at the residue of the given point.
    #[error("relation is not satisfied at the residue point")]
    RelationNotSatisfiedAtResidue,

    /// The multiset of points is empty.
    #[error("multiset is empty")]
    EmptyMultiset,

    /// The test family is empty.
    #[error("test family is empty")]
    EmptyFamily,

    /// A test polynomial must be normalized (height exactly 1).
    #[error("polynomial is not normalized to height 1")]
    NotNormalized,

    /// `count_below` thresholds must lie strictly between 0 and 1.
    #[error("threshold must satisfy 0 < t < 1")]
    ThresholdOutOfRange,

    /// Discrete measure weights must be positive and sum to 1.
    #[error("invalid measure: {0}")]
    InvalidMeasure(&'static str),

    /// Adaptive truncation reached its precision cap without resolving a
    /// valuation.
    #[error("precision cap {cap} exceeded while resolving a valuation")]
    PrecisionCapExceeded { cap: usize },

    /// A run parameter is out of range (checkpoints, precision settings, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
