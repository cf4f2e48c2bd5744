use thiserror::Error;

use crate::metric::MetricViolation;
use crate::order::PointN;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected a strictly positive value, got {0}")]
    NonPositive(String),
    #[error("expected a nonnegative value, got {0}")]
    Negative(String),
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("function domain is empty")]
    EmptyDomain,
    #[error("duplicate point {0}")]
    DuplicatePoint(PointN),
    #[error("function is not isotone: {lower} <= {upper} but values decrease")]
    NotIsotone { lower: PointN, upper: PointN },
    #[error("origin is not in the function domain")]
    MissingOrigin,
    #[error("function is not amenable at {0}")]
    NotAmenable(PointN),
    #[error("amenable continuation precheck failed")]
    PrecheckFailed,
    #[error("candidate disagrees with the sampled function at {0}")]
    ExtensionMismatch(PointN),
    #[error("candidate exceeds the sampled function at {0}")]
    DominanceViolation(PointN),
    #[error("candidate fails its spot check: {0}")]
    CandidateInvalid(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("not a metric: {0}")]
    NotAMetric(MetricViolation),
    #[error("combiner has no value at distance tuple {0}")]
    CombinerDomainGap(PointN),
    #[error("combiner is irrational-valued; use the approximate routines")]
    ApproximateCombiner,
    #[error("not a metric product: pairs {first:?} and {second:?} share a distance tuple but differ in distance")]
    NotWellDefined {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("point {0} is not on the grid lattice")]
    OffLattice(PointN),
    #[error("value {0} is outside the accepted range")]
    OutOfRange(String),
    #[error("denominator of {0} is not a power of 3")]
    NonTriadicDenominator(String),
    #[error("expected a nonzero transcendental coefficient")]
    RationalInput,
    #[error("comparison is not decided by the certified bounds on the transcendental symbol")]
    UndecidableComparison,
    #[error("parse error: {0}")]
    Parse(String),
}
