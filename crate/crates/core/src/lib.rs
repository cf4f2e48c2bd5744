//! Exact computations on metric preserving functions of several variables:
//! the coordinatewise order on the nonnegative orthant, sampled functions and
//! their continuations, product metrics, the modulus of continuity on
//! lattices, and Cantor set arithmetic.

pub mod cantor;
pub mod continuation;
pub mod error;
pub mod metric;
pub mod modulus;
pub mod order;
pub mod rational;
pub mod sampled;
pub mod symbolic;

pub use cantor::{
    cantor_decompose, ce_distance_witness, ce_level_set, ce_triple_refutation, in_cantor, in_ce,
    three_point_search, to_base3, Base3Expansion, CeTripleReport,
};
pub use continuation::{
    amenable_continuation_precheck, amenable_isotone_continuation, envelope_maximality_check,
    minimality_check, subadditive_envelope, sup_continuation, AxisExtendedFunction,
    CoverCertificate, CoverPart, PrecheckReport, ZeroAxisRule,
};
pub use error::{Error, Result};
pub use metric::{
    extract_product_function, find_line_space_failure, is_distance_increasing,
    metric_preserving_verdict, product_metric, product_metric_approx, sup_metric,
    unbounded_witness, verify_metric, verify_metric_approx, Combiner, FiniteMetricSpace,
    MetricViolation, ProductMatrix, ProductSpec,
};
pub use modulus::{FixedPointReport, GridFunction};
pub use order::{axis_vector, cone_select, Comparison, Direction, PointN};
pub use rational::{format_rational, parse_rational, Rational};
pub use sampled::{Check, SampledFunction, SubadditivityWitness};
pub use symbolic::{subspace_not_universal_witness, transcendental_embed, SymbolicAffine};
