//! Finite metric spaces, product metrics built from a combining function, and
//! the checks that relate the two.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::PointN;
use crate::rational::{format_rational, serde_rational, Rational};
use crate::sampled::{Check, SampledFunction, SubadditivityWitness};

/// First failure found by [`verify_metric`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricViolation {
    Asymmetric { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    ZeroDistance { i: usize, j: usize },
    /// `d(i, k) > d(i, j) + d(j, k)`.
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            MetricViolation::NonzeroDiagonal { i } => write!(f, "d({i},{i}) != 0"),
            MetricViolation::ZeroDistance { i, j } => write!(f, "d({i},{j}) = 0 for distinct points"),
            MetricViolation::Triangle { i, j, k } => {
                write!(f, "d({i},{k}) > d({i},{j}) + d({j},{k})")
            }
        }
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<()> {
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(Error::NotSquare);
    }
    Ok(())
}

/// Metric axioms on a square matrix of exact distances. Violations are
/// reported in the order symmetry, diagonal, positivity, triangle, each
/// scanned lexicographically.
pub fn verify_metric(m: &[Vec<Rational>]) -> Result<Check<MetricViolation>> {
    check_square(m)?;
    if let Some(c) = m.iter().flatten().find(|c| c.is_negative()) {
        return Err(Error::Negative(format_rational(c)));
    }
    let n = m.len();
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j] != m[j][i] {
                return Ok(Check::Fails(MetricViolation::Asymmetric { i, j }));
            }
        }
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return Ok(Check::Fails(MetricViolation::NonzeroDiagonal { i }));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j].is_zero() {
                return Ok(Check::Fails(MetricViolation::ZeroDistance { i, j }));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if m[i][k] > &m[i][j] + &m[j][k] {
                    return Ok(Check::Fails(MetricViolation::Triangle { i, j, k }));
                }
            }
        }
    }
    Ok(Check::Holds)
}

/// Floating-point variant of [`verify_metric`]; every comparison allows `tol`.
pub fn verify_metric_approx(m: &[Vec<f64>], tol: f64) -> Result<Check<MetricViolation>> {
    check_square(m)?;
    let n = m.len();
    for i in 0..n {
        for j in i + 1..n {
            if (m[i][j] - m[j][i]).abs() > tol {
                return Ok(Check::Fails(MetricViolation::Asymmetric { i, j }));
            }
        }
    }
    for i in 0..n {
        if m[i][i].abs() > tol {
            return Ok(Check::Fails(MetricViolation::NonzeroDiagonal { i }));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j] <= tol {
                return Ok(Check::Fails(MetricViolation::ZeroDistance { i, j }));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if m[i][k] > m[i][j] + m[j][k] + tol {
                    return Ok(Check::Fails(MetricViolation::Triangle { i, j, k }));
                }
            }
        }
    }
    Ok(Check::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MetricSpaceJson", into = "MetricSpaceJson")]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct MetricSpaceJson {
    labels: Vec<String>,
    #[serde(with = "serde_rational::matrix")]
    dist: Vec<Vec<Rational>>,
}

impl TryFrom<MetricSpaceJson> for FiniteMetricSpace {
    type Error = Error;

    fn try_from(doc: MetricSpaceJson) -> Result<Self> {
        FiniteMetricSpace::new(doc.labels, doc.dist)
    }
}

impl From<FiniteMetricSpace> for MetricSpaceJson {
    fn from(space: FiniteMetricSpace) -> Self {
        MetricSpaceJson {
            labels: space.labels,
            dist: space.dist,
        }
    }
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if labels.len() != dist.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: dist.len(),
            });
        }
        if let Check::Fails(v) = verify_metric(&dist)? {
            return Err(Error::NotAMetric(v));
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// The subspace `{x_0, ..., x_k}` of the real line with `|x - y|`.
    pub fn line(points: &[Rational]) -> Result<Self> {
        let labels = points.iter().map(format_rational).collect();
        let dist = points
            .iter()
            .map(|a| points.iter().map(|b| (a - b).abs()).collect())
            .collect();
        Self::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    /// Realized distances, sorted and deduplicated.
    pub fn distance_set(&self) -> Vec<Rational> {
        let mut d: Vec<Rational> = self.dist.iter().flatten().cloned().collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// How coordinate distances are merged into one product distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combiner {
    Sampled(SampledFunction),
    Sum,
    Max,
    /// Euclidean combination; irrational in general, evaluated in `f64` only.
    SqrtSumSq,
    /// `min(cap, sum)`.
    CappedSum(Rational),
    /// `sum of squares`; not metric preserving.
    SquareSum,
}

impl Combiner {
    /// Parses `SUM`, `MAX`, `SQRT_SUM_SQ`, `SQUARE_SUM` and `CAPPED_SUM`
    /// (cap 1 unless given).
    pub fn named(name: &str, cap: Option<Rational>) -> Result<Self> {
        Ok(match name.to_ascii_uppercase().replace('-', "_").as_str() {
            "SUM" => Combiner::Sum,
            "MAX" => Combiner::Max,
            "SQRT_SUM_SQ" => Combiner::SqrtSumSq,
            "SQUARE_SUM" => Combiner::SquareSum,
            "CAPPED_SUM" => Combiner::CappedSum(cap.unwrap_or_else(Rational::one)),
            other => return Err(Error::Parse(format!("unknown combiner {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Combiner::Sampled(_) => "SAMPLED",
            Combiner::Sum => "SUM",
            Combiner::Max => "MAX",
            Combiner::SqrtSumSq => "SQRT_SUM_SQ",
            Combiner::CappedSum(_) => "CAPPED_SUM",
            Combiner::SquareSum => "SQUARE_SUM",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Combiner::SqrtSumSq)
    }

    pub fn evaluate(&self, t: &PointN) -> Result<Rational> {
        let c = t.coords();
        Ok(match self {
            Combiner::Sampled(f) => f
                .get(t)
                .cloned()
                .ok_or_else(|| Error::CombinerDomainGap(t.clone()))?,
            Combiner::Sum => c.iter().sum(),
            Combiner::Max => c.iter().max().cloned().unwrap_or_else(Rational::zero),
            Combiner::SqrtSumSq => return Err(Error::ApproximateCombiner),
            Combiner::CappedSum(cap) => c.iter().sum::<Rational>().min(cap.clone()),
            Combiner::SquareSum => c.iter().map(|x| x * x).sum(),
        })
    }

    pub fn evaluate_f64(&self, t: &PointN) -> Result<f64> {
        if let Combiner::SqrtSumSq = self {
            let s: f64 = t
                .coords()
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN).powi(2))
                .sum();
            return Ok(s.sqrt());
        }
        Ok(self.evaluate(t)?.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub factors: Vec<FiniteMetricSpace>,
    pub combiner: Combiner,
}

/// Product point tuples in lexicographic order of factor indices.
pub fn product_points(factors: &[FiniteMetricSpace]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for factor in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..factor.len()).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Coordinate distances between two product points.
pub fn distance_tuple(factors: &[FiniteMetricSpace], p: &[usize], q: &[usize]) -> PointN {
    let coords = factors
        .iter()
        .zip(p.iter().zip(q))
        .map(|(f, (&a, &b))| f.dist(a, b).clone())
        .collect();
    PointN::new(coords).expect("distances are nonnegative")
}

/// A candidate distance on the product point set; not necessarily a metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductMatrix {
    pub points: Vec<Vec<usize>>,
    #[serde(with = "serde_rational::matrix")]
    pub dist: Vec<Vec<Rational>>,
}

fn require_factors(factors: &[FiniteMetricSpace]) -> Result<()> {
    if factors.is_empty() {
        return Err(Error::EmptyDomain);
    }
    Ok(())
}

pub fn product_metric(spec: &ProductSpec) -> Result<ProductMatrix> {
    require_factors(&spec.factors)?;
    if let Combiner::Sampled(f) = &spec.combiner {
        if f.dim() != spec.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.factors.len(),
                found: f.dim(),
            });
        }
    }
    let points = product_points(&spec.factors);
    let mut cache: BTreeMap<PointN, Rational> = BTreeMap::new();
    let mut dist = Vec::with_capacity(points.len());
    for p in &points {
        let mut row = Vec::with_capacity(points.len());
        for q in &points {
            let t = distance_tuple(&spec.factors, p, q);
            let v = match cache.get(&t) {
                Some(v) => v.clone(),
                None => {
                    let v = spec.combiner.evaluate(&t)?;
                    cache.insert(t, v.clone());
                    v
                }
            };
            row.push(v);
        }
        dist.push(row);
    }
    Ok(ProductMatrix { points, dist })
}

pub fn product_metric_approx(spec: &ProductSpec) -> Result<Vec<Vec<f64>>> {
    require_factors(&spec.factors)?;
    let points = product_points(&spec.factors);
    points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| spec.combiner.evaluate_f64(&distance_tuple(&spec.factors, p, q)))
                .collect()
        })
        .collect()
}

/// The max-of-coordinates product metric.
pub fn sup_metric(factors: &[FiniteMetricSpace]) -> Result<ProductMatrix> {
    product_metric(&ProductSpec {
        factors: factors.to_vec(),
        combiner: Combiner::Max,
    })
}

/// Two product pairs with comparable distance tuples whose distances are
/// ordered the other way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncreasingWitness {
    pub smaller_pair: (usize, usize),
    pub larger_pair: (usize, usize),
    pub smaller_tuple: PointN,
    pub larger_tuple: PointN,
}

struct TupleGroup {
    tuple: PointN,
    min: (Rational, (usize, usize)),
    max: (Rational, (usize, usize)),
}

fn group_by_tuple(
    d: &ProductMatrix,
    factors: &[FiniteMetricSpace],
) -> Result<Vec<TupleGroup>> {
    let n = d.points.len();
    check_square(&d.dist)?;
    if d.dist.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.dist.len(),
        });
    }
    let mut groups: BTreeMap<PointN, TupleGroup> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let t = distance_tuple(factors, &d.points[a], &d.points[b]);
            let v = &d.dist[a][b];
            let g = groups.entry(t.clone()).or_insert_with(|| TupleGroup {
                tuple: t,
                min: (v.clone(), (a, b)),
                max: (v.clone(), (a, b)),
            });
            if v < &g.min.0 {
                g.min = (v.clone(), (a, b));
            }
            if v > &g.max.0 {
                g.max = (v.clone(), (a, b));
            }
        }
    }
    Ok(groups.into_values().collect())
}

/// `d(p, q) <= d(p', q')` whenever the distance tuple of `(p, q)` is below
/// that of `(p', q')`.
pub fn is_distance_increasing(
    d: &ProductMatrix,
    factors: &[FiniteMetricSpace],
) -> Result<Check<IncreasingWitness>> {
    let groups = group_by_tuple(d, factors)?;
    for lo in &groups {
        for hi in &groups {
            if lo.tuple.leq(&hi.tuple) && lo.max.0 > hi.min.0 {
                return Ok(Check::Fails(IncreasingWitness {
                    smaller_pair: lo.max.1,
                    larger_pair: hi.min.1,
                    smaller_tuple: lo.tuple.clone(),
                    larger_tuple: hi.tuple.clone(),
                }));
            }
        }
    }
    Ok(Check::Holds)
}

/// Reads off the combining function on `D_1 x ... x D_n` from a product
/// distance, failing when one distance tuple carries two distances.
pub fn extract_product_function(
    d: &ProductMatrix,
    factors: &[FiniteMetricSpace],
) -> Result<SampledFunction> {
    let groups = group_by_tuple(d, factors)?;
    for g in &groups {
        if g.min.0 != g.max.0 {
            return Err(Error::NotWellDefined {
                first: g.min.1,
                second: g.max.1,
            });
        }
    }
    SampledFunction::new(groups.into_iter().map(|g| (g.tuple, g.min.0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservingReport {
    pub isotone: bool,
    pub amenable: Check<PointN>,
    pub subadditive: Check<SubadditivityWitness>,
}

impl PreservingReport {
    pub fn holds(&self) -> bool {
        self.isotone && self.amenable.holds() && self.subadditive.holds()
    }
}

/// An isotone sampled function is metric preserving on its domain exactly
/// when it is amenable and subadditive.
pub fn metric_preserving_verdict(f: &SampledFunction) -> Result<PreservingReport> {
    f.require_isotone()?;
    let amenable = f.check_amenable()?;
    let subadditive = f.check_subadditive()?;
    Ok(PreservingReport {
        isotone: true,
        amenable,
        subadditive,
    })
}

/// Factors on which a sampled combiner fails to produce a metric.
#[derive(Debug, Clone)]
pub struct LineSpaceFailure {
    pub factors: Vec<FiniteMetricSpace>,
    pub matrix: ProductMatrix,
    pub violation: MetricViolation,
}

/// Searches products of line subspaces `{0, u_j, u_j + v_j}` for pairs
/// `u, v` of domain points (including `v = 0`, which yields two-point
/// factors) on which `f` fails the metric axioms. Only factor collections
/// whose distance tuples all lie in the domain are tried.
pub fn find_line_space_failure(f: &SampledFunction) -> Result<Option<LineSpaceFailure>> {
    let origin = PointN::origin(f.dim())?;
    let mut points: Vec<&PointN> = f.points().collect();
    if !f.contains_origin() {
        points.insert(0, &origin);
    }
    for u in &points {
        for v in &points {
            let factors = u
                .coords()
                .iter()
                .zip(v.coords())
                .map(|(a, b)| {
                    let mut line = vec![Rational::zero(), a.clone(), a + b];
                    line.dedup();
                    FiniteMetricSpace::line(&line)
                })
                .collect::<Result<Vec<_>>>()?;
            let spec = ProductSpec {
                factors,
                combiner: Combiner::Sampled(f.clone()),
            };
            let matrix = match product_metric(&spec) {
                Ok(m) => m,
                Err(Error::CombinerDomainGap(_)) => continue,
                Err(e) => return Err(e),
            };
            if let Check::Fails(violation) = verify_metric(&matrix.dist)? {
                return Ok(Some(LineSpaceFailure {
                    factors: spec.factors,
                    matrix,
                    violation,
                }));
            }
        }
    }
    Ok(None)
}

/// The ultrametric `max(x, y)` for `x != y` on `[0, 1)`.
pub fn ultrametric_rho(x: &Rational, y: &Rational) -> Rational {
    if x == y {
        Rational::zero()
    } else {
        x.max(y).clone()
    }
}

/// `t / (1 - t)` on `[0, 1)`: continuous, strictly increasing, zero at 0 and
/// unbounded as `t -> 1`.
pub fn blowup_phi(t: &Rational) -> Result<Rational> {
    if t.is_negative() || t >= &Rational::one() {
        return Err(Error::OutOfRange(format_rational(t)));
    }
    Ok(t / (Rational::one() - t))
}

/// Points `x != y` of `[0, 1)` with `phi(rho(x, y)) > bound`, showing that
/// `phi o rho` is unbounded although `rho <= 1`.
pub fn unbounded_witness(bound: &Rational) -> Result<(Rational, Rational)> {
    if !bound.is_positive() {
        return Err(Error::NonPositive(format_rational(bound)));
    }
    let one = Rational::one();
    let two = &one + &one;
    // phi((2M + 1) / (2M + 2)) = 2M + 1
    let t = (&two * bound + &one) / (&two * bound + &two);
    Ok((Rational::zero(), t))
}
