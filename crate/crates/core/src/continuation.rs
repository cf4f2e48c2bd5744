//! Continuations of sampled isotone functions to the whole orthant.
//!
//! Three constructions live here:
//!
//! * the sup-continuation `f*(y) = max{f(x) : x in A, x <= y}` (0 on an empty cone),
//! * the amenable isotone continuation, which first extends `f` along the
//!   coordinate axes and then takes the sup-continuation of that extension,
//! * the subadditive envelope `Psi(y)`, the cheapest total value of a finite
//!   multiset of domain points whose sum dominates `y`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{axis_vector, PointN};
use crate::rational::{format_rational, serde_rational, Rational};
use crate::sampled::{Check, SampledFunction};

pub fn sup_continuation(f: &SampledFunction, y: &PointN) -> Result<Rational> {
    f.check_dim(y)?;
    f.require_isotone()?;
    Ok(lower_cone_max(f, y))
}

fn lower_cone_max(f: &SampledFunction, y: &PointN) -> Rational {
    f.iter()
        .filter(|(x, _)| x.leq(y))
        .map(|(_, v)| v.clone())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Checks that `g` extends `f` on its domain and dominates the
/// sup-continuation at every probe. Fails with the first offending probe.
pub fn minimality_check<G>(f: &SampledFunction, g: G, probes: &[PointN]) -> Result<Check<PointN>>
where
    G: Fn(&PointN) -> Rational,
{
    f.require_isotone()?;
    for (a, fa) in f.iter() {
        if &g(a) != fa {
            return Err(Error::ExtensionMismatch(a.clone()));
        }
    }
    for p in probes {
        if g(p) < sup_continuation(f, p)? {
            return Ok(Check::Fails(p.clone()));
        }
    }
    Ok(Check::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecheckReport {
    pub passed: bool,
    /// Whether every subset of the domain was scanned (small domains only).
    pub exhaustive: bool,
    pub subsets_scanned: u64,
}

const EXHAUSTIVE_SUBSET_LIMIT: usize = 12;

/// Every `B ⊆ A` with `inf f(B) = 0` must have `inf pr_j(B) = 0` for all `j`.
///
/// For finite amenable `f` such a `B` always contains the origin, so the
/// condition holds; small domains are additionally scanned subset by subset.
pub fn amenable_continuation_precheck(f: &SampledFunction) -> Result<PrecheckReport> {
    f.require_isotone()?;
    if let Check::Fails(p) = f.check_amenable()? {
        return Err(Error::NotAmenable(p));
    }
    if f.len() > EXHAUSTIVE_SUBSET_LIMIT {
        return Ok(PrecheckReport {
            passed: true,
            exhaustive: false,
            subsets_scanned: 0,
        });
    }
    let entries: Vec<_> = f.iter().collect();
    let mut passed = true;
    let mut scanned = 0u64;
    for mask in 1u32..(1 << entries.len()) {
        scanned += 1;
        let subset = entries
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| e);
        let (mut min_value, mut min_proj): (Option<&Rational>, Vec<Option<&Rational>>) =
            (None, vec![None; f.dim()]);
        for (x, v) in subset {
            min_value = Some(min_value.map_or(*v, |m| m.min(*v)));
            for (slot, c) in min_proj.iter_mut().zip(x.coords()) {
                *slot = Some(slot.map_or(c, |m| m.min(c)));
            }
        }
        if min_value.is_some_and(Zero::is_zero)
            && min_proj.iter().any(|m| m.is_some_and(|m| !m.is_zero()))
        {
            passed = false;
        }
    }
    Ok(PrecheckReport {
        passed,
        exhaustive: true,
        subsets_scanned: scanned,
    })
}

/// How an [`AxisExtendedFunction`] values points on axes where the domain
/// has no positive projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroAxisRule {
    /// `t e_j -> t`.
    Identity,
    /// `t e_j -> c`.
    Constant(Rational),
}

/// A sampled function extended to axis points.
///
/// On axes inside the projection support the extension (when enabled) takes
/// the upper-cone infimum of `f` at `t e_j` for `0 < t < tau_j`. On the
/// remaining axes it follows [`ZeroAxisRule`] for every `t > 0`.
#[derive(Debug, Clone)]
pub struct AxisExtendedFunction {
    base: SampledFunction,
    axis_caps: Vec<Rational>,
    zero_axes: BTreeSet<usize>,
    zero_axis_rule: ZeroAxisRule,
    extend_support_axes: bool,
}

impl AxisExtendedFunction {
    /// The extension used by the amenable isotone continuation.
    pub fn for_amenable(base: &SampledFunction) -> Self {
        Self::build(base, ZeroAxisRule::Identity, true)
    }

    /// The extension used by the subadditive envelope. Requires `c > 0`; the
    /// constant is raised to `f(0)` when the origin carries a larger value,
    /// otherwise no isotone extension could exist.
    pub fn for_envelope(base: &SampledFunction, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::NonPositive(format_rational(c)));
        }
        let origin = PointN::origin(base.dim())?;
        let c = match base.get(&origin) {
            Some(v) if v > c => v.clone(),
            _ => c.clone(),
        };
        Ok(Self::build(base, ZeroAxisRule::Constant(c), false))
    }

    fn build(base: &SampledFunction, zero_axis_rule: ZeroAxisRule, extend_support_axes: bool) -> Self {
        let axis_caps: Vec<Rational> = (0..base.dim())
            .map(|j| {
                base.points()
                    .map(|p| p.coords()[j].clone())
                    .max()
                    .expect("nonempty domain")
            })
            .collect();
        let zero_axes = (1..=base.dim())
            .filter(|&j| axis_caps[j - 1].is_zero())
            .collect();
        AxisExtendedFunction {
            base: base.clone(),
            axis_caps,
            zero_axes,
            zero_axis_rule,
            extend_support_axes,
        }
    }

    pub fn base(&self) -> &SampledFunction {
        &self.base
    }

    /// `tau_j = max pr_j(A)` for `j = 1..=n`.
    pub fn axis_caps(&self) -> &[Rational] {
        &self.axis_caps
    }

    pub fn zero_axes(&self) -> &BTreeSet<usize> {
        &self.zero_axes
    }

    pub fn zero_axis_rule(&self) -> &ZeroAxisRule {
        &self.zero_axis_rule
    }

    /// Sorted distinct positive projections of the domain on axis `j`; the
    /// upper-cone infimum is constant between consecutive breakpoints.
    pub fn breakpoints(&self, j: usize) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .base
            .points()
            .map(|p| p.coords()[j - 1].clone())
            .filter(Signed::is_positive)
            .collect();
        set.into_iter().collect()
    }

    /// `min{f(x) : x in A, x >= t e_j}`, or `None` when no such `x` exists.
    pub fn upper_cone_inf(&self, j: usize, t: &Rational) -> Option<Rational> {
        self.base
            .iter()
            .filter(|(x, _)| &x.coords()[j - 1] >= t)
            .map(|(_, v)| v.clone())
            .min()
    }

    fn zero_axis_value(&self, t: &Rational) -> Rational {
        match &self.zero_axis_rule {
            ZeroAxisRule::Identity => t.clone(),
            ZeroAxisRule::Constant(c) => c.clone(),
        }
    }

    /// The extended function on its enlarged domain; `None` off that domain.
    pub fn value_on_extension(&self, x: &PointN) -> Option<Rational> {
        if let Some(v) = self.base.get(x) {
            return Some(v.clone());
        }
        let mut positive = x.coords().iter().enumerate().filter(|(_, c)| c.is_positive());
        let (i, t) = positive.next()?;
        if positive.next().is_some() {
            return None;
        }
        let j = i + 1;
        if self.zero_axes.contains(&j) {
            Some(self.zero_axis_value(t))
        } else if self.extend_support_axes && t < &self.axis_caps[i] {
            self.upper_cone_inf(j, t)
        } else {
            None
        }
    }

    /// Sup of the extension over its domain intersected with the lower cone
    /// of `y`. The axis parts are step functions, so the sup is read off at
    /// `min(y_j, tau_j)`.
    pub fn sup_over_lower_cone(&self, y: &PointN) -> Result<Rational> {
        self.base.check_dim(y)?;
        let mut best = lower_cone_max(&self.base, y);
        for (i, yj) in y.coords().iter().enumerate() {
            if !yj.is_positive() {
                continue;
            }
            let j = i + 1;
            let candidate = if self.zero_axes.contains(&j) {
                Some(self.zero_axis_value(yj))
            } else if self.extend_support_axes {
                let t = yj.min(&self.axis_caps[i]);
                self.upper_cone_inf(j, t)
            } else {
                None
            };
            if let Some(v) = candidate {
                if v > best {
                    best = v;
                }
            }
        }
        Ok(best)
    }
}

pub fn amenable_isotone_continuation(f: &SampledFunction, y: &PointN) -> Result<Rational> {
    f.check_dim(y)?;
    let report = amenable_continuation_precheck(f)?;
    if !report.passed {
        return Err(Error::PrecheckFailed);
    }
    AxisExtendedFunction::for_amenable(f).sup_over_lower_cone(y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverPart {
    pub point: PointN,
    pub multiplicity: u32,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// A multiset of points whose sum dominates `target`, with its total value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub target: PointN,
    pub parts: Vec<CoverPart>,
    #[serde(with = "serde_rational")]
    pub cost: Rational,
}

impl CoverCertificate {
    /// Recomputes the dominance and the cost.
    pub fn verify(&self) -> bool {
        let n = self.target.dim();
        let mut sum = vec![Rational::zero(); n];
        let mut cost = Rational::zero();
        for part in &self.parts {
            if part.point.dim() != n || part.multiplicity == 0 {
                return false;
            }
            let m = Rational::from_integer(part.multiplicity.into());
            for (s, c) in sum.iter_mut().zip(part.point.coords()) {
                *s += c * &m;
            }
            cost += &part.value * &m;
        }
        cost == self.cost && self.target.coords().iter().zip(&sum).all(|(t, s)| t <= s)
    }

    /// Parts expanded with multiplicity, in point order.
    pub fn expanded(&self) -> Vec<&PointN> {
        self.parts
            .iter()
            .flat_map(|p| std::iter::repeat_n(&p.point, p.multiplicity as usize))
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Choice {
    Use,
    Skip,
}

/// Exact minimum-cost covering over a fixed item list.
///
/// `solve(r, i)` is the cheapest multiset of items with index `>= i` whose sum
/// dominates the residual `r`; items are taken in index order and every taken
/// copy must reduce some positive residual coordinate, which bounds each
/// multiplicity by `max_j ceil(r_j / a_j)`. States are memoized on
/// `(residual, i)`. Ties go to the lexicographically least sorted multiset,
/// which is the one that takes the lower-indexed item.
struct CoverSolver<'a> {
    items: Vec<(&'a PointN, &'a Rational)>,
    memo: HashMap<(PointN, usize), Option<(Rational, Choice)>>,
}

impl<'a> CoverSolver<'a> {
    fn new(f: &'a SampledFunction) -> Self {
        CoverSolver {
            items: f.iter().filter(|(p, _)| !p.is_origin()).collect(),
            memo: HashMap::new(),
        }
    }

    fn useful(&self, r: &PointN, i: usize) -> bool {
        r.coords()
            .iter()
            .zip(self.items[i].0.coords())
            .any(|(rj, aj)| rj.is_positive() && aj.is_positive())
    }

    fn solve(&mut self, r: &PointN, i: usize) -> Option<Rational> {
        if r.is_origin() {
            return Some(Rational::zero());
        }
        if i == self.items.len() {
            return None;
        }
        let key = (r.clone(), i);
        if let Some(hit) = self.memo.get(&key) {
            return hit.as_ref().map(|(c, _)| c.clone());
        }
        let mut best: Option<(Rational, Choice)> = None;
        if self.useful(r, i) {
            let (point, value) = self.items[i];
            let rest = r.saturating_sub(point);
            if let Some(c) = self.solve(&rest, i) {
                best = Some((c + value, Choice::Use));
            }
        }
        if let Some(c) = self.solve(r, i + 1) {
            if best.as_ref().is_none_or(|(b, _)| &c < b) {
                best = Some((c, Choice::Skip));
            }
        }
        let cost = best.as_ref().map(|(c, _)| c.clone());
        self.memo.insert(key, best);
        cost
    }

    fn cover(&mut self, target: &PointN) -> Option<(Rational, Vec<CoverPart>)> {
        let cost = self.solve(target, 0)?;
        let mut parts: Vec<CoverPart> = Vec::new();
        let mut r = target.clone();
        let mut i = 0;
        while !r.is_origin() {
            let (_, choice) = self.memo[&(r.clone(), i)].clone().expect("feasible state");
            match choice {
                Choice::Skip => i += 1,
                Choice::Use => {
                    let (point, value) = self.items[i];
                    match parts.last_mut() {
                        Some(last) if &last.point == point => last.multiplicity += 1,
                        _ => parts.push(CoverPart {
                            point: point.clone(),
                            multiplicity: 1,
                            value: value.clone(),
                        }),
                    }
                    r = r.saturating_sub(point);
                }
            }
        }
        Some((cost, parts))
    }
}

/// The subadditive envelope `Psi(y)` with a cheapest cover certifying it.
///
/// Axes outside the projection support are covered by one axis point each,
/// valued by the positive constant `c`. The origin is covered by the empty
/// multiset unless it belongs to the domain, in which case a single domain
/// point is required.
pub fn subadditive_envelope(
    f: &SampledFunction,
    y: &PointN,
    c: &Rational,
) -> Result<(Rational, CoverCertificate)> {
    f.check_dim(y)?;
    if f.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let ext = AxisExtendedFunction::for_envelope(f, c)?;
    let ZeroAxisRule::Constant(axis_value) = ext.zero_axis_rule().clone() else {
        unreachable!("envelope extension uses a constant rule")
    };

    if y.is_origin() {
        let (cost, parts) = if f.contains_origin() {
            let (point, value) = f
                .iter()
                .min_by(|a, b| a.1.cmp(b.1).then_with(|| a.0.cmp(b.0)))
                .expect("nonempty");
            let part = CoverPart {
                point: point.clone(),
                multiplicity: 1,
                value: value.clone(),
            };
            (value.clone(), vec![part])
        } else {
            (Rational::zero(), Vec::new())
        };
        let cert = CoverCertificate {
            target: y.clone(),
            parts,
            cost: cost.clone(),
        };
        return Ok((cost, cert));
    }

    let mut support_part = y.coords().to_vec();
    let mut axis_parts = Vec::new();
    for &j in ext.zero_axes() {
        let t = std::mem::replace(&mut support_part[j - 1], Rational::zero());
        if t.is_positive() {
            axis_parts.push(CoverPart {
                point: axis_vector(j, &t, f.dim())?,
                multiplicity: 1,
                value: axis_value.clone(),
            });
        }
    }
    let support_target = PointN::new(support_part)?;
    let (mut cost, mut parts) = CoverSolver::new(f)
        .cover(&support_target)
        .expect("every support coordinate has a covering domain point");
    for part in axis_parts {
        cost += &part.value;
        parts.push(part);
    }
    parts.sort_by(|a, b| a.point.cmp(&b.point));
    let cert = CoverCertificate {
        target: y.clone(),
        parts,
        cost: cost.clone(),
    };
    Ok((cost, cert))
}

/// Checks that a candidate isotone subadditive minorant `candidate` of `f`
/// stays below the envelope at every probe.
pub fn envelope_maximality_check<G>(
    f: &SampledFunction,
    candidate: G,
    probes: &[PointN],
    c: &Rational,
) -> Result<Check<PointN>>
where
    G: Fn(&PointN) -> Rational,
{
    for (a, fa) in f.iter() {
        if &candidate(a) > fa {
            return Err(Error::DominanceViolation(a.clone()));
        }
    }
    for p in probes {
        f.check_dim(p)?;
    }
    for p in probes {
        for q in probes {
            if p.leq(q) && candidate(p) > candidate(q) {
                return Err(Error::CandidateInvalid(format!("not isotone at {p} <= {q}")));
            }
            let sum = p.add(q)?;
            if candidate(&sum) > candidate(p) + candidate(q) {
                return Err(Error::CandidateInvalid(format!("not subadditive at {p} + {q}")));
            }
        }
    }
    for p in probes {
        let (psi, _) = subadditive_envelope(f, p, c)?;
        if candidate(p) > psi {
            return Ok(Check::Fails(p.clone()));
        }
    }
    Ok(Check::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn f(pairs: &[(&[i64], (i64, i64))]) -> SampledFunction {
        SampledFunction::from_pairs(pairs).unwrap()
    }

    fn p(c: &[i64]) -> PointN {
        PointN::from_ints(c).unwrap()
    }

    fn q(c: &[(i64, i64)]) -> PointN {
        PointN::new(c.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    #[test]
    fn sup_continuation_examples() {
        let g = f(&[(&[1, 1], (5, 1)), (&[0, 0], (0, 1))]);
        assert_eq!(sup_continuation(&g, &p(&[2, 2])).unwrap(), int(5));
        assert_eq!(sup_continuation(&g, &p(&[1, 0])).unwrap(), int(0));
        let h = f(&[(&[0, 0], (0, 1)), (&[2, 0], (1, 1)), (&[0, 2], (3, 1))]);
        assert_eq!(sup_continuation(&h, &p(&[2, 2])).unwrap(), int(3));
        // empty lower cone
        let k = f(&[(&[1, 1], (5, 1))]);
        assert_eq!(sup_continuation(&k, &p(&[0, 3])).unwrap(), int(0));
        assert!(matches!(
            sup_continuation(&f(&[(&[0], (2, 1)), (&[1], (1, 1))]), &p(&[1])),
            Err(Error::NotIsotone { .. })
        ));
        assert!(matches!(
            sup_continuation(&g, &p(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn minimality_examples() {
        let g = f(&[(&[0], (0, 1)), (&[1], (1, 1))]);
        let probes = [p(&[3]), q(&[(1, 2)]), p(&[0])];
        let star = |x: &PointN| sup_continuation(&g, x).unwrap();
        assert!(minimality_check(&g, star, &probes).unwrap().holds());

        let ceiling = |x: &PointN| match g.get(x) {
            Some(v) => v.clone(),
            None => int(2),
        };
        assert!(minimality_check(&g, ceiling, &[p(&[3])]).unwrap().holds());

        let low = |x: &PointN| {
            let v = sup_continuation(&g, x).unwrap();
            if x == &p(&[3]) {
                v - int(1)
            } else {
                v
            }
        };
        assert_eq!(
            minimality_check(&g, low, &[p(&[2]), p(&[3])]).unwrap(),
            Check::Fails(p(&[3]))
        );

        let wrong = |_: &PointN| int(7);
        assert!(matches!(
            minimality_check(&g, wrong, &probes),
            Err(Error::ExtensionMismatch(_))
        ));
    }

    #[test]
    fn precheck_examples() {
        let g = f(&[(&[0, 0], (0, 1)), (&[1, 2], (1, 1)), (&[2, 2], (3, 1))]);
        let report = amenable_continuation_precheck(&g).unwrap();
        assert!(report.passed && report.exhaustive);
        assert_eq!(report.subsets_scanned, 7);
        assert!(matches!(
            amenable_continuation_precheck(&f(&[(&[0, 0], (0, 1)), (&[1, 0], (0, 1))])),
            Err(Error::NotAmenable(_))
        ));
        assert!(amenable_continuation_precheck(&f(&[(&[0, 0], (0, 1))])).unwrap().passed);
    }

    #[test]
    fn amenable_continuation_examples() {
        let g = f(&[(&[0, 0], (0, 1)), (&[1, 1], (4, 1))]);
        assert_eq!(
            amenable_isotone_continuation(&g, &q(&[(1, 2), (0, 1)])).unwrap(),
            int(4)
        );
        assert_eq!(amenable_isotone_continuation(&g, &p(&[0, 0])).unwrap(), int(0));
        let h = f(&[(&[0, 0], (0, 1)), (&[1, 0], (2, 1))]);
        assert_eq!(
            amenable_isotone_continuation(&h, &q(&[(0, 1), (3, 4)])).unwrap(),
            ratio(3, 4)
        );
        // beyond tau_1 the axis value saturates at the last breakpoint
        assert_eq!(amenable_isotone_continuation(&h, &p(&[5, 0])).unwrap(), int(2));
    }

    #[test]
    fn axis_extension_structure() {
        let h = f(&[(&[0, 0], (0, 1)), (&[1, 0], (2, 1)), (&[3, 0], (5, 1))]);
        let ext = AxisExtendedFunction::for_amenable(&h);
        assert_eq!(ext.axis_caps(), &[int(3), int(0)]);
        assert_eq!(ext.zero_axes().iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(ext.breakpoints(1), vec![int(1), int(3)]);
        assert_eq!(ext.value_on_extension(&q(&[(3, 2), (0, 1)])), Some(int(5)));
        assert_eq!(ext.value_on_extension(&q(&[(1, 2), (0, 1)])), Some(int(2)));
        // t = tau_1 is outside the open segment, and not a domain point here
        assert_eq!(ext.value_on_extension(&p(&[4, 0])), None);
        assert_eq!(ext.value_on_extension(&p(&[0, 9])), Some(int(9)));
        assert_eq!(ext.value_on_extension(&p(&[1, 1])), None);

        let env = AxisExtendedFunction::for_envelope(&h, &ratio(1, 2)).unwrap();
        assert_eq!(env.value_on_extension(&p(&[0, 9])), Some(ratio(1, 2)));
        assert_eq!(env.value_on_extension(&q(&[(1, 2), (0, 1)])), None);
        assert!(AxisExtendedFunction::for_envelope(&h, &int(0)).is_err());
    }

    #[test]
    fn envelope_examples() {
        let g = f(&[(&[1, 0], (2, 1)), (&[0, 1], (3, 1))]);
        let (v, cert) = subadditive_envelope(&g, &p(&[1, 1]), &int(1)).unwrap();
        assert_eq!(v, int(5));
        assert!(cert.verify());
        assert_eq!(cert.expanded(), vec![&p(&[0, 1]), &p(&[1, 0])]);

        let (v, cert) = subadditive_envelope(&g, &p(&[2, 0]), &int(1)).unwrap();
        assert_eq!(v, int(4));
        assert_eq!(cert.parts.len(), 1);
        assert_eq!(cert.parts[0].point, p(&[1, 0]));
        assert_eq!(cert.parts[0].multiplicity, 2);

        let (v, cert) = subadditive_envelope(&g, &p(&[0, 0]), &int(1)).unwrap();
        assert_eq!(v, int(0));
        assert!(cert.parts.is_empty());

        let h = f(&[(&[1], (1, 1)), (&[2], (3, 1))]);
        let (v, cert) = subadditive_envelope(&h, &p(&[2]), &int(1)).unwrap();
        assert_eq!(v, int(2));
        assert_eq!(cert.expanded(), vec![&p(&[1]), &p(&[1])]);
    }

    #[test]
    fn envelope_zero_axis_uses_constant() {
        let g = f(&[(&[0, 0], (0, 1)), (&[1, 0], (2, 1))]);
        let (v, cert) = subadditive_envelope(&g, &q(&[(3, 2), (5, 1)]), &ratio(1, 3)).unwrap();
        // two copies of (1,0) plus one axis point on the zero axis
        assert_eq!(v, int(4) + ratio(1, 3));
        assert!(cert.verify());
        assert_eq!(cert.parts.len(), 2);
        assert!(matches!(
            subadditive_envelope(&g, &p(&[1, 1]), &int(0)),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn envelope_raises_constant_to_origin_value() {
        let g = f(&[(&[0, 0], (2, 1)), (&[1, 0], (3, 1))]);
        let (v, _) = subadditive_envelope(&g, &p(&[0, 1]), &int(1)).unwrap();
        assert_eq!(v, int(2));
        let (v, _) = subadditive_envelope(&g, &p(&[0, 0]), &int(1)).unwrap();
        assert_eq!(v, int(2));
    }

    #[test]
    fn maximality_examples() {
        let g = f(&[(&[1, 0], (2, 1)), (&[0, 1], (3, 1)), (&[1, 1], (4, 1))]);
        let probes = [p(&[0, 0]), p(&[1, 1]), p(&[2, 1]), p(&[0, 3])];
        let zero = |_: &PointN| int(0);
        assert!(envelope_maximality_check(&g, zero, &probes, &int(1)).unwrap().holds());
        let scaled_sum = |x: &PointN| x.coords().iter().sum::<Rational>() * ratio(1, 2);
        assert!(envelope_maximality_check(&g, scaled_sum, &probes, &int(1))
            .unwrap()
            .holds());
        let too_big = |x: &PointN| x.coords().iter().sum::<Rational>() * int(3);
        assert!(matches!(
            envelope_maximality_check(&g, too_big, &probes, &int(1)),
            Err(Error::DominanceViolation(_))
        ));
    }
}
