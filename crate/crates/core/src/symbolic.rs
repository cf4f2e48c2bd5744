//! The field extension `Q + Q tau` for one fixed transcendental `tau`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, ratio, serde_rational, Rational};

/// `q + r * tau`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SymbolicAffine {
    #[serde(with = "serde_rational")]
    pub q: Rational,
    #[serde(with = "serde_rational")]
    pub r: Rational,
}

/// Certified rational bounds `TAU_LOWER < tau < TAU_UPPER`.
pub fn tau_bounds() -> (Rational, Rational) {
    (ratio(314_159, 100_000), ratio(31_416, 10_000))
}

impl SymbolicAffine {
    pub fn new(q: Rational, r: Rational) -> Self {
        SymbolicAffine { q, r }
    }

    pub fn rational(q: Rational) -> Self {
        SymbolicAffine { q, r: Rational::zero() }
    }

    pub fn tau() -> Self {
        SymbolicAffine {
            q: Rational::zero(),
            r: ratio(1, 1),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.r.is_zero()
    }

    /// Sign of the value, decided from the certified bounds on `tau`.
    pub fn signum_certified(&self) -> Result<Ordering> {
        if self.r.is_zero() {
            return Ok(self.q.cmp(&Rational::zero()));
        }
        let (lo, hi) = tau_bounds();
        let a = &self.q + &self.r * lo;
        let b = &self.q + &self.r * hi;
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        if !min.is_negative() {
            Ok(Ordering::Greater)
        } else if !max.is_positive() {
            Ok(Ordering::Less)
        } else {
            Err(Error::UndecidableComparison)
        }
    }

    pub fn cmp_certified(&self, other: &SymbolicAffine) -> Result<Ordering> {
        (self - other).signum_certified()
    }

    pub fn abs_certified(&self) -> Result<SymbolicAffine> {
        Ok(match self.signum_certified()? {
            Ordering::Less => -self,
            _ => self.clone(),
        })
    }
}

impl Add for &SymbolicAffine {
    type Output = SymbolicAffine;

    fn add(self, rhs: &SymbolicAffine) -> SymbolicAffine {
        SymbolicAffine::new(&self.q + &rhs.q, &self.r + &rhs.r)
    }
}

impl Sub for &SymbolicAffine {
    type Output = SymbolicAffine;

    fn sub(self, rhs: &SymbolicAffine) -> SymbolicAffine {
        SymbolicAffine::new(&self.q - &rhs.q, &self.r - &rhs.r)
    }
}

impl Neg for &SymbolicAffine {
    type Output = SymbolicAffine;

    fn neg(self) -> SymbolicAffine {
        SymbolicAffine::new(-&self.q, -&self.r)
    }
}

impl fmt::Display for SymbolicAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.r.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.q)),
            (true, false) => write!(f, "{}*tau", format_rational(&self.r)),
            (false, false) => write!(f, "{} + {}*tau", format_rational(&self.q), format_rational(&self.r)),
        }
    }
}

/// Maps each rational `a` to the transcendental `a + tau`; differences are
/// preserved exactly.
pub fn transcendental_embed(set: &[Rational]) -> Vec<(Rational, SymbolicAffine)> {
    set.iter()
        .map(|a| (a.clone(), SymbolicAffine::new(a.clone(), ratio(1, 1))))
        .collect()
}

/// Why the rationals cannot realize the distance `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonUniversalityRecord {
    pub distance: SymbolicAffine,
    /// `tau` coefficient of every difference of two rationals.
    #[serde(with = "serde_rational")]
    pub difference_coefficient: Rational,
    #[serde(with = "serde_rational")]
    pub required_coefficient: Rational,
    pub reason: String,
}

pub fn subspace_not_universal_witness(a: &SymbolicAffine) -> Result<NonUniversalityRecord> {
    if a.is_rational() {
        return Err(Error::RationalInput);
    }
    Ok(NonUniversalityRecord {
        distance: a.clone(),
        difference_coefficient: Rational::zero(),
        required_coefficient: a.r.clone(),
        reason: format!(
            "x - y has tau coefficient 0 for rationals x, y, but {a} has tau coefficient {}",
            format_rational(&a.r)
        ),
    })
}
