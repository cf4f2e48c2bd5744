//! Points of the nonnegative rational orthant under the coordinatewise order.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A point with nonnegative rational coordinates.
///
/// The derived `Ord` is lexicographic and only serves as a deterministic key
/// order; the mathematical partial order is [`PointN::compare`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointN(Vec<Rational>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    LessOrEqual,
    GreaterOrEqual,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl PointN {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some(c) = coords.iter().find(|c| c.is_negative()) {
            return Err(Error::Negative(format_rational(c)));
        }
        Ok(PointN(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    /// Parses `"(1,2/3)"`, `"[1,2/3]"` or `"1,2/3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let coords = inner
            .split(',')
            .map(|c| parse_rational(c.trim_matches(|ch: char| ch.is_whitespace() || ch == '"')))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &PointN) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `self <= other` coordinatewise. Callers guarantee equal dimensions.
    pub fn leq(&self, other: &PointN) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn compare(&self, other: &PointN) -> Result<Comparison> {
        self.check_dim(other)?;
        Ok(match (self.leq(other), other.leq(self)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::LessOrEqual,
            (false, true) => Comparison::GreaterOrEqual,
            (false, false) => Comparison::Incomparable,
        })
    }

    pub fn abs_diff(&self, other: &PointN) -> Result<PointN> {
        self.check_dim(other)?;
        Ok(PointN(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b).abs())
                .collect(),
        ))
    }

    pub fn add(&self, other: &PointN) -> Result<PointN> {
        self.check_dim(other)?;
        Ok(PointN(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: &Rational) -> PointN {
        PointN(self.0.iter().map(|c| c * k).collect())
    }

    /// Coordinate `j`, 1-based.
    pub fn projection(&self, j: usize) -> Result<&Rational> {
        if j == 0 || j > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim(),
            });
        }
        Ok(&self.0[j - 1])
    }

    /// Coordinatewise `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &PointN) -> PointN {
        PointN(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a > b { a - b } else { Rational::zero() })
                .collect(),
        )
    }
}

/// The point with `t` in coordinate `j` (1-based) and zeros elsewhere.
pub fn axis_vector(j: usize, t: &Rational, n: usize) -> Result<PointN> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, dim: n });
    }
    if !t.is_positive() {
        return Err(Error::NonPositive(format_rational(t)));
    }
    let mut coords = vec![Rational::zero(); n];
    coords[j - 1] = t.clone();
    PointN::new(coords)
}

/// The members of `set` inside the lower (or upper) cone of `apex`.
pub fn cone_select<'a, I>(set: I, apex: &PointN, direction: Direction) -> Result<Vec<PointN>>
where
    I: IntoIterator<Item = &'a PointN>,
{
    let mut out = Vec::new();
    for x in set {
        apex.check_dim(x)?;
        let inside = match direction {
            Direction::Lower => x.leq(apex),
            Direction::Upper => apex.leq(x),
        };
        if inside {
            out.push(x.clone());
        }
    }
    Ok(out)
}

impl fmt::Display for PointN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for PointN {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for PointN {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        let coords = texts
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PointN::new(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> PointN {
        PointN::from_ints(c).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(p(&[0, 0]).compare(&p(&[1, 2])).unwrap(), Comparison::LessOrEqual);
        assert_eq!(p(&[1, 2]).compare(&p(&[1, 2])).unwrap(), Comparison::Equal);
        assert_eq!(p(&[1, 0]).compare(&p(&[0, 1])).unwrap(), Comparison::Incomparable);
        assert_eq!(p(&[2, 2]).compare(&p(&[1, 2])).unwrap(), Comparison::GreaterOrEqual);
        assert!(matches!(
            p(&[1]).compare(&p(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn abs_diff_examples() {
        assert_eq!(p(&[3, 1]).abs_diff(&p(&[1, 4])).unwrap(), p(&[2, 3]));
        assert_eq!(p(&[7]).abs_diff(&p(&[7])).unwrap(), p(&[0]));
        assert_eq!(p(&[0, 5]).abs_diff(&p(&[2, 0])).unwrap(), p(&[2, 5]));
    }

    #[test]
    fn axis_vector_examples() {
        let v = axis_vector(2, &ratio(1, 3), 3).unwrap();
        assert_eq!(v.coords(), &[int(0), ratio(1, 3), int(0)]);
        assert_eq!(axis_vector(1, &int(5), 1).unwrap(), p(&[5]));
        assert!(matches!(axis_vector(1, &int(0), 2), Err(Error::NonPositive(_))));
        assert!(matches!(
            axis_vector(3, &int(1), 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn cone_examples() {
        let a = [p(&[1, 1]), p(&[2, 0]), p(&[0, 3])];
        assert_eq!(cone_select(&a, &p(&[1, 1]), Direction::Lower).unwrap(), vec![p(&[1, 1])]);
        let b = [p(&[1, 1]), p(&[2, 2])];
        assert_eq!(
            cone_select(&b, &p(&[0, 0]), Direction::Upper).unwrap(),
            vec![p(&[1, 1]), p(&[2, 2])]
        );
        assert!(cone_select(&[p(&[2, 0])], &p(&[1, 1]), Direction::Lower)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(p(&[4, 7]).projection(2).unwrap(), &int(7));
        assert_eq!(p(&[0]).projection(1).unwrap(), &int(0));
        assert!(p(&[4, 7]).projection(3).is_err());
    }

    #[test]
    fn rejects_negative_and_empty() {
        assert!(PointN::from_ints(&[]).is_err());
        assert!(PointN::from_ints(&[1, -1]).is_err());
        assert_eq!(PointN::parse("(2, 1/2)").unwrap().coords(), &[int(2), ratio(1, 2)]);
    }
}
