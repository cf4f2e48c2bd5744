//! Base-3 arithmetic for the Cantor set `C` and its dilation union
//! `C^e = union of 3^n C`, distance decompositions, and three-point searches.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, pow3, ratio, serde_rational, triadic_exponent, Rational};

/// An eventually periodic base-3 expansion
/// `integer_digits . preperiod (period)*`, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Base3Expansion {
    pub integer_digits: Vec<u8>,
    pub preperiod: Vec<u8>,
    pub period: Vec<u8>,
}

impl Base3Expansion {
    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> + '_ {
        self.integer_digits
            .iter()
            .chain(&self.preperiod)
            .chain(&self.period)
            .copied()
    }

    pub fn uses_only_0_2(&self) -> bool {
        self.digits().all(|d| d != 1)
    }

    pub fn to_rational(&self) -> Rational {
        let three = BigInt::from(3);
        let int_part = self
            .integer_digits
            .iter()
            .fold(BigInt::zero(), |acc, &d| acc * &three + d);
        let pre = self
            .preperiod
            .iter()
            .fold(BigInt::zero(), |acc, &d| acc * &three + d);
        let pre_scale = pow3(self.preperiod.len() as u32);
        let mut value = Rational::from_integer(int_part) + Rational::new(pre, pre_scale.clone());
        if !self.period.is_empty() {
            let block = self
                .period
                .iter()
                .fold(BigInt::zero(), |acc, &d| acc * &three + d);
            let denom = (pow3(self.period.len() as u32) - 1u32) * pre_scale;
            value += Rational::new(block, denom);
        }
        value
    }

    /// The other expansion of a nonzero terminating value: the last nonzero
    /// digit is lowered by one and followed by an infinite tail of 2s.
    pub fn alternate(&self) -> Option<Base3Expansion> {
        if !self.is_terminating() {
            return None;
        }
        let mut all: Vec<u8> = self.integer_digits.iter().chain(&self.preperiod).copied().collect();
        let last = all.iter().rposition(|&d| d != 0)?;
        all[last] -= 1;
        all.truncate(last + 1);
        let split = self.integer_digits.len();
        let (integer_digits, preperiod) = if last < split {
            let mut ints = all;
            ints.resize(split, 2);
            (ints, Vec::new())
        } else {
            let frac = all.split_off(split);
            (all, frac)
        };
        let lead = integer_digits.iter().take_while(|&&d| d == 0).count();
        let integer_digits = integer_digits[lead..].to_vec();
        Some(Base3Expansion {
            integer_digits,
            preperiod,
            period: vec![2],
        })
    }
}

impl fmt::Display for Base3Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[u8]| v.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        if self.integer_digits.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", s(&self.integer_digits))?;
        }
        if !self.preperiod.is_empty() || !self.period.is_empty() {
            write!(f, ".{}", s(&self.preperiod))?;
            if !self.period.is_empty() {
                write!(f, "({})", s(&self.period))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Base3Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact expansion by long division. Integer digits omit leading zeros, so
/// values below 1 have no integer digits.
pub fn to_base3(t: &Rational) -> Result<Base3Expansion> {
    if t.is_negative() {
        return Err(Error::Negative(format_rational(t)));
    }
    let three = BigInt::from(3);
    let mut int_part = t.floor().to_integer();
    let mut integer_digits = Vec::new();
    while !int_part.is_zero() {
        let (q, r) = int_part.div_rem(&three);
        integer_digits.push(r.to_u8().expect("digit"));
        int_part = q;
    }
    integer_digits.reverse();

    let denom = t.denom().clone();
    let mut rem = t.numer().mod_floor(&denom);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut frac = Vec::new();
    while !rem.is_zero() {
        if let Some(&start) = seen.get(&rem) {
            let period = frac.split_off(start);
            return Ok(Base3Expansion {
                integer_digits,
                preperiod: frac,
                period,
            });
        }
        seen.insert(rem.clone(), frac.len());
        let (q, r) = (rem * &three).div_rem(&denom);
        frac.push(q.to_u8().expect("digit"));
        rem = r;
    }
    Ok(Base3Expansion {
        integer_digits,
        preperiod: frac,
        period: Vec::new(),
    })
}

/// Whether some base-3 expansion of `t` uses only the digits 0 and 2.
pub fn in_ce(t: &Rational) -> bool {
    let Ok(e) = to_base3(t) else {
        return false;
    };
    e.uses_only_0_2() || e.alternate().is_some_and(|a| a.uses_only_0_2())
}

pub fn in_cantor(t: &Rational) -> bool {
    !t.is_negative() && t <= &Rational::one() && in_ce(t)
}

fn fractional_digits(t: &Rational, k: u32) -> Vec<u8> {
    let mut n = (t * Rational::from_integer(pow3(k))).to_integer();
    let three = BigInt::from(3);
    let mut d = vec![0u8; k as usize];
    for slot in d.iter_mut().rev() {
        let (q, r) = n.div_rem(&three);
        *slot = r.to_u8().expect("digit");
        n = q;
    }
    d
}

struct Decomposer {
    t: Vec<u8>,
    failed: HashSet<(usize, u8, bool, bool)>,
    x: Vec<u8>,
    y: Vec<u8>,
}

impl Decomposer {
    fn allowed(d: u8, placed: bool) -> bool {
        d != 1 || !placed
    }

    /// Digits `1..=pos` remain, least significant first.
    fn solve(&mut self, pos: usize, carry: u8, fx: bool, fy: bool) -> bool {
        if pos == 0 {
            return carry == 0 || !fx;
        }
        let key = (pos, carry, fx, fy);
        if self.failed.contains(&key) {
            return false;
        }
        let d = self.t[pos - 1];
        let mut options: Vec<(u8, u8, u8)> = [0u8, 2, 1]
            .iter()
            .map(|&yd| {
                let s = d + yd + carry;
                (yd, s % 3, s / 3)
            })
            .filter(|&(yd, xd, _)| Self::allowed(xd, fx) && Self::allowed(yd, fy))
            .collect();
        options.sort_by_key(|&(yd, xd, _)| (yd == 1 || xd == 1, yd == 1));
        for (yd, xd, c) in options {
            self.x[pos - 1] = xd;
            self.y[pos - 1] = yd;
            if self.solve(pos - 1, c, fx || xd != 0, fy || yd != 0) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

fn digits_value(digits: &[u8]) -> Rational {
    let three = BigInt::from(3);
    let n = digits.iter().fold(BigInt::zero(), |acc, &d| acc * &three + d);
    Rational::new(n, pow3(digits.len() as u32))
}

/// `(x, y)` with `x, y` in `C` and `x - y = t`, for triadic `t` in `[0, 1]`.
pub fn cantor_decompose(t: &Rational) -> Result<(Rational, Rational)> {
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::OutOfRange(format_rational(t)));
    }
    let k = triadic_exponent(t).ok_or_else(|| Error::NonTriadicDenominator(format_rational(t)))?;
    if t.is_one() {
        return Ok((Rational::one(), Rational::zero()));
    }
    let digits = fractional_digits(t, k);
    let len = digits.len();
    let mut dec = Decomposer {
        t: digits,
        failed: HashSet::new(),
        x: vec![0; len],
        y: vec![0; len],
    };
    if !dec.solve(len, 0, false, false) {
        unreachable!("every triadic t in [0,1] is a difference of two points of C");
    }
    let y = digits_value(&dec.y);
    let x = &y + t;
    debug_assert!(x == digits_value(&dec.x) || (x.is_one() && dec.x.iter().all(|&d| d == 0)));
    Ok((x, y))
}

/// `(x, y)` in `C^e` with `|x - y| = t`, for triadic `t >= 0`.
pub fn ce_distance_witness(t: &Rational) -> Result<(Rational, Rational)> {
    if t.is_negative() {
        return Err(Error::OutOfRange(format_rational(t)));
    }
    triadic_exponent(t).ok_or_else(|| Error::NonTriadicDenominator(format_rational(t)))?;
    let one = Rational::one();
    let mut scale = Rational::one();
    while t / &scale > one {
        scale *= int(3);
    }
    let (x, y) = cantor_decompose(&(t / &scale))?;
    Ok((x * &scale, y * &scale))
}

/// First triple of `X` (in ascending lexicographic order) with
/// `|x1 - x2| = a`, `|x2 - x3| = b` and `|x1 - x3| = a + b`.
pub fn three_point_search(
    set: &[Rational],
    a: &Rational,
    b: &Rational,
) -> Option<(Rational, Rational, Rational)> {
    let xs: Vec<&Rational> = set.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let ab = a + b;
    for x1 in &xs {
        for x2 in &xs {
            if &(*x1 - *x2).abs() != a {
                continue;
            }
            for x3 in &xs {
                if &(*x2 - *x3).abs() == b && (*x1 - *x3).abs() == ab {
                    return Some(((*x1).clone(), (*x2).clone(), (*x3).clone()));
                }
            }
        }
    }
    None
}

/// Left endpoints, scaled by `3^k`, of the `2^k` level-`k` intervals of `C`.
fn level_intervals(k: u32) -> Vec<u64> {
    let mut lefts = vec![0u64];
    for _ in 0..k {
        lefts = lefts.into_iter().flat_map(|p| [3 * p, 3 * p + 2]).collect();
    }
    lefts
}

pub const MAX_LEVEL: u32 = 20;

fn check_level(k: u32) -> Result<()> {
    if k == 0 || k > MAX_LEVEL {
        return Err(Error::OutOfRange(format!("level {k} (expected 1..={MAX_LEVEL})")));
    }
    Ok(())
}

/// The level-`k` truncation of `C^e` inside `[0, 3]`: three times the
/// endpoints of the level-`k` intervals of `C`, ascending.
pub fn ce_level_set(k: u32) -> Result<Vec<Rational>> {
    check_level(k)?;
    let scale = 3u64.pow(k - 1);
    let mut out: Vec<Rational> = level_intervals(k)
        .into_iter()
        .flat_map(|p| [p, p + 1])
        .map(|e| ratio(e as i64, scale as i64))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZCandidate {
    #[serde(with = "serde_rational")]
    pub z: Rational,
    pub in_unit_interval: bool,
    pub in_cantor: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Combination {
    #[serde(with = "serde_rational")]
    pub x_star: Rational,
    #[serde(with = "serde_rational")]
    pub y_star: Rational,
    /// Level-`k` interval pairs converging to this combination.
    pub pair_count: usize,
    #[serde(with = "serde_rational::vec")]
    pub z_candidates: Vec<Rational>,
}

/// Mechanical evidence that no `x, y, z` in `C` satisfy `|x - y| = 1/3`
/// and `|x - z| = 1/6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CeTripleReport {
    pub level: u32,
    pub intervals: usize,
    pub qualifying_pairs: usize,
    pub unmatched_pairs: usize,
    pub combinations: Vec<Combination>,
    pub z_candidates: Vec<ZCandidate>,
    pub gap_holds: bool,
    pub holds: bool,
}

/// The six limit pairs `(x*, y*)` of points of `C` at distance `1/3`.
pub fn ce_limit_combinations() -> [(Rational, Rational); 6] {
    [
        (int(0), ratio(1, 3)),
        (ratio(1, 3), ratio(2, 3)),
        (ratio(2, 3), int(1)),
        (ratio(1, 3), int(0)),
        (ratio(2, 3), ratio(1, 3)),
        (int(1), ratio(2, 3)),
    ]
}

pub fn ce_triple_refutation(level: u32) -> Result<CeTripleReport> {
    check_level(level)?;
    let scale = 3i64.pow(level);
    let third = scale / 3;
    let lefts: Vec<i64> = level_intervals(level).into_iter().map(|p| p as i64).collect();
    let index: HashSet<i64> = lefts.iter().copied().collect();

    let combos = ce_limit_combinations();
    let scaled: Vec<(i64, i64)> = combos
        .iter()
        .map(|(x, y)| {
            let s = Rational::from_integer(BigInt::from(scale));
            let xi = (x * &s).to_integer().to_i64().expect("small");
            let yi = (y * &s).to_integer().to_i64().expect("small");
            (xi, yi)
        })
        .collect();
    let mut counts = vec![0usize; combos.len()];
    let mut qualifying = 0;
    let mut unmatched = 0;
    for &p in &lefts {
        for q in [p - third - 1, p - third, p - third + 1, p + third - 1, p + third, p + third + 1] {
            if !index.contains(&q) {
                continue;
            }
            qualifying += 1;
            match scaled
                .iter()
                .position(|&(xi, yi)| (p - xi).abs() <= 1 && (q - yi).abs() <= 1)
            {
                Some(c) => counts[c] += 1,
                None => unmatched += 1,
            }
        }
    }

    let sixth = ratio(1, 6);
    let combinations: Vec<Combination> = combos
        .iter()
        .zip(&counts)
        .map(|((x, y), &pair_count)| Combination {
            x_star: x.clone(),
            y_star: y.clone(),
            pair_count,
            z_candidates: vec![x - &sixth, x + &sixth],
        })
        .collect();
    let zs: BTreeSet<Rational> = combinations
        .iter()
        .flat_map(|c| c.z_candidates.iter().cloned())
        .collect();
    let z_candidates: Vec<ZCandidate> = zs
        .into_iter()
        .map(|z| ZCandidate {
            in_unit_interval: !z.is_negative() && z <= Rational::one(),
            in_cantor: in_cantor(&z),
            z,
        })
        .collect();
    let gap_holds = lefts.iter().all(|&p| p < third || p >= 2 * third);
    let holds = unmatched == 0
        && counts.iter().all(|&c| c > 0)
        && z_candidates.iter().all(|z| !z.in_cantor)
        && gap_holds;
    Ok(CeTripleReport {
        level,
        intervals: lefts.len(),
        qualifying_pairs: qualifying,
        unmatched_pairs: unmatched,
        combinations,
        z_candidates,
        gap_holds,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base3_examples() {
        let e = to_base3(&ratio(1, 3)).unwrap();
        assert_eq!((e.integer_digits.clone(), e.preperiod.clone(), e.period.clone()), (vec![], vec![1], vec![]));
        let e = to_base3(&ratio(1, 2)).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![], vec![1]));
        let e = to_base3(&int(4)).unwrap();
        assert_eq!((e.integer_digits.clone(), e.preperiod.len()), (vec![1, 1], 0));
        assert_eq!(to_base3(&ratio(7, 12)).unwrap().to_rational(), ratio(7, 12));
        assert_eq!(to_base3(&int(0)).unwrap().to_string(), "0");
        assert_eq!(to_base3(&ratio(1, 2)).unwrap().to_string(), "0.(1)");
    }

    #[test]
    fn alternate_expansions() {
        let a = to_base3(&ratio(1, 3)).unwrap().alternate().unwrap();
        assert_eq!(a.to_string(), "0.0(2)");
        assert_eq!(a.to_rational(), ratio(1, 3));
        let a = to_base3(&int(3)).unwrap().alternate().unwrap();
        assert_eq!(a.to_string(), "2.(2)");
        assert_eq!(a.to_rational(), int(3));
        assert!(to_base3(&int(0)).unwrap().alternate().is_none());
        assert!(to_base3(&ratio(1, 2)).unwrap().alternate().is_none());
    }

    #[test]
    fn membership_examples() {
        assert!(in_cantor(&ratio(1, 3)));
        assert!(!in_cantor(&ratio(1, 2)));
        assert!(in_cantor(&int(1)));
        assert!(in_ce(&int(2)));
        assert!(in_ce(&ratio(1, 3)));
        assert!(!in_ce(&ratio(1, 6)));
        assert!(in_ce(&int(9)));
        assert!(!in_cantor(&int(2)));
        assert!(in_cantor(&ratio(1, 4)));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(cantor_decompose(&int(0)).unwrap(), (int(0), int(0)));
        assert_eq!(cantor_decompose(&ratio(1, 3)).unwrap(), (int(1), ratio(2, 3)));
        assert_eq!(cantor_decompose(&int(1)).unwrap(), (int(1), int(0)));
        assert!(matches!(cantor_decompose(&int(2)), Err(Error::OutOfRange(_))));
        assert!(matches!(
            cantor_decompose(&ratio(1, 2)),
            Err(Error::NonTriadicDenominator(_))
        ));
    }

    #[test]
    fn ce_witness_examples() {
        for t in [ratio(5, 3), int(0), int(9), ratio(7, 27), int(100)] {
            let (x, y) = ce_distance_witness(&t).unwrap();
            assert!(in_ce(&x) && in_ce(&y));
            assert_eq!((x - y).abs(), t);
        }
        assert!(ce_distance_witness(&ratio(1, 2)).is_err());
    }

    #[test]
    fn search_examples() {
        let (a, b) = (ratio(1, 3), ratio(1, 6));
        let line = [int(0), a.clone(), &a + &b];
        assert_eq!(three_point_search(&line, &a, &b), Some((int(0), a.clone(), &a + &b)));
        let set = [int(0), int(1), int(2)];
        assert_eq!(three_point_search(&set, &int(1), &int(1)), Some((int(0), int(1), int(2))));
        let level = ce_level_set(8).unwrap();
        assert_eq!(level.len(), 512);
        assert!(level.iter().all(|t| in_ce(t) && t <= &int(3)));
        assert_eq!(three_point_search(&level, &a, &b), None);
    }

    #[test]
    fn refutation_report() {
        let r = ce_triple_refutation(10).unwrap();
        assert!(r.holds);
        assert_eq!(r.unmatched_pairs, 0);
        assert_eq!(r.combinations.len(), 6);
        assert!(r.combinations.iter().all(|c| c.pair_count > 0));
        let zs: Vec<_> = r.z_candidates.iter().map(|z| z.z.clone()).collect();
        assert_eq!(zs, vec![ratio(-1, 6), ratio(1, 6), ratio(1, 2), ratio(5, 6), ratio(7, 6)]);
        assert_eq!(r.combinations[0].z_candidates, vec![ratio(-1, 6), ratio(1, 6)]);
        assert!(ce_triple_refutation(0).is_err());
    }
}
