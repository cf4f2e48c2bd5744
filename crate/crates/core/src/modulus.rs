//! Modulus of continuity on a finite rectangular lattice `{0, h, ..., T}^n`.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Combiner;
use crate::order::PointN;
use crate::rational::{format_rational, int, ratio, serde_rational, Rational};
use crate::sampled::SampledFunction;

/// A function sampled on every point of `{0, h, 2h, ..., T}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct GridFunction {
    n: usize,
    bound: Rational,
    step: Rational,
    steps: usize,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct GridEntry {
    point: PointN,
    #[serde(with = "serde_rational")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    n: usize,
    #[serde(rename = "T", with = "serde_rational")]
    bound: Rational,
    #[serde(with = "serde_rational")]
    h: Rational,
    values: Vec<GridEntry>,
}

impl TryFrom<GridJson> for GridFunction {
    type Error = Error;

    fn try_from(doc: GridJson) -> Result<Self> {
        let steps = lattice_steps(doc.n, &doc.bound, &doc.h)?;
        let total = (steps + 1).pow(doc.n as u32);
        let mut values: Vec<Option<Rational>> = vec![None; total];
        let shell = GridFunction {
            n: doc.n,
            bound: doc.bound.clone(),
            step: doc.h.clone(),
            steps,
            values: Vec::new(),
        };
        for e in doc.values {
            let idx = shell.flat_index(&e.point)?;
            if e.value.is_negative() {
                return Err(Error::Negative(format_rational(&e.value)));
            }
            if values[idx].replace(e.value).is_some() {
                return Err(Error::DuplicatePoint(e.point));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidGrid(format!("no value at {}", shell.point(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFunction { values, ..shell })
    }
}

impl From<GridFunction> for GridJson {
    fn from(g: GridFunction) -> Self {
        let values = (0..g.values.len())
            .map(|i| GridEntry {
                point: g.point(i),
                value: g.values[i].clone(),
            })
            .collect();
        GridJson {
            n: g.n,
            bound: g.bound,
            h: g.step,
            values,
        }
    }
}

fn lattice_steps(n: usize, bound: &Rational, step: &Rational) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyPoint);
    }
    if !bound.is_positive() {
        return Err(Error::NonPositive(format_rational(bound)));
    }
    if !step.is_positive() {
        return Err(Error::NonPositive(format_rational(step)));
    }
    let q = bound / step;
    if !q.is_integer() {
        return Err(Error::InvalidGrid(format!(
            "step {} does not divide bound {}",
            format_rational(step),
            format_rational(bound)
        )));
    }
    q.to_integer()
        .to_usize()
        .filter(|m| (m + 1).checked_pow(n as u32).is_some())
        .ok_or_else(|| Error::InvalidGrid("lattice too large".into()))
}

/// Result of [`GridFunction::is_fixed_point`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub holds: bool,
    #[serde(with = "serde_rational")]
    pub max_deviation: Rational,
    /// Lexicographically least lattice point attaining `max_deviation`.
    pub worst_eps: PointN,
}

/// A lattice pair violating `|F(x) - F(y)| <= F(|x - y|)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma42Violation {
    pub x: PointN,
    pub y: PointN,
}

impl GridFunction {
    pub const DEFAULT_BOUND: (i64, i64) = (2, 1);
    pub const DEFAULT_STEP: (i64, i64) = (1, 4);

    pub fn default_bound() -> Rational {
        ratio(Self::DEFAULT_BOUND.0, Self::DEFAULT_BOUND.1)
    }

    pub fn default_step() -> Rational {
        ratio(Self::DEFAULT_STEP.0, Self::DEFAULT_STEP.1)
    }

    pub fn from_fn<F>(n: usize, bound: Rational, step: Rational, mut f: F) -> Result<Self>
    where
        F: FnMut(&PointN) -> Result<Rational>,
    {
        let steps = lattice_steps(n, &bound, &step)?;
        let mut g = GridFunction {
            n,
            bound,
            step,
            steps,
            values: Vec::new(),
        };
        let total = (steps + 1).pow(n as u32);
        let mut values = Vec::with_capacity(total);
        for i in 0..total {
            let v = f(&g.point(i))?;
            if v.is_negative() {
                return Err(Error::Negative(format_rational(&v)));
            }
            values.push(v);
        }
        g.values = values;
        Ok(g)
    }

    pub fn from_combiner(n: usize, bound: Rational, step: Rational, combiner: &Combiner) -> Result<Self> {
        Self::from_fn(n, bound, step, |p| combiner.evaluate(p))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    /// Number of steps `T / h` along each axis.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, p: &PointN) -> Result<&Rational> {
        Ok(&self.values[self.flat_index(p)?])
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointN, &Rational)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.point(i), v))
    }

    pub fn to_sampled(&self) -> Result<SampledFunction> {
        SampledFunction::new(self.iter().map(|(p, v)| (p, v.clone())))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn digits(&self, mut i: usize) -> Vec<usize> {
        let base = self.steps + 1;
        let mut d = vec![0; self.n];
        for slot in d.iter_mut().rev() {
            *slot = i % base;
            i /= base;
        }
        d
    }

    fn flat(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * (self.steps + 1) + d)
    }

    fn point(&self, i: usize) -> PointN {
        let coords = self
            .digits(i)
            .into_iter()
            .map(|d| &self.step * int(d as i64))
            .collect();
        PointN::new(coords).expect("lattice points are nonnegative")
    }

    fn flat_index(&self, p: &PointN) -> Result<usize> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.dim(),
            });
        }
        let mut digits = Vec::with_capacity(self.n);
        for c in p.coords() {
            let q = c / &self.step;
            let d = q
                .is_integer()
                .then(|| q.to_integer().to_usize())
                .flatten()
                .filter(|&d| d <= self.steps)
                .ok_or_else(|| Error::OffLattice(p.clone()))?;
            digits.push(d);
        }
        Ok(self.flat(&digits))
    }

    /// `max |g(x) - g(y)|` over lattice pairs with `|x - y| <= eps`
    /// coordinatewise, by direct enumeration.
    pub fn modulus(&self, eps: &PointN) -> Result<Rational> {
        let e = self.digits(self.flat_index(eps)?);
        let mut best = Rational::zero();
        for i in 0..self.values.len() {
            let x = self.digits(i);
            for j in 0..self.values.len() {
                let y = self.digits(j);
                if x.iter().zip(&y).zip(&e).all(|((a, b), m)| a.abs_diff(*b) <= *m) {
                    let d = (&self.values[i] - &self.values[j]).abs();
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        Ok(best)
    }

    /// `eps -> modulus(g, eps)` on the whole lattice, as a grid function.
    pub fn modulus_table(&self) -> GridFunction {
        let total = self.values.len();
        // exact[d]: largest jump across pairs whose gap is exactly d
        let mut table = vec![Rational::zero(); total];
        for i in 0..total {
            let x = self.digits(i);
            for j in 0..total {
                let y = self.digits(j);
                let gap: Vec<usize> = x.iter().zip(&y).map(|(a, b)| a.abs_diff(*b)).collect();
                let d = (&self.values[i] - &self.values[j]).abs();
                let slot = &mut table[self.flat(&gap)];
                if d > *slot {
                    *slot = d;
                }
            }
        }
        let stride: Vec<usize> = (0..self.n)
            .map(|k| (self.steps + 1).pow((self.n - 1 - k) as u32))
            .collect();
        for (axis, &s) in stride.iter().enumerate() {
            for idx in 0..total {
                if self.digits(idx)[axis] > 0 {
                    let prev = table[idx - s].clone();
                    if prev > table[idx] {
                        table[idx] = prev;
                    }
                }
            }
        }
        GridFunction {
            values: table,
            ..self.clone()
        }
    }

    /// `|F(x) - F(y)| <= F(|x - y|)` on every lattice pair; the witness is the
    /// lexicographically least violating pair.
    pub fn lemma42_holds(&self) -> (bool, Option<Lemma42Violation>) {
        let total = self.values.len();
        for i in 0..total {
            let x = self.digits(i);
            for j in 0..total {
                let y = self.digits(j);
                let gap: Vec<usize> = x.iter().zip(&y).map(|(a, b)| a.abs_diff(*b)).collect();
                if (&self.values[i] - &self.values[j]).abs() > self.values[self.flat(&gap)] {
                    return (
                        false,
                        Some(Lemma42Violation {
                            x: self.point(i),
                            y: self.point(j),
                        }),
                    );
                }
            }
        }
        (true, None)
    }

    /// Whether `modulus(F, eps) = F(eps)` at every lattice point.
    pub fn is_fixed_point(&self) -> FixedPointReport {
        let table = self.modulus_table();
        let mut worst = (Rational::zero(), 0usize);
        for (i, (m, v)) in table.values.iter().zip(&self.values).enumerate() {
            let dev = (m - v).abs();
            if dev > worst.0 {
                worst = (dev, i);
            }
        }
        FixedPointReport {
            holds: worst.0.is_zero(),
            max_deviation: worst.0,
            worst_eps: self.point(worst.1),
        }
    }

    /// Whether some choice of the other coordinates makes `g` vary in
    /// coordinate `i` (1-based).
    pub fn nonconstant_wrt(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.n,
            });
        }
        let s = (self.steps + 1).pow((self.n - i) as u32);
        Ok((0..self.values.len())
            .filter(|&idx| self.digits(idx)[i - 1] > 0)
            .any(|idx| self.values[idx] != self.values[idx - s]))
    }
}
