//! Finite partial functions `A -> Q+` on the orthant and their order properties.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::continuation::{subadditive_envelope, CoverCertificate};
use crate::error::{Error, Result};
use crate::order::PointN;
use crate::rational::{format_rational, parse_rational, serde_rational, Rational};

/// Outcome of a decision procedure: either the property holds, or it fails
/// with a witness explaining why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Check<W> {
    Holds,
    Fails(W),
}

impl<W> Check<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Holds => None,
            Check::Fails(w) => Some(w),
        }
    }
}

/// A cover `x <= sum(parts)` whose total value undercuts `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubadditivityWitness {
    pub target: PointN,
    #[serde(with = "serde_rational")]
    pub target_value: Rational,
    pub cover: CoverCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledFunction {
    dim: usize,
    entries: BTreeMap<PointN, Rational>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    point: PointN,
    #[serde(with = "serde_rational")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct SampledJson {
    dim: usize,
    entries: Vec<EntryJson>,
}

impl SampledFunction {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PointN, Rational)>,
    {
        let mut map = BTreeMap::new();
        let mut dim = None;
        for (point, value) in entries {
            let d = *dim.get_or_insert(point.dim());
            if point.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: point.dim(),
                });
            }
            if value.is_negative() {
                return Err(Error::Negative(format_rational(&value)));
            }
            if map.contains_key(&point) {
                return Err(Error::DuplicatePoint(point));
            }
            map.insert(point, value);
        }
        let dim = dim.ok_or(Error::EmptyDomain)?;
        Ok(SampledFunction { dim, entries: map })
    }

    /// Convenience constructor from integer coordinates and `(p, q)` values.
    pub fn from_pairs(pairs: &[(&[i64], (i64, i64))]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|(c, (p, q))| Ok((PointN::from_ints(c)?, crate::rational::ratio(*p, *q))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: &PointN) -> Option<&Rational> {
        self.entries.get(x)
    }

    /// Entries in lexicographic point order.
    pub fn iter(&self) -> impl Iterator<Item = (&PointN, &Rational)> {
        self.entries.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = &PointN> {
        self.entries.keys()
    }

    pub fn contains_origin(&self) -> bool {
        self.entries.keys().any(PointN::is_origin)
    }

    pub(crate) fn check_dim(&self, y: &PointN) -> Result<()> {
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: y.dim(),
            });
        }
        Ok(())
    }

    /// Restriction to the points accepted by `keep`; `None` if nothing survives.
    pub fn restrict<F: Fn(&PointN) -> bool>(&self, keep: F) -> Option<SampledFunction> {
        let entries: BTreeMap<_, _> = self
            .entries
            .iter()
            .filter(|(p, _)| keep(p))
            .map(|(p, v)| (p.clone(), v.clone()))
            .collect();
        if entries.is_empty() {
            return None;
        }
        Some(SampledFunction {
            dim: self.dim,
            entries,
        })
    }

    /// First pair `x <= y` (lexicographic in `(x, y)`) with `f(x) > f(y)`.
    pub fn check_isotone(&self) -> Check<(PointN, PointN)> {
        for (x, fx) in &self.entries {
            for (y, fy) in &self.entries {
                if x != y && x.leq(y) && fx > fy {
                    return Check::Fails((x.clone(), y.clone()));
                }
            }
        }
        Check::Holds
    }

    pub fn is_isotone(&self) -> bool {
        self.check_isotone().holds()
    }

    pub(crate) fn require_isotone(&self) -> Result<()> {
        match self.check_isotone() {
            Check::Holds => Ok(()),
            Check::Fails((lower, upper)) => Err(Error::NotIsotone { lower, upper }),
        }
    }

    /// `f(0) = 0` and `f > 0` elsewhere; the witness is the offending point.
    pub fn check_amenable(&self) -> Result<Check<PointN>> {
        let origin = PointN::origin(self.dim)?;
        let at_origin = self.entries.get(&origin).ok_or(Error::MissingOrigin)?;
        if !at_origin.is_zero() {
            return Ok(Check::Fails(origin));
        }
        Ok(self
            .entries
            .iter()
            .find(|(p, v)| !p.is_origin() && v.is_zero())
            .map_or(Check::Holds, |(p, _)| Check::Fails(p.clone())))
    }

    pub fn is_amenable(&self) -> Result<bool> {
        Ok(self.check_amenable()?.holds())
    }

    /// Isotone subadditivity on the domain, decided by comparing `f` with its
    /// subadditive envelope on every nonzero domain point. The witness is the
    /// lexicographically least undercut point together with its cheapest cover.
    pub fn check_subadditive(&self) -> Result<Check<SubadditivityWitness>> {
        self.require_isotone()?;
        // For isotone f any cover of the origin costs at least f(0), so the
        // origin never witnesses a failure.
        for (x, fx) in self.entries.iter().filter(|(x, _)| !x.is_origin()) {
            let (value, cover) = subadditive_envelope(self, x, &Rational::from_integer(1.into()))?;
            if &value < fx {
                return Ok(Check::Fails(SubadditivityWitness {
                    target: x.clone(),
                    target_value: fx.clone(),
                    cover,
                }));
            }
        }
        Ok(Check::Holds)
    }

    pub fn is_subadditive(&self) -> Result<bool> {
        Ok(self.check_subadditive()?.holds())
    }

    /// 1-based coordinates `j` with some domain point having `pr_j > 0`.
    pub fn projection_support(&self) -> BTreeSet<usize> {
        (1..=self.dim)
            .filter(|&j| self.entries.keys().any(|p| p.coords()[j - 1].is_positive()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = SampledJson {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| EntryJson {
                    point: p.clone(),
                    value: v.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SampledJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let f = Self::new(doc.entries.into_iter().map(|e| (e.point, e.value)))?;
        if f.dim != doc.dim {
            return Err(Error::DimensionMismatch {
                expected: doc.dim,
                found: f.dim,
            });
        }
        Ok(f)
    }

    /// CSV with `n + 1` columns per row: the coordinates, then the value. A
    /// header row is accepted when its first cell is not a rational.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if i == 0 && record.get(0).is_some_and(|c| parse_rational(c).is_err()) {
                continue;
            }
            if record.len() < 2 {
                return Err(Error::Parse(format!("row {} needs at least 2 columns", i + 1)));
            }
            let cells = record
                .iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            let (value, coords) = cells.split_last().expect("nonempty row");
            entries.push((PointN::new(coords.to_vec())?, value.clone()));
        }
        Self::new(entries)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (p, v) in &self.entries {
            let mut cells: Vec<String> = p.coords().iter().map(format_rational).collect();
            cells.push(format_rational(v));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
