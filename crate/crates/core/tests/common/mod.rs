//! Seeded generators and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's algorithms: covers are found
//! by plain enumeration over bounded multiplicities, searches by hash lookups,
//! and moduli by scanning point pairs.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashSet};

use mpf_core::rational::{int, ratio};
use mpf_core::{FiniteMetricSpace, GridFunction, PointN, Rational, SampledFunction};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{0, 1/2, 1, 3/2, 2, 3}` in units of one half.
pub const HALVES: [i64; 6] = [0, 1, 2, 3, 4, 6];

pub fn half(k: i64) -> Rational {
    ratio(k, 2)
}

fn to_halves(r: &Rational) -> i64 {
    let h = r * int(2);
    assert!(h.is_integer(), "value {r} is not a multiple of 1/2");
    h.to_integer().to_i64().expect("small")
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> PointN {
    PointN::new((0..n).map(|_| half(*HALVES.choose(rng).unwrap())).collect()).unwrap()
}

/// Replaces every value by the maximum over the lower cone of its point.
fn isotone_closure(raw: &[(PointN, Rational)]) -> Vec<(PointN, Rational)> {
    raw.iter()
        .map(|(x, _)| {
            let v = raw
                .iter()
                .filter(|(y, _)| y.coords().iter().zip(x.coords()).all(|(a, b)| a <= b))
                .map(|(_, v)| v.clone())
                .max()
                .unwrap();
            (x.clone(), v)
        })
        .collect()
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<PointN> {
    let mut pts: Vec<PointN> = Vec::new();
    let mut attempts = 0;
    while pts.len() < count && attempts < 200 {
        attempts += 1;
        let p = random_point(rng, n);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Isotone function on at most five points of `{0, 1/2, 1, 3/2, 2, 3}^n`,
/// `n <= 3`, with values in the same set.
pub fn random_isotone(rng: &mut ChaCha8Rng) -> SampledFunction {
    let n = rng.gen_range(1..=3);
    let size = rng.gen_range(1..=5);
    let raw: Vec<(PointN, Rational)> = distinct_points(rng, n, size)
        .into_iter()
        .map(|p| (p, half(*HALVES.choose(rng).unwrap())))
        .collect();
    SampledFunction::new(isotone_closure(&raw)).unwrap()
}

/// Isotone amenable function: the origin maps to 0, every other point to a
/// positive value.
pub fn random_amenable(rng: &mut ChaCha8Rng) -> SampledFunction {
    let n = rng.gen_range(1..=3);
    let size = rng.gen_range(1..=5);
    let origin = PointN::origin(n).unwrap();
    let mut raw = vec![(origin.clone(), Rational::zero())];
    for p in distinct_points(rng, n, size) {
        if p != origin {
            raw.push((p, half(*HALVES[1..].choose(rng).unwrap())));
        }
    }
    SampledFunction::new(isotone_closure(&raw)).unwrap()
}

/// Isotone function on the full grid `{0, ..., k}^n` with values from
/// `{0, ..., 4}`; the origin maps to 0.
pub fn random_grid_function(rng: &mut ChaCha8Rng, n: usize, k: i64) -> SampledFunction {
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=k).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let raw: Vec<(PointN, Rational)> = pts
        .iter()
        .map(|p| {
            let v = if p.iter().all(|&c| c == 0) { 0 } else { rng.gen_range(0..=4) };
            (PointN::from_ints(p).unwrap(), int(v))
        })
        .collect();
    SampledFunction::new(isotone_closure(&raw)).unwrap()
}

/// A metric on `size` points with every off-diagonal distance in `{1, 2}`;
/// any such symmetric matrix satisfies the triangle inequality.
pub fn random_grid_space(rng: &mut ChaCha8Rng, size: usize) -> FiniteMetricSpace {
    let mut d = vec![vec![Rational::zero(); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let v = int(rng.gen_range(1..=2));
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    FiniteMetricSpace::new((0..size).map(|i| format!("p{i}")).collect(), d).unwrap()
}

/// Shortest-path metric of a complete graph with random half-integer weights.
pub fn random_metric_space(rng: &mut ChaCha8Rng, max_points: usize) -> FiniteMetricSpace {
    let size = rng.gen_range(1..=max_points);
    let mut d = vec![vec![Rational::zero(); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let v = half(*HALVES[1..].choose(rng).unwrap());
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    for k in 0..size {
        for i in 0..size {
            for j in 0..size {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::new((0..size).map(|i| format!("p{i}")).collect(), d).unwrap()
}

/// Cheapest cover of `y` by a multiset of domain points, found by trying
/// every multiplicity vector up to the per-point bound
/// `max_j ceil(y_j / a_j)` over coordinates with `a_j > 0`. Axes with no
/// positive projection are covered at cost `max(c, f(0))` each. All inputs
/// must be multiples of 1/2.
pub fn oracle_envelope(f: &SampledFunction, y: &PointN, c: &Rational) -> Rational {
    let n = f.dim();
    let yh: Vec<i64> = y.coords().iter().map(to_halves).collect();
    let origin_value = f.get(&PointN::origin(n).unwrap()).cloned();
    if yh.iter().all(|&v| v == 0) {
        return match origin_value {
            Some(_) => f.iter().map(|(_, v)| v.clone()).min().unwrap(),
            None => Rational::zero(),
        };
    }
    let items: Vec<(Vec<i64>, Rational)> = f
        .iter()
        .filter(|(p, _)| !p.is_origin())
        .map(|(p, v)| (p.coords().iter().map(to_halves).collect(), v.clone()))
        .collect();
    let axis_cost = match &origin_value {
        Some(v) if v > c => v.clone(),
        _ => c.clone(),
    };
    let mut base = Rational::zero();
    let mut target = yh.clone();
    for j in 0..n {
        if items.iter().all(|(a, _)| a[j] == 0) {
            if target[j] > 0 {
                base += &axis_cost;
            }
            target[j] = 0;
        }
    }
    let bounds: Vec<i64> = items
        .iter()
        .map(|(a, _)| {
            (0..n)
                .filter(|&j| a[j] > 0)
                .map(|j| (target[j] + a[j] - 1) / a[j])
                .max()
                .unwrap_or(0)
        })
        .collect();

    fn search(
        i: usize,
        items: &[(Vec<i64>, Rational)],
        bounds: &[i64],
        sum: &mut Vec<i64>,
        cost: Rational,
        target: &[i64],
        best: &mut Option<Rational>,
    ) {
        if best.as_ref().is_some_and(|b| &cost >= b) {
            return;
        }
        if i == items.len() {
            if sum.iter().zip(target).all(|(s, t)| s >= t) {
                *best = Some(cost);
            }
            return;
        }
        for m in 0..=bounds[i] {
            for (s, a) in sum.iter_mut().zip(&items[i].0) {
                *s += m * a;
            }
            search(i + 1, items, bounds, sum, &cost + &items[i].1 * int(m), target, best);
            for (s, a) in sum.iter_mut().zip(&items[i].0) {
                *s -= m * a;
            }
        }
    }

    let mut best = None;
    search(0, &items, &bounds, &mut vec![0; n], Rational::zero(), &target, &mut best);
    base + best.expect("support coordinates are coverable")
}

/// Brute-force subadditivity: no nonzero domain point is undercut by a
/// multiset cover from the domain.
pub fn oracle_is_subadditive(f: &SampledFunction) -> bool {
    f.iter()
        .filter(|(x, _)| !x.is_origin())
        .all(|(x, fx)| &oracle_envelope(f, x, &int(1)) >= fx)
}

/// Three-point search by hash lookups of `x1 +- a` and `x2 +- b`, visiting
/// triples in ascending lexicographic order.
pub fn oracle_three_point(
    set: &[Rational],
    a: &Rational,
    b: &Rational,
) -> Option<(Rational, Rational, Rational)> {
    let members: HashSet<&Rational> = set.iter().collect();
    let mut sorted: Vec<&Rational> = members.iter().copied().collect();
    sorted.sort();
    let ab = a + b;
    for x1 in sorted {
        let mut seconds = vec![x1 - a, x1 + a];
        seconds.sort();
        seconds.dedup();
        for x2 in seconds.iter().filter(|x| members.contains(x)) {
            let mut thirds = vec![x2 - b, x2 + b];
            thirds.sort();
            thirds.dedup();
            for x3 in thirds.iter().filter(|x| members.contains(x)) {
                if (x1 - x3).abs() == ab {
                    return Some((x1.clone(), x2.clone(), x3.clone()));
                }
            }
        }
    }
    None
}

/// `max |g(x) - g(y)|` over lattice pairs with `|x - y| <= eps`.
pub fn oracle_modulus(g: &GridFunction, eps: &PointN) -> Rational {
    let values: Vec<(PointN, Rational)> = g.iter().map(|(p, v)| (p, v.clone())).collect();
    let mut best = Rational::zero();
    for (x, gx) in &values {
        for (y, gy) in &values {
            let gap = x.abs_diff(y).unwrap();
            if gap.coords().iter().zip(eps.coords()).all(|(d, e)| d <= e) {
                best = best.max((gx - gy).abs());
            }
        }
    }
    best
}

/// Multiset of pairwise absolute differences.
pub fn difference_multiset(values: &[Rational]) -> BTreeMap<Rational, usize> {
    let mut out = BTreeMap::new();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            *out.entry((a - b).abs()).or_insert(0) += 1;
        }
    }
    out
}

/// Level-`k` intervals of the Cantor set as exact rational pairs, built by
/// repeatedly removing open middle thirds.
pub fn oracle_cantor_intervals(k: u32) -> Vec<(Rational, Rational)> {
    let mut intervals = vec![(int(0), int(1))];
    for _ in 0..k {
        intervals = intervals
            .into_iter()
            .flat_map(|(lo, hi)| {
                let third = (&hi - &lo) / int(3);
                [(lo.clone(), &lo + &third), (&hi - &third, hi)]
            })
            .collect();
    }
    intervals
}

pub fn random_triadic(rng: &mut ChaCha8Rng, max_k: u32) -> Rational {
    let k = rng.gen_range(0..=max_k);
    let d = 3i64.pow(k);
    ratio(rng.gen_range(0..=d), d)
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Uniform index in `0..m`.
pub fn pick(rng: &mut ChaCha8Rng, m: usize) -> usize {
    rng.gen_range(0..m)
}
