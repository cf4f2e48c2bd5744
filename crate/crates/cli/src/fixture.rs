#![allow(clippy::needless_range_loop)]

use std::path::Path;

use clap::ValueEnum;
use mpf_core::rational::{int, ratio};
use mpf_core::{cantor, Combiner, FiniteMetricSpace, GridFunction, PointN, Rational, SampledFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::commands::{to_json_pretty, write_file};
use crate::report::RunReport;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Isotone amenable function on a few points with half-integer data.
    RandomSampledFunction,
    /// Shortest-path metric of a weighted complete graph.
    RandomMetricSpace,
    /// A named combiner tabulated on the default lattice `[0, 2]^2`.
    NamedCombinerGrid,
    /// The level-k approximation of C^e in [0, 3].
    CeLevelSet,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::RandomSampledFunction => "random-sampled-function",
            Kind::RandomMetricSpace => "random-metric-space",
            Kind::NamedCombinerGrid => "named-combiner-grid",
            Kind::CeLevelSet => "ce-level-set",
        }
    }
}

const HALVES: [i64; 5] = [1, 2, 3, 4, 6];

fn half(rng: &mut ChaCha8Rng) -> Rational {
    ratio(*HALVES.choose(rng).expect("nonempty"), 2)
}

fn random_sampled_function(rng: &mut ChaCha8Rng) -> Result<SampledFunction, CliError> {
    let n = rng.gen_range(1..=3);
    let origin = PointN::origin(n)?;
    let mut raw = vec![(origin.clone(), int(0))];
    for _ in 0..rng.gen_range(2..=6) {
        let p = PointN::new((0..n).map(|_| ratio(rng.gen_range(0..=4), 2)).collect())?;
        if raw.iter().all(|(q, _)| q != &p) {
            let v = half(rng);
            raw.push((p, v));
        }
    }
    // Isotone closure: each value becomes the maximum over its lower cone.
    let closed: Vec<(PointN, Rational)> = raw
        .iter()
        .map(|(x, _)| {
            let v = raw
                .iter()
                .filter(|(y, _)| y.leq(x))
                .map(|(_, v)| v.clone())
                .max()
                .expect("x is in its own cone");
            (x.clone(), v)
        })
        .collect();
    Ok(SampledFunction::new(closed)?)
}

fn random_metric_space(rng: &mut ChaCha8Rng) -> Result<FiniteMetricSpace, CliError> {
    let size = rng.gen_range(2..=5);
    let mut d = vec![vec![int(0); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let v = half(rng);
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
    Ok(FiniteMetricSpace::new((0..size).map(|i| format!("p{i}")).collect(), d)?)
}

/// Writes one fixture, reparses it against its type, and reports its digest.
pub fn generate(kind: Kind, seed: u64, out: &Path, combiner: &str, level: u32) -> Result<RunReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = match kind {
        Kind::RandomSampledFunction => random_sampled_function(&mut rng)?.to_json(),
        Kind::RandomMetricSpace => random_metric_space(&mut rng)?.to_json(),
        Kind::NamedCombinerGrid => {
            let c = Combiner::named(combiner, None)?;
            let g = GridFunction::from_combiner(2, GridFunction::default_bound(), GridFunction::default_step(), &c)?;
            g.to_json()
        }
        Kind::CeLevelSet => {
            let values: Vec<String> = cantor::ce_level_set(level)?
                .iter()
                .map(mpf_core::format_rational)
                .collect();
            to_json_pretty(&values)
        }
    };
    match kind {
        Kind::RandomSampledFunction => {
            SampledFunction::from_json(&text)?;
        }
        Kind::RandomMetricSpace => {
            FiniteMetricSpace::from_json(&text)?;
        }
        Kind::NamedCombinerGrid => {
            GridFunction::from_json(&text)?;
        }
        Kind::CeLevelSet => {
            let back: Vec<String> = serde_json::from_str(&text).map_err(|e| CliError::Io(e.to_string()))?;
            back.iter().try_for_each(|t| mpf_core::parse_rational(t).map(drop))?;
        }
    }
    write_file(out, &text)?;
    let digest = hex::encode(Sha256::digest(format!("{text}\n").as_bytes()));
    let mut report = RunReport::new("fixture");
    report.push(
        "written",
        true,
        json!({
            "kind": kind.name(),
            "seed": seed,
            "path": out.display().to_string(),
            "sha256": digest,
        }),
    );
    Ok(report)
}
