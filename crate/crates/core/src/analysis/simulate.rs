use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gasket::f_alpha;
use crate::machine::Machine;
use crate::oracle::{bfs_distances, build_graph, GraphKind};
use crate::rational::Rational;
use crate::word::{GasketSymbol, GasketWord};

/// Largest `n` accepted by [`average_pair_distance_exact`].
pub const MAX_EXACT_AVERAGE_N: usize = 7;

const MAX_PERFECT_AVERAGE_N: usize = 16;

/// Samples per partition. Partition `i` draws from the ChaCha stream `i` of
/// the seed, so the output does not depend on the number of worker threads.
const CHUNK: usize = 1 << 15;

fn partition_rng(seed: u64, partition: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(partition as u64);
    rng
}

fn partitions(samples: usize) -> Vec<(usize, usize)> {
    (0..samples.div_ceil(CHUNK))
        .map(|i| (i, CHUNK.min(samples - i * CHUNK)))
        .collect()
}

fn random_symbols(rng: &mut ChaCha8Rng, n: usize, out: &mut Vec<GasketSymbol>) {
    out.extend((0..n).map(|_| GasketSymbol::from_index(rng.gen_range(0..3))));
}

/// Summary of `core_pairs_read` over random inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoppingTimeStats {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stddev: f64,
    pub stderr: f64,
    /// Pairs read to number of samples.
    pub histogram: BTreeMap<usize, u64>,
}

impl StoppingTimeStats {
    /// Fraction of samples that read more than `k` pairs.
    pub fn tail_fraction(&self, k: usize) -> f64 {
        let above: u64 = self.histogram.range(k + 1..).map(|(_, c)| c).sum();
        above as f64 / self.samples as f64
    }

    fn from_histogram(n: usize, samples: usize, seed: u64, histogram: BTreeMap<usize, u64>) -> Self {
        let count = samples as f64;
        let (sum, sum_sq) = histogram.iter().fold((0u128, 0u128), |(s, q), (&k, &c)| {
            let (k, c) = (k as u128, c as u128);
            (s + k * c, q + k * k * c)
        });
        let mean = sum as f64 / count;
        let var = if samples > 1 {
            (sum_sq as f64 - sum as f64 * mean) / (count - 1.0)
        } else {
            0.0
        };
        let stddev = var.max(0.0).sqrt();
        StoppingTimeStats { n, samples, seed, mean, stddev, stderr: stddev / count.sqrt(), histogram }
    }
}

/// Runs the decision machine on `samples` random pairs whose first symbols
/// differ, followed by `n` i.i.d. uniform pairs, and records how many of
/// those `n` pairs the core automaton read.
pub fn simulate_stopping_time(n: usize, samples: usize, seed: u64) -> Result<StoppingTimeStats> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let machine = Machine::standard();
    let histograms: Vec<BTreeMap<usize, u64>> = partitions(samples)
        .into_par_iter()
        .map(|(part, size)| {
            let mut rng = partition_rng(seed, part);
            let mut hist = BTreeMap::new();
            let (mut xs, mut ys) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
            for _ in 0..size {
                xs.clear();
                ys.clear();
                xs.push(GasketSymbol::T);
                ys.push(GasketSymbol::R);
                random_symbols(&mut rng, n, &mut xs);
                random_symbols(&mut rng, n, &mut ys);
                let x = GasketWord::new(std::mem::take(&mut xs));
                let y = GasketWord::new(std::mem::take(&mut ys));
                let reads = machine.decide(&x, &y).expect("equal lengths").core_pairs_read;
                *hist.entry(reads).or_insert(0) += 1;
                xs = x.into_symbols();
                ys = y.into_symbols();
            }
            hist
        })
        .collect();
    let mut histogram = BTreeMap::new();
    for h in histograms {
        for (k, c) in h {
            *histogram.entry(k).or_insert(0) += c;
        }
    }
    Ok(StoppingTimeStats::from_histogram(n, samples, seed, histogram))
}

/// Mean machine distance over all ordered vertex pairs of a small gasket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactAverage {
    pub n: usize,
    pub pairs: u64,
    pub mean: Rational,
    /// `mean / 2^n`
    pub ratio: Rational,
    /// Pairs where the machine disagreed with breadth-first search.
    pub bfs_mismatches: u64,
}

/// Averages the machine distance over all `9^n` ordered pairs, checking
/// each against a breadth-first search from its source.
pub fn average_pair_distance_exact(n: usize) -> Result<ExactAverage> {
    if n > MAX_EXACT_AVERAGE_N {
        return Err(Error::TooLarge { n, max: MAX_EXACT_AVERAGE_N });
    }
    let graph = build_graph(n, GraphKind::Gasket)?;
    let count = graph.vertex_count();
    let machine = Machine::standard();
    let (total, mismatches) = (0..count)
        .into_par_iter()
        .map(|s| {
            let bfs = bfs_distances(&graph, s).expect("source in range");
            let x = GasketWord::from_index(s, n);
            let mut total = 0u64;
            let mut mismatches = 0u64;
            for (t, &expected) in bfs.iter().enumerate() {
                let y = GasketWord::from_index(t, n);
                let d = machine.distance(&x, &y).expect("equal lengths").to_u64().expect("fits in u64");
                total += d;
                mismatches += u64::from(d != u64::from(expected));
            }
            (total, mismatches)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let pairs = (count * count) as u64;
    let mean = Rational::new(total, pairs);
    let ratio = &mean / &Rational::integer(BigUint::from(1u8) << n);
    Ok(ExactAverage { n, pairs, mean, ratio, bfs_mismatches: mismatches })
}

/// Monte Carlo estimate of the mean distance between two independent
/// uniform vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledAverage {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
    /// `estimate / 2^n`
    pub ratio: f64,
    pub ratio_stderr: f64,
}

/// Samples `samples` independent pairs of uniform words of length `n`
/// (identical pairs included) and averages their machine distance.
pub fn average_pair_distance_sampled(n: usize, samples: usize, seed: u64) -> Result<SampledAverage> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let machine = Machine::standard();
    let (sum, sum_sq) = partitions(samples)
        .into_par_iter()
        .map(|(part, size)| {
            let mut rng = partition_rng(seed, part);
            let (mut s, mut q) = (0f64, 0f64);
            for _ in 0..size {
                let mut xs = Vec::with_capacity(n);
                let mut ys = Vec::with_capacity(n);
                random_symbols(&mut rng, n, &mut xs);
                random_symbols(&mut rng, n, &mut ys);
                let d = machine
                    .distance(&GasketWord::new(xs), &GasketWord::new(ys))
                    .expect("equal lengths")
                    .to_f64();
                s += d;
                q += d * d;
            }
            (s, q)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0f64, 0f64), |a, b| (a.0 + b.0, a.1 + b.1));
    let count = samples as f64;
    let estimate = sum / count;
    let var = if samples > 1 { (sum_sq - sum * estimate) / (count - 1.0) } else { 0.0 };
    let stderr = var.max(0.0).sqrt() / count.sqrt();
    let scale = 2f64.powi(n as i32);
    Ok(SampledAverage {
        n,
        samples,
        seed,
        estimate,
        stderr,
        ratio: estimate / scale,
        ratio_stderr: stderr / scale,
    })
}

/// Exact mean of `f_alpha(u)` over all `3^n` words, i.e. the mean distance
/// to the corner `alpha^n`.
pub fn average_distance_to_perfect(n: usize, alpha: GasketSymbol) -> Result<Rational> {
    if n > MAX_PERFECT_AVERAGE_N {
        return Err(Error::TooLarge { n, max: MAX_PERFECT_AVERAGE_N });
    }
    let count = 3usize.pow(n as u32);
    let total: BigUint = (0..count)
        .map(|i| f_alpha(&GasketWord::from_index(i, n), alpha).into_inner())
        .sum();
    Ok(Rational::new(total, count))
}
