use std::fmt::Write as _;
use std::time::Instant;

use hanoi_core::analysis;
use hanoi_core::machine::{Alternative, CoreState, Machine, Transition, TransitionTable};
use hanoi_core::oracle::{self, build_graph, export_dot, GraphKind, MAX_DOT_N, MAX_VERIFY_N};
use hanoi_core::pathfinder::{both_alternative_costs, p2_path};
use hanoi_core::transducer::hanoi_to_sg;
use hanoi_core::{
    parse_gasket_word, parse_hanoi_word, Decision, Distance, GasketSymbol, GasketWord, HanoiWord, PegId, Rational,
    Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{AverageMode, Coords, Failure, GraphChoice, OutputFormat, PairArgs, StatsArgs};

pub type Outcome = Result<String, Failure>;

/// Largest disc count `path` will list moves for.
pub const MAX_PATH_N: usize = 30;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Both words as gasket labels, whichever coordinates they were given in.
fn gasket_pair(args: &PairArgs) -> Result<(GasketWord, GasketWord), Failure> {
    let (x, y) = match args.coords {
        Coords::Sg => (parse_gasket_word(&args.from)?, parse_gasket_word(&args.to)?),
        Coords::Hanoi => (
            hanoi_to_sg(&parse_hanoi_word(&args.from)?),
            hanoi_to_sg(&parse_hanoi_word(&args.to)?),
        ),
    };
    if x.len() != y.len() {
        return Err(hanoi_core::Error::LengthMismatch { left: x.len(), right: y.len() }.into());
    }
    Ok((x, y))
}

fn coords_name(c: Coords) -> &'static str {
    match c {
        Coords::Hanoi => "hanoi",
        Coords::Sg => "sg",
    }
}

#[derive(Serialize)]
struct DistanceOutput<'a> {
    from: &'a str,
    to: &'a str,
    coords: &'static str,
    n: usize,
    distance: Distance,
}

pub fn distance(args: &PairArgs) -> Outcome {
    let (x, y) = gasket_pair(args)?;
    let d = Machine::standard().distance(&x, &y)?;
    Ok(match args.format {
        OutputFormat::Text => format!("{d}\n"),
        OutputFormat::Json => json(&DistanceOutput {
            from: &args.from,
            to: &args.to,
            coords: coords_name(args.coords),
            n: x.len(),
            distance: d,
        }),
    })
}

#[derive(Serialize)]
struct DecideOutput {
    #[serde(flatten)]
    decision: Decision,
    symbols_read: usize,
}

pub fn decide(args: &PairArgs) -> Outcome {
    let (x, y) = gasket_pair(args)?;
    let decision = Machine::standard().decide(&x, &y)?;
    Ok(match args.format {
        OutputFormat::Text => format!(
            "{} prefix_discarded={} core_pairs_read={}\n",
            decision.verdict, decision.prefix_discarded, decision.core_pairs_read
        ),
        OutputFormat::Json => json(&DecideOutput { decision, symbols_read: decision.symbols_read() }),
    })
}

pub fn path(from: &str, to: &str, format: OutputFormat) -> Outcome {
    let x = parse_hanoi_word(from)?;
    let y = parse_hanoi_word(to)?;
    let n = x.len().max(y.len());
    if n > MAX_PATH_N {
        return Err(Failure::usage(format!(
            "refusing to list moves for {n} discs; paths are limited to {MAX_PATH_N} discs"
        )));
    }
    let verdict = hanoi_core::machine::decide_hanoi(&x, &y)?.verdict;
    let path = p2_path(&x, &y)?;
    Ok(match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for m in &path.moves {
                writeln!(out, "{m}").unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let mut value = serde_json::to_value(&path).expect("serializable");
            let obj = value.as_object_mut().expect("path is an object");
            obj.insert("target".into(), y.to_string().into());
            obj.insert("length".into(), path.len().into());
            obj.insert("verdict".into(), verdict.as_str().into());
            if verdict == Verdict::Draw {
                obj.insert("draw".into(), true.into());
            }
            json(&value)
        }
    })
}

pub fn verify(max_n: usize, format: OutputFormat, inject_fault: bool) -> Outcome {
    if max_n > MAX_VERIFY_N {
        return Err(Failure::usage(format!("--max-n {max_n} exceeds the limit of {MAX_VERIFY_N}")));
    }
    let mut table = TransitionTable::standard();
    if inject_fault {
        table.set(CoreState::StartP, (GasketSymbol::T, GasketSymbol::T), Transition::Stop(Alternative::Two));
    }
    let report = oracle::verify_suite_with(&Machine::with_table(table), max_n)?;
    let out = match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                write!(out, "{status} {} n={} cases={}", c.name, c.n, c.cases).unwrap();
                if let Some(ce) = &c.counterexample {
                    write!(out, " counterexample: {ce}").unwrap();
                }
                out.push('\n');
            }
            out
        }
    };
    match report.first_failure() {
        None => Ok(out),
        Some(f) => Err(Failure {
            code: 2,
            message: format!(
                "{} failed at n={}: {}",
                f.name,
                f.n,
                f.counterexample.as_deref().unwrap_or("no counterexample recorded")
            ),
            output: out,
        }),
    }
}

#[derive(Serialize)]
struct Constants {
    t1: Rational,
    t2: Rational,
    t3: Rational,
    d1: Rational,
    d2: Rational,
    d3: Rational,
    d4: Rational,
}

#[derive(Serialize)]
struct FiniteReads {
    n: usize,
    expected_core_pairs_read: Rational,
    limit: Rational,
}

#[derive(Serialize)]
struct Simulation {
    n: usize,
    samples: usize,
    seed: u64,
    estimate: f64,
    stderr: f64,
    stddev: f64,
    limit: Rational,
    histogram: std::collections::BTreeMap<usize, u64>,
}

fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

pub fn stats(args: &StatsArgs) -> Outcome {
    let format = args.format.unwrap_or(OutputFormat::Json);
    let limit = || analysis::absorption_times()[0].clone();

    if args.constants {
        let [t1, t2, t3] = analysis::absorption_times();
        let [d1, d2, d3, d4] = analysis::expected_distance_constants();
        let c = Constants { t1, t2, t3, d1, d2, d3, d4 };
        return Ok(match format {
            OutputFormat::Json => json(&c),
            OutputFormat::Text => key_values(&[
                ("t1", c.t1.to_string()),
                ("t2", c.t2.to_string()),
                ("t3", c.t3.to_string()),
                ("d1", c.d1.to_string()),
                ("d2", c.d2.to_string()),
                ("d3", c.d3.to_string()),
                ("d4", c.d4.to_string()),
            ]),
        });
    }

    let n = args.n.expect("clap enforces --n");
    if args.finite_reads {
        if n == 0 {
            return Err(Failure::usage("--finite-reads needs --n of at least 1"));
        }
        let value = analysis::expected_reads_finite(n);
        return Ok(match format {
            OutputFormat::Json => json(&FiniteReads { n, expected_core_pairs_read: value, limit: limit() }),
            OutputFormat::Text => format!("{value}\n"),
        });
    }

    if args.simulate {
        let samples = args.samples.expect("clap enforces --samples");
        let seed = args.seed.expect("clap enforces --seed");
        let s = analysis::simulate_stopping_time(n, samples, seed)?;
        let out = Simulation {
            n,
            samples,
            seed,
            estimate: s.mean,
            stderr: s.stderr,
            stddev: s.stddev,
            limit: limit(),
            histogram: s.histogram,
        };
        return Ok(match format {
            OutputFormat::Json => json(&out),
            OutputFormat::Text => key_values(&[
                ("n", n.to_string()),
                ("samples", samples.to_string()),
                ("seed", seed.to_string()),
                ("estimate", format!("{:.6}", out.estimate)),
                ("stderr", format!("{:.6}", out.stderr)),
                ("limit", out.limit.to_string()),
            ]),
        });
    }

    match args.average.expect("clap requires one mode") {
        AverageMode::Exact => {
            let a = analysis::average_pair_distance_exact(n)?;
            Ok(match format {
                OutputFormat::Json => json(&a),
                OutputFormat::Text => key_values(&[
                    ("n", n.to_string()),
                    ("pairs", a.pairs.to_string()),
                    ("mean", a.mean.to_string()),
                    ("ratio", a.ratio.to_string()),
                    ("bfs_mismatches", a.bfs_mismatches.to_string()),
                ]),
            })
        }
        AverageMode::Sampled => {
            let (Some(samples), Some(seed)) = (args.samples, args.seed) else {
                return Err(Failure::usage("--average sampled needs --samples and --seed"));
            };
            let a = analysis::average_pair_distance_sampled(n, samples, seed)?;
            Ok(match format {
                OutputFormat::Json => json(&a),
                OutputFormat::Text => key_values(&[
                    ("n", n.to_string()),
                    ("samples", samples.to_string()),
                    ("seed", seed.to_string()),
                    ("estimate", format!("{:.3}", a.estimate)),
                    ("stderr", format!("{:.3}", a.stderr)),
                    ("ratio", format!("{:.6}", a.ratio)),
                ]),
            })
        }
    }
}

#[derive(Serialize)]
struct BenchReport {
    n: usize,
    samples: usize,
    seed: u64,
    machine_symbol_reads: u64,
    baseline_symbol_reads: u64,
    ratio: f64,
    machine_ms: f64,
    baseline_ms: f64,
    distance_mismatches: u64,
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> HanoiWord {
    HanoiWord::new((0..n).map(|_| PegId::new(rng.gen_range(0..3)).unwrap()).collect())
}

pub fn bench(n: usize, samples: usize, seed: u64, format: OutputFormat) -> Outcome {
    if samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(HanoiWord, HanoiWord)> =
        (0..samples).map(|_| (random_state(&mut rng, n), random_state(&mut rng, n))).collect();

    let machine = Machine::standard();
    let started = Instant::now();
    let runs: Vec<_> = pairs.iter().map(|(x, y)| machine.run_hanoi(x, y).expect("equal lengths")).collect();
    let machine_ms = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let costs: Vec<_> = pairs.iter().map(|(x, y)| both_alternative_costs(x, y)).collect();
    let baseline_ms = started.elapsed().as_secs_f64() * 1e3;

    let machine_reads: u64 = runs.iter().map(|r| r.symbols_read as u64).sum();
    let mut baseline_reads = 0u64;
    let mut mismatches = 0u64;
    for (run, cost) in runs.iter().zip(&costs) {
        match cost {
            Ok(c) => {
                baseline_reads += c.symbols_read as u64;
                mismatches += u64::from(c.minimum != run.distance);
            }
            // identical states: the baseline scans both words to find no split
            Err(_) => {
                baseline_reads += 2 * n as u64;
                mismatches += u64::from(!run.distance.is_zero());
            }
        }
    }
    let report = BenchReport {
        n,
        samples,
        seed,
        machine_symbol_reads: machine_reads,
        baseline_symbol_reads: baseline_reads,
        ratio: baseline_reads as f64 / machine_reads as f64,
        machine_ms,
        baseline_ms,
        distance_mismatches: mismatches,
    };
    Ok(match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Text => key_values(&[
            ("n", n.to_string()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("machine symbol reads", machine_reads.to_string()),
            ("baseline symbol reads", baseline_reads.to_string()),
            ("ratio", format!("{:.4}", report.ratio)),
            ("machine time ms", format!("{machine_ms:.1}")),
            ("baseline time ms", format!("{baseline_ms:.1}")),
            ("distance mismatches", mismatches.to_string()),
        ]),
    })
}

pub fn export(n: usize, kind: GraphChoice) -> Outcome {
    if n > MAX_DOT_N {
        return Err(Failure::usage(format!("--n {n} exceeds the export limit of {MAX_DOT_N}")));
    }
    let kind = match kind {
        GraphChoice::Sg => GraphKind::Gasket,
        GraphChoice::Hanoi => GraphKind::Hanoi,
    };
    Ok(export_dot(&build_graph(n, kind)?)?)
}
