//! Brute-force ground truth: explicit graphs, breadth-first search and the
//! exhaustive cross-check driver.
//!
//! Vertices are indexed by reading a word as a base-3 number, most
//! significant symbol first (`T`/`0` = 0, `L`/`1` = 1, `R`/`2` = 2).

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decision::Verdict;
use crate::error::{Error, Result};
use crate::gasket::{sg_distance_reference, sg_neighbors};
use crate::machine::{Alternative, Machine};
use crate::moves::replay;
use crate::pathfinder::{p2_path_for, both_alternative_costs};
use crate::transducer::{hanoi_to_sg, PegPermutation};
use crate::word::{GasketWord, HanoiWord, PegId};

pub const MAX_GRAPH_N: usize = 12;
pub const MAX_IMPLICIT_N: usize = 15;
pub const MAX_DOT_N: usize = 6;
pub const MAX_VERIFY_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Hanoi,
    Gasket,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Hanoi => "H",
            GraphKind::Gasket => "SG",
        })
    }
}

/// Legal-move neighbours of a Hanoi state.
pub fn hanoi_neighbors(h: &HanoiWord) -> Vec<HanoiWord> {
    let pegs = h.pegs();
    // index of the top (smallest) disc on each peg
    let mut top: [Option<usize>; 3] = [None; 3];
    for (i, p) in pegs.iter().enumerate() {
        top[p.index()] = Some(i);
    }
    let mut out = Vec::with_capacity(3);
    for from in PegId::ALL {
        let Some(i) = top[from.index()] else { continue };
        for to in PegId::ALL {
            if to == from {
                continue;
            }
            if top[to.index()].is_none_or(|j| j < i) {
                let mut next = pegs.to_vec();
                next[i] = to;
                out.push(HanoiWord::new(next));
            }
        }
    }
    out
}

fn neighbor_indices(kind: GraphKind, n: usize, v: usize) -> Vec<usize> {
    match kind {
        GraphKind::Gasket => sg_neighbors(&GasketWord::from_index(v, n))
            .map(|ns| ns.iter().map(GasketWord::to_index).collect())
            .unwrap_or_default(),
        GraphKind::Hanoi => hanoi_neighbors(&HanoiWord::from_index(v, n)).iter().map(HanoiWord::to_index).collect(),
    }
}

/// `H_n` or `SG_n` with adjacency in compressed rows.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    n: usize,
    kind: GraphKind,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

pub fn build_graph(n: usize, kind: GraphKind) -> Result<ExplicitGraph> {
    if n > MAX_GRAPH_N {
        return Err(Error::TooLarge { n, max: MAX_GRAPH_N });
    }
    let count = 3usize.pow(n as u32);
    let mut offsets = Vec::with_capacity(count + 1);
    let mut targets = Vec::with_capacity(3 * count);
    offsets.push(0);
    for v in 0..count {
        if n > 0 {
            targets.extend(neighbor_indices(kind, n, v).into_iter().map(|u| u as u32));
        }
        offsets.push(targets.len() as u32);
    }
    Ok(ExplicitGraph { n, kind, offsets, targets })
}

impl ExplicitGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v as usize)))
            .filter(|(u, v)| u < v)
    }

    /// Canonical text label of vertex `v`.
    pub fn label(&self, v: usize) -> String {
        match self.kind {
            GraphKind::Gasket => GasketWord::from_index(v, self.n).to_string(),
            GraphKind::Hanoi => HanoiWord::from_index(v, self.n).to_string(),
        }
    }

    /// Index of the vertex with text label `label`.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        let index = match self.kind {
            GraphKind::Gasket => label.parse::<GasketWord>().map(|w| (w.len(), w.to_index())),
            GraphKind::Hanoi => label.parse::<HanoiWord>().map(|w| (w.len(), w.to_index())),
        };
        match index {
            Ok((len, i)) if len == self.n => Ok(i),
            _ => Err(Error::UnknownVertex),
        }
    }
}

/// Single-source shortest-path lengths from vertex index `source`.
pub fn bfs_distances(g: &ExplicitGraph, source: usize) -> Result<Vec<u32>> {
    if source >= g.vertex_count() {
        return Err(Error::UnknownVertex);
    }
    Ok(bfs(g.vertex_count(), source, |v, out| out.extend(g.neighbors(v).iter().map(|&u| u as usize))))
}

/// Same as [`bfs_distances`] from a text label.
pub fn bfs_from_label(g: &ExplicitGraph, source: &str) -> Result<Vec<u32>> {
    bfs_distances(g, g.vertex(source)?)
}

/// BFS over the neighbour rules without materialising the graph.
pub fn bfs_implicit(n: usize, kind: GraphKind, source: usize) -> Result<Vec<u32>> {
    if n > MAX_IMPLICIT_N {
        return Err(Error::TooLarge { n, max: MAX_IMPLICIT_N });
    }
    let count = 3usize.pow(n as u32);
    if source >= count {
        return Err(Error::UnknownVertex);
    }
    Ok(bfs(count, source, |v, out| out.extend(neighbor_indices(kind, n, v))))
}

fn bfs(count: usize, source: usize, mut neighbors: impl FnMut(usize, &mut Vec<usize>)) -> Vec<u32> {
    let mut dist = vec![u32::MAX; count];
    let mut queue = VecDeque::new();
    let mut buf = Vec::with_capacity(3);
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        buf.clear();
        neighbors(v, &mut buf);
        for &u in &buf {
            if dist[u] == u32::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Undirected DOT rendering with canonical vertex labels.
pub fn export_dot(g: &ExplicitGraph) -> Result<String> {
    if g.n > MAX_DOT_N {
        return Err(Error::TooLarge { n: g.n, max: MAX_DOT_N });
    }
    let mut out = String::new();
    writeln!(out, "graph {}_{} {{", g.kind, g.n).unwrap();
    for v in 0..g.vertex_count() {
        writeln!(out, "  \"{}\";", g.label(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", g.label(u), g.label(v)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// Result of one named cross-check at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub n: usize,
    pub cases: u64,
    pub passed: bool,
    /// First failing case, when any.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

const EXHAUSTIVE_PAIRS_N: usize = 6;
const EXHAUSTIVE_PATHS_N: usize = 5;
const SAMPLED_PAIRS: usize = 100_000;
const SAMPLED_PATHS: usize = 2_000;
const VERIFY_SEED: u64 = 0x5eed_0001;

/// Runs every cross-check for `n = 1..=max_n` with the standard machine.
pub fn verify_suite(max_n: usize) -> Result<VerifyReport> {
    verify_suite_with(&Machine::standard(), max_n)
}

/// Runs every cross-check against `machine`, which may carry a modified
/// transition table.
pub fn verify_suite_with(machine: &Machine, max_n: usize) -> Result<VerifyReport> {
    if max_n > MAX_VERIFY_N {
        return Err(Error::TooLarge { n: max_n, max: MAX_VERIFY_N });
    }
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let sg = build_graph(n, GraphKind::Gasket)?;
        let hg = build_graph(n, GraphKind::Hanoi)?;
        checks.push(check_graph_shape(&sg));
        checks.push(check_graph_shape(&hg));
        checks.push(check_isomorphism(&hg, &sg));
        checks.push(check_gasket_distances(machine, &sg));
        checks.push(check_hanoi_distances(machine, &hg));
        checks.push(check_paths(&hg));
    }
    Ok(VerifyReport { max_n, checks })
}

struct Tally {
    name: &'static str,
    n: usize,
    cases: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str, n: usize) -> Self {
        Tally { name, n, cases: 0, counterexample: None }
    }

    /// Records one case; returns false once a failure has been recorded.
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
        self.counterexample.is_none()
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            n: self.n,
            cases: self.cases,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

fn check_graph_shape(g: &ExplicitGraph) -> CheckOutcome {
    let name = match g.kind {
        GraphKind::Gasket => "gasket-graph-shape",
        GraphKind::Hanoi => "hanoi-graph-shape",
    };
    let mut t = Tally::new(name, g.n);
    let n = g.n as u32;
    let expected_edges = (3usize.pow(n + 1) - 3) / 2;
    t.record(g.vertex_count() == 3usize.pow(n), || format!("vertex count {}", g.vertex_count()));
    t.record(g.edge_count() == expected_edges, || format!("edge count {} != {expected_edges}", g.edge_count()));
    let corners = (0..g.vertex_count()).filter(|&v| g.degree(v) == 2).count();
    t.record(corners == 3, || format!("{corners} vertices of degree 2"));
    for v in 0..g.vertex_count() {
        let deg = g.degree(v);
        let symmetric = g.neighbors(v).iter().all(|&u| g.neighbors(u as usize).contains(&(v as u32)));
        if !t.record((deg == 2 || deg == 3) && symmetric, || format!("vertex {} (degree {deg})", g.label(v))) {
            break;
        }
    }
    let ecc = bfs_distances(g, 0).map(|d| d.into_iter().max().unwrap_or(0)).unwrap_or(0);
    t.record(u64::from(ecc) == (1u64 << n) - 1, || format!("corner eccentricity {ecc}"));
    t.finish()
}

fn check_isomorphism(hg: &ExplicitGraph, sg: &ExplicitGraph) -> CheckOutcome {
    let n = hg.n;
    let mut t = Tally::new("transducer-isomorphism", n);
    let image: Vec<usize> = (0..hg.vertex_count()).map(|v| hanoi_to_sg(&HanoiWord::from_index(v, n)).to_index()).collect();
    let mut hit = vec![false; sg.vertex_count()];
    for &i in &image {
        hit[i] = true;
    }
    t.record(hit.iter().all(|&h| h), || "map is not onto".to_string());
    t.record(hg.edge_count() == sg.edge_count(), || "edge counts differ".to_string());
    for (u, v) in hg.edges() {
        let ok = sg.neighbors(image[u]).contains(&(image[v] as u32));
        if !t.record(ok, || format!("H edge {}--{} maps to non-edge {}--{}", hg.label(u), hg.label(v), sg.label(image[u]), sg.label(image[v]))) {
            break;
        }
    }
    for p in PegId::ALL {
        let corner = hanoi_to_sg(&HanoiWord::perfect(p, n));
        let ok = corner.symbols().iter().all(|&s| s == PegPermutation::START.image(p));
        t.record(ok, || format!("perfect state on {p} maps to {corner}"));
    }
    t.finish()
}

/// Pairs to check at size `n`: all of them up to the exhaustive cutoff,
/// otherwise a seeded sample, grouped by source.
fn pair_plan(n: usize, exhaustive_cutoff: usize, samples: usize) -> Vec<(usize, Vec<usize>)> {
    let count = 3usize.pow(n as u32);
    if n <= exhaustive_cutoff {
        return (0..count).map(|s| (s, (0..count).collect())).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED ^ n as u64);
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); count];
    for _ in 0..samples {
        by_source[rng.gen_range(0..count)].push(rng.gen_range(0..count));
    }
    by_source.into_iter().enumerate().filter(|(_, t)| !t.is_empty()).collect()
}

fn check_gasket_distances(machine: &Machine, sg: &ExplicitGraph) -> CheckOutcome {
    let n = sg.n;
    let mut t = Tally::new("gasket-machine-vs-bfs", n);
    'outer: for (s, targets) in pair_plan(n, EXHAUSTIVE_PAIRS_N, SAMPLED_PAIRS) {
        let dist = bfs_distances(sg, s).expect("source in range");
        let x = GasketWord::from_index(s, n);
        for v in targets {
            let y = GasketWord::from_index(v, n);
            let bfs = u64::from(dist[v]);
            let run = machine.run(&x, &y).expect("equal lengths");
            let reference = sg_distance_reference(&x, &y).expect("equal lengths");
            let ok = run.distance.to_u64() == Some(bfs)
                && reference.to_u64() == Some(bfs)
                && (run.decision.verdict == Verdict::Identical) == (x == y);
            if !t.record(ok, || format!("{x} -> {y}: machine {} reference {reference} bfs {bfs}", run.distance)) {
                break 'outer;
            }
        }
    }
    t.finish()
}

fn check_hanoi_distances(machine: &Machine, hg: &ExplicitGraph) -> CheckOutcome {
    let n = hg.n;
    let mut t = Tally::new("hanoi-machine-vs-bfs", n);
    'outer: for (s, targets) in pair_plan(n, EXHAUSTIVE_PATHS_N, SAMPLED_PAIRS / 5) {
        let dist = bfs_distances(hg, s).expect("source in range");
        let x = HanoiWord::from_index(s, n);
        let gx = hanoi_to_sg(&x);
        for v in targets {
            let y = HanoiWord::from_index(v, n);
            let bfs = u64::from(dist[v]);
            let d = machine.distance_hanoi(&x, &y).expect("equal lengths");
            let streamed = machine.decide_hanoi(&x, &y).expect("equal lengths");
            let translated = machine.decide(&gx, &hanoi_to_sg(&y)).expect("equal lengths");
            let ok = d.to_u64() == Some(bfs) && streamed == translated;
            if !t.record(ok, || format!("{x} -> {y}: machine {d} bfs {bfs}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

fn check_paths(hg: &ExplicitGraph) -> CheckOutcome {
    let n = hg.n;
    let mut t = Tally::new("p2-paths", n);
    'outer: for (s, targets) in pair_plan(n, EXHAUSTIVE_PATHS_N, SAMPLED_PATHS) {
        let dist = bfs_distances(hg, s).expect("source in range");
        let x = HanoiWord::from_index(s, n);
        for v in targets {
            let y = HanoiWord::from_index(v, n);
            let result = path_check(&x, &y, dist[v] as usize);
            if !t.record(result.is_ok(), || format!("{x} -> {y}: {}", result.clone().unwrap_err())) {
                break 'outer;
            }
        }
    }
    t.finish()
}

/// Checks the shortest path(s) from `x` to `y` against the true distance.
pub(crate) fn path_check(x: &HanoiWord, y: &HanoiWord, expected: usize) -> std::result::Result<(), String> {
    if x == y {
        let p = crate::pathfinder::p2_path(x, y).map_err(|e| e.to_string())?;
        return if p.is_empty() { Ok(()) } else { Err("non-empty path between equal states".into()) };
    }
    let costs = both_alternative_costs(x, y).map_err(|e| e.to_string())?;
    let verdict = crate::machine::decide_hanoi(x, y).map_err(|e| e.to_string())?.verdict;
    if verdict != costs.verdict() {
        return Err(format!("verdict {verdict} but alternatives {} / {}", costs.alt1, costs.alt2));
    }
    let split = x.pegs().iter().zip(y.pegs()).position(|(a, b)| a != b).unwrap();
    let disc = (x.len() - split) as u32;
    let variants: &[(Alternative, usize)] = match verdict {
        Verdict::Once => &[(Alternative::One, 1)],
        Verdict::Twice => &[(Alternative::Two, 2)],
        _ => &[(Alternative::One, 1), (Alternative::Two, 2)],
    };
    for &(alt, moves_of_disc) in variants {
        let path = p2_path_for(x, y, alt).map_err(|e| e.to_string())?;
        let end = replay(&path).map_err(|e| format!("{alt:?}: {e}"))?;
        if &end != y {
            return Err(format!("{alt:?} path ends at {end}"));
        }
        if path.len() != expected {
            return Err(format!("{alt:?} path has {} moves, distance is {expected}", path.len()));
        }
        let count = path.moves.iter().filter(|m| m.disc() == disc).count();
        if count != moves_of_disc || path.moves.iter().any(|m| m.disc() > disc) {
            return Err(format!("{alt:?} path moves disc {disc} {count} times"));
        }
    }
    Ok(())
}
