//! The decision and distance automata on gasket words.
//!
//! A run has three phases. Equal leading pairs are discarded. The first
//! differing pair `(a, b)` fixes the relabelling `a -> T, b -> R` and sets the
//! accumulator to 1 without reading further input. The core automaton then
//! reads relabelled pairs from `StartP` until it stops or the input runs out.
//! Edge weights are `2^m` or `2^(m-1)`, where `m` is the remaining length
//! including the pair being read. A stop adds the terminal sum of the
//! remaining words, triggering pair included.

use crate::decision::{Decision, Verdict};
use crate::distance::{Distance, PowerSum};
use crate::error::{check_lengths, Error, Result};
use crate::gasket::Relabeling;
use crate::transducer::HanoiToGasket;
use crate::word::{GasketSymbol, GasketWord, HanoiWord};

use GasketSymbol::{L, R, T};

/// States of the core automaton. The first three correspond to the `p`, `r`
/// and `q` functions; the last two are the stop states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreState {
    StartP,
    MiddleR,
    RightQ,
    StopAlt1,
    StopAlt2,
}

impl CoreState {
    pub const TRANSIENT: [CoreState; 3] = [CoreState::StartP, CoreState::MiddleR, CoreState::RightQ];

    pub fn is_terminal(self) -> bool {
        matches!(self, CoreState::StopAlt1 | CoreState::StopAlt2)
    }

    /// Verdict when the input runs out in this state.
    pub fn exhausted_verdict(self) -> Verdict {
        match self {
            CoreState::StartP | CoreState::StopAlt1 => Verdict::Once,
            CoreState::MiddleR => Verdict::Draw,
            CoreState::RightQ | CoreState::StopAlt2 => Verdict::Twice,
        }
    }

    fn row(self) -> Option<usize> {
        match self {
            CoreState::StartP => Some(0),
            CoreState::MiddleR => Some(1),
            CoreState::RightQ => Some(2),
            _ => None,
        }
    }
}

/// Which sum a stop transition adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alternative {
    /// `f_R(u) + f_T(v)`; the largest differing disc moves once.
    One,
    /// `f_L(u) + f_L(v)`; it moves twice.
    Two,
}

impl Alternative {
    pub fn stop_state(self) -> CoreState {
        match self {
            Alternative::One => CoreState::StopAlt1,
            Alternative::Two => CoreState::StopAlt2,
        }
    }

    pub fn verdict(self) -> Verdict {
        match self {
            Alternative::One => Verdict::Once,
            Alternative::Two => Verdict::Twice,
        }
    }

    /// The corner symbols `(alpha, beta)` of the sum `f_alpha(u) + f_beta(v)`.
    pub fn corners(self) -> (GasketSymbol, GasketSymbol) {
        match self {
            Alternative::One => (R, T),
            Alternative::Two => (L, L),
        }
    }
}

/// Weight of a non-stopping edge, relative to the remaining length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeWeight {
    /// `2^m`
    Full,
    /// `2^(m-1)`
    Half,
}

impl EdgeWeight {
    pub fn exponent(self, m: usize) -> usize {
        match self {
            EdgeWeight::Full => m,
            EdgeWeight::Half => m - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    Advance { next: CoreState, weight: EdgeWeight },
    Stop(Alternative),
}

impl Transition {
    pub fn target(self) -> CoreState {
        match self {
            Transition::Advance { next, .. } => next,
            Transition::Stop(alt) => alt.stop_state(),
        }
    }
}

fn pair_index(c: GasketSymbol, d: GasketSymbol) -> usize {
    c.index() * 3 + d.index()
}

/// The transition function of the core automaton, one row per transient
/// state, one column per symbol pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    rows: [[Transition; 9]; 3],
}

impl TransitionTable {
    /// The table of the shortest-path recursion.
    pub fn standard() -> Self {
        use CoreState::*;
        use EdgeWeight::*;
        let stop1 = Transition::Stop(Alternative::One);
        let stop2 = Transition::Stop(Alternative::Two);
        let go = |next, weight| Transition::Advance { next, weight };
        let mut table = TransitionTable { rows: [[stop1; 9]; 3] };

        for (c, d) in [(R, T), (R, L), (R, R), (L, T), (T, T), (T, R)] {
            table.set(StartP, (c, d), stop1);
        }
        table.set(StartP, (T, L), go(StartP, Full));
        table.set(StartP, (L, R), go(StartP, Full));
        table.set(StartP, (L, L), go(MiddleR, Full));

        table.set(MiddleR, (R, T), stop1);
        table.set(MiddleR, (L, L), stop2);
        table.set(MiddleR, (L, T), go(MiddleR, Half));
        table.set(MiddleR, (R, L), go(MiddleR, Half));
        table.set(MiddleR, (T, R), go(MiddleR, Full));
        table.set(MiddleR, (R, R), go(StartP, Half));
        table.set(MiddleR, (T, T), go(StartP, Half));
        table.set(MiddleR, (T, L), go(RightQ, Half));
        table.set(MiddleR, (L, R), go(RightQ, Half));

        for (c, d) in [(L, L), (L, T), (L, R), (R, L), (T, L), (T, R)] {
            table.set(RightQ, (c, d), stop2);
        }
        table.set(RightQ, (T, T), go(RightQ, Full));
        table.set(RightQ, (R, R), go(RightQ, Full));
        table.set(RightQ, (R, T), go(MiddleR, Full));
        table
    }

    /// Replaces one entry. Panics if `state` is terminal.
    pub fn set(&mut self, state: CoreState, pair: (GasketSymbol, GasketSymbol), t: Transition) {
        let row = state.row().expect("terminal states have no transitions");
        self.rows[row][pair_index(pair.0, pair.1)] = t;
    }

    pub fn lookup(&self, state: CoreState, pair: (GasketSymbol, GasketSymbol)) -> Result<Transition> {
        let row = state.row().ok_or(Error::TerminalStateStepped)?;
        Ok(self.rows[row][pair_index(pair.0, pair.1)])
    }

    /// Every `(state, pair, transition)` entry, transient states only.
    pub fn entries(&self) -> impl Iterator<Item = (CoreState, (GasketSymbol, GasketSymbol), Transition)> + '_ {
        CoreState::TRANSIENT.into_iter().flat_map(move |s| {
            GasketSymbol::ALL.into_iter().flat_map(move |c| {
                GasketSymbol::ALL
                    .into_iter()
                    .map(move |d| (s, (c, d), self.rows[s.row().unwrap()][pair_index(c, d)]))
            })
        })
    }
}

impl Default for TransitionTable {
    fn default() -> Self {
        TransitionTable::standard()
    }
}

/// What a single core step contributes to the accumulated distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepWeight {
    Add(Distance),
    /// The run stops; the named sum over the current words is added.
    TerminalSum(Alternative),
}

/// One step of the standard core automaton on a relabelled pair, with `m`
/// the remaining length including that pair.
pub fn core_step(state: CoreState, pair: (GasketSymbol, GasketSymbol), m: usize) -> Result<(CoreState, StepWeight)> {
    match TransitionTable::standard().lookup(state, pair)? {
        Transition::Advance { next, weight } => Ok((next, StepWeight::Add(Distance::pow2(weight.exponent(m))))),
        Transition::Stop(alt) => Ok((alt.stop_state(), StepWeight::TerminalSum(alt))),
    }
}

/// A pair read by the core automaton, the state it led to and the weight
/// added (the terminal sum for a stop).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub pair: (GasketSymbol, GasketSymbol),
    pub state: CoreState,
    pub weight: Distance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineRun {
    pub decision: Decision,
    pub distance: Distance,
    /// Symbols consumed from both inputs together.
    pub symbols_read: usize,
    /// Empty unless the run was traced.
    pub trace: Vec<TraceStep>,
}

/// The complete machine: prefix discard, relabelling and core automaton.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Machine {
    table: TransitionTable,
}

impl Machine {
    pub fn standard() -> Self {
        Machine { table: TransitionTable::standard() }
    }

    pub fn with_table(table: TransitionTable) -> Self {
        Machine { table }
    }

    pub fn table(&self) -> &TransitionTable {
        &self.table
    }

    pub fn run(&self, x: &GasketWord, y: &GasketWord) -> Result<MachineRun> {
        check_lengths(x.len(), y.len())?;
        Ok(self.execute(x.len(), gasket_pairs(x, y), true, None))
    }

    /// Like [`Machine::run`] but records every core step.
    pub fn run_traced(&self, x: &GasketWord, y: &GasketWord) -> Result<MachineRun> {
        check_lengths(x.len(), y.len())?;
        let mut trace = Vec::new();
        let mut run = self.execute(x.len(), gasket_pairs(x, y), true, Some(&mut trace));
        run.trace = trace;
        Ok(run)
    }

    /// Stops reading as soon as the verdict is known.
    pub fn decide(&self, x: &GasketWord, y: &GasketWord) -> Result<Decision> {
        check_lengths(x.len(), y.len())?;
        Ok(self.execute(x.len(), gasket_pairs(x, y), false, None).decision)
    }

    pub fn distance(&self, x: &GasketWord, y: &GasketWord) -> Result<Distance> {
        Ok(self.run(x, y)?.distance)
    }

    /// Runs on Hanoi states, translating both inputs disc by disc.
    pub fn run_hanoi(&self, x: &HanoiWord, y: &HanoiWord) -> Result<MachineRun> {
        check_lengths(x.len(), y.len())?;
        Ok(self.execute(x.len(), hanoi_pairs(x, y), true, None))
    }

    pub fn decide_hanoi(&self, x: &HanoiWord, y: &HanoiWord) -> Result<Decision> {
        check_lengths(x.len(), y.len())?;
        Ok(self.execute(x.len(), hanoi_pairs(x, y), false, None).decision)
    }

    pub fn distance_hanoi(&self, x: &HanoiWord, y: &HanoiWord) -> Result<Distance> {
        Ok(self.run_hanoi(x, y)?.distance)
    }

    fn execute<I>(&self, n: usize, mut pairs: I, want_distance: bool, mut trace: Option<&mut Vec<TraceStep>>) -> MachineRun
    where
        I: Iterator<Item = (GasketSymbol, GasketSymbol)>,
    {
        let mut pulled = 0;
        let mut prefix = 0;
        let (a, b) = loop {
            match pairs.next() {
                None => {
                    return MachineRun {
                        decision: Decision {
                            verdict: Verdict::Identical,
                            core_pairs_read: 0,
                            prefix_discarded: prefix,
                            permutation_pair_read: false,
                        },
                        distance: Distance::zero(),
                        symbols_read: 2 * pulled,
                        trace: Vec::new(),
                    };
                }
                Some((a, b)) => {
                    pulled += 1;
                    if a != b {
                        break (a, b);
                    }
                    prefix += 1;
                }
            }
        };

        let map = Relabeling::canonical(a, b);
        let mut acc = PowerSum::with_bits(n + 1);
        acc.add_pow2(0);
        let mut state = CoreState::StartP;
        let mut core = 0;
        let mut m = n - pulled;
        let mut terminal = None;

        let verdict = loop {
            let Some((c, d)) = pairs.next() else {
                break state.exhausted_verdict();
            };
            pulled += 1;
            core += 1;
            let pair = (map.apply(c), map.apply(d));
            let transition = self.table.lookup(state, pair).expect("state is transient");
            match transition {
                Transition::Advance { next, weight } => {
                    let e = weight.exponent(m);
                    acc.add_pow2(e);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep { pair, state: next, weight: Distance::pow2(e) });
                    }
                    state = next;
                    m -= 1;
                }
                Transition::Stop(alt) => {
                    if want_distance {
                        let mut sum = PowerSum::with_bits(m + 1);
                        let (alpha, beta) = alt.corners();
                        let mut k = m - 1;
                        let mut current = Some(pair);
                        while let Some((c, d)) = current {
                            if c != alpha {
                                sum.add_pow2(k);
                            }
                            if d != beta {
                                sum.add_pow2(k);
                            }
                            current = pairs.next().map(|(c, d)| {
                                pulled += 1;
                                k -= 1;
                                (map.apply(c), map.apply(d))
                            });
                        }
                        let sum = sum.into_distance();
                        if let Some(t) = trace.as_deref_mut() {
                            t.push(TraceStep { pair, state: alt.stop_state(), weight: sum.clone() });
                        }
                        terminal = Some(sum);
                    } else if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep { pair, state: alt.stop_state(), weight: Distance::zero() });
                    }
                    break alt.verdict();
                }
            }
        };

        let mut distance = acc.into_distance();
        if let Some(sum) = terminal {
            distance = distance + sum;
        }
        MachineRun {
            decision: Decision {
                verdict,
                core_pairs_read: core,
                prefix_discarded: prefix,
                permutation_pair_read: true,
            },
            distance,
            symbols_read: 2 * pulled,
            trace: Vec::new(),
        }
    }
}

fn gasket_pairs<'a>(x: &'a GasketWord, y: &'a GasketWord) -> impl Iterator<Item = (GasketSymbol, GasketSymbol)> + 'a {
    x.symbols().iter().copied().zip(y.symbols().iter().copied())
}

fn hanoi_pairs<'a>(x: &'a HanoiWord, y: &'a HanoiWord) -> impl Iterator<Item = (GasketSymbol, GasketSymbol)> + 'a {
    HanoiToGasket::new(x.pegs().iter().copied()).zip(HanoiToGasket::new(y.pegs().iter().copied()))
}

pub fn run_machine(x: &GasketWord, y: &GasketWord) -> Result<MachineRun> {
    Machine::standard().run(x, y)
}

pub fn decide(x: &GasketWord, y: &GasketWord) -> Result<Decision> {
    Machine::standard().decide(x, y)
}

pub fn distance(x: &GasketWord, y: &GasketWord) -> Result<Distance> {
    Machine::standard().distance(x, y)
}

pub fn decide_hanoi(x: &HanoiWord, y: &HanoiWord) -> Result<Decision> {
    Machine::standard().decide_hanoi(x, y)
}

pub fn distance_hanoi(x: &HanoiWord, y: &HanoiWord) -> Result<Distance> {
    Machine::standard().distance_hanoi(x, y)
}
