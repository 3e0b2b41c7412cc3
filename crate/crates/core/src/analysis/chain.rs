use crate::error::Result;
use crate::machine::{CoreState, TransitionTable};
use crate::rational::{ratio, Rational};

use super::linear::{solve_exact, LinearSystem};

/// A Markov chain on named states; row `i` is the distribution of the next
/// state from state `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Non-negative entries and unit row sums.
    pub fn is_stochastic(&self) -> bool {
        self.entries.iter().all(|row| {
            row.len() == self.size()
                && row.iter().all(|p| !p.is_negative())
                && row.iter().cloned().sum::<Rational>() == Rational::one()
        })
    }

    /// Indices of states with a self-loop of probability 1.
    pub fn absorbing(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.entries[i][i] == Rational::one()).collect()
    }

    fn transient(&self) -> Vec<usize> {
        let absorbing = self.absorbing();
        (0..self.size()).filter(|i| !absorbing.contains(i)).collect()
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn matrix(rows: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|row| row.iter().map(|&(p, q)| ratio(p, q)).collect()).collect()
}

const FULL_LABELS: [&str; 5] = ["start", "middle", "right", "stop-alt1", "stop-alt2"];

/// The five-state chain of the decision automaton on uniform random pairs.
pub fn decision_chain() -> TransitionMatrix {
    TransitionMatrix {
        labels: labels(&FULL_LABELS),
        entries: matrix(&[
            &[(2, 9), (1, 9), (0, 1), (2, 3), (0, 1)],
            &[(2, 9), (1, 3), (2, 9), (1, 9), (1, 9)],
            &[(0, 1), (1, 9), (2, 9), (0, 1), (2, 3)],
            &[(0, 1), (0, 1), (0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)],
        ]),
    }
}

/// [`decision_chain`] with the two stop states identified.
pub fn reduced_chain() -> TransitionMatrix {
    TransitionMatrix {
        labels: labels(&["start", "middle", "right", "stop"]),
        entries: matrix(&[
            &[(2, 9), (1, 9), (0, 1), (2, 3)],
            &[(2, 9), (1, 3), (2, 9), (2, 9)],
            &[(0, 1), (1, 9), (2, 9), (2, 3)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
        ]),
    }
}

fn state_column(s: CoreState) -> usize {
    match s {
        CoreState::StartP => 0,
        CoreState::MiddleR => 1,
        CoreState::RightQ => 2,
        CoreState::StopAlt1 => 3,
        CoreState::StopAlt2 => 4,
    }
}

/// Tallies the nine pairs per state of `table`, each with probability 1/9.
pub fn chain_from_table(table: &TransitionTable) -> TransitionMatrix {
    let mut counts = [[0i64; 5]; 5];
    for (state, _, t) in table.entries() {
        counts[state_column(state)][state_column(t.target())] += 1;
    }
    counts[3][3] = 9;
    counts[4][4] = 9;
    TransitionMatrix {
        labels: labels(&FULL_LABELS),
        entries: counts.iter().map(|row| row.iter().map(|&c| ratio(c, 9)).collect()).collect(),
    }
}

/// Merges all absorbing states of `chain` into one, placed last.
pub fn merge_absorbing(chain: &TransitionMatrix) -> TransitionMatrix {
    let transient = chain.transient();
    let absorbing = chain.absorbing();
    let mut entries = Vec::with_capacity(transient.len() + 1);
    for &i in &transient {
        let mut row: Vec<Rational> = transient.iter().map(|&j| chain.entries[i][j].clone()).collect();
        row.push(absorbing.iter().map(|&j| chain.entries[i][j].clone()).sum());
        entries.push(row);
    }
    let mut last = vec![Rational::zero(); transient.len()];
    last.push(Rational::one());
    entries.push(last);
    let mut names: Vec<String> = transient.iter().map(|&i| chain.labels[i].clone()).collect();
    names.push(absorbing.iter().map(|&i| chain.labels[i].as_str()).collect::<Vec<_>>().join("+"));
    TransitionMatrix { labels: names, entries }
}

/// Expected steps to absorption from each transient state, solving
/// `t_i = 1 + sum_j P_ij t_j`.
pub fn absorption_times_of(chain: &TransitionMatrix) -> Result<Vec<Rational>> {
    let transient = chain.transient();
    let coefficients = transient
        .iter()
        .map(|&i| {
            transient
                .iter()
                .map(|&j| {
                    let identity = if i == j { Rational::one() } else { Rational::zero() };
                    identity - chain.entries[i][j].clone()
                })
                .collect()
        })
        .collect();
    let system = LinearSystem::new(coefficients, vec![Rational::one(); transient.len()])?;
    solve_exact(&system)
}

/// `(t1, t2, t3)` for the decision chain: 63/38, 99/38, 63/38.
pub fn absorption_times() -> [Rational; 3] {
    let t = absorption_times_of(&reduced_chain()).expect("transient block is nonsingular");
    [t[0].clone(), t[1].clone(), t[2].clone()]
}

/// Probability of still being in each transient state after `steps` steps
/// from the first one.
pub fn transient_probabilities(chain: &TransitionMatrix, steps: usize) -> Vec<Rational> {
    let transient = chain.transient();
    let mut p = vec![Rational::zero(); transient.len()];
    p[0] = Rational::one();
    for _ in 0..steps {
        p = transient
            .iter()
            .map(|&j| transient.iter().zip(&p).map(|(&i, pi)| pi * &chain.entries[i][j]).sum())
            .collect();
    }
    p
}

/// Expected number of pairs read from the start state when the input holds
/// only `n` pairs.
pub fn expected_reads_finite_of(chain: &TransitionMatrix, n: usize) -> Rational {
    // E[reads] = sum_{k<n} P(still transient after k steps)
    let transient = chain.transient();
    let mut p = vec![Rational::zero(); transient.len()];
    p[0] = Rational::one();
    let mut total = Rational::zero();
    for _ in 0..n {
        total = total + p.iter().cloned().sum::<Rational>();
        p = transient
            .iter()
            .map(|&j| transient.iter().zip(&p).map(|(&i, pi)| pi * &chain.entries[i][j]).sum())
            .collect();
    }
    total
}

/// [`expected_reads_finite_of`] for the decision chain.
pub fn expected_reads_finite(n: usize) -> Rational {
    expected_reads_finite_of(&reduced_chain(), n)
}

/// Exact distribution of pairs read by the core automaton over all `9^n`
/// pair sequences of length `n`: entry `k` counts sequences read for exactly
/// `k` pairs.
///
/// Every transient prefix is enumerated explicitly; once a prefix stops,
/// its `9^(n-k)` continuations are counted in one step.
pub fn read_count_distribution(table: &TransitionTable, n: usize) -> Vec<u128> {
    fn walk(table: &TransitionTable, state: CoreState, depth: usize, n: usize, counts: &mut [u128]) {
        if depth == n {
            counts[n] += 1;
            return;
        }
        for (s, _, t) in table.entries() {
            if s != state {
                continue;
            }
            let next = t.target();
            if next.is_terminal() {
                counts[depth + 1] += 9u128.pow((n - depth - 1) as u32);
            } else {
                walk(table, next, depth + 1, n, counts);
            }
        }
    }
    let mut counts = vec![0u128; n + 1];
    walk(table, CoreState::StartP, 0, n, &mut counts);
    counts
}
