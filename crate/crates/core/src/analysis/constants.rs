use crate::machine::{Alternative, CoreState, EdgeWeight, Transition, TransitionTable};
use crate::rational::{ratio, Rational};
use crate::word::GasketSymbol;

use super::linear::{solve_exact, LinearSystem};

/// Expected `f_alpha` contribution of one random word below the current
/// level, relative to the current weight: `(2/3) * sum_{j>=2} 2^-j`.
pub fn geometric_tail() -> Rational {
    let mismatch = ratio(2, 3);
    let first = ratio(1, 4);
    let decay = ratio(1, 2);
    mismatch * first / (Rational::one() - decay)
}

/// Expected terminal sum, in units of the current weight, for a stop on
/// `(c, d)` into `alt`.
fn terminal_value(alt: Alternative, (c, d): (GasketSymbol, GasketSymbol)) -> Rational {
    let (alpha, beta) = alt.corners();
    let half = ratio(1, 2);
    let mismatches = i64::from(c != alpha) + i64::from(d != beta);
    half * Rational::integer(mismatches) + geometric_tail() + geometric_tail()
}

/// Mean of the terminal sum over the stop transitions leaving `state`, or
/// `None` if it has none.
pub fn terminal_sum_expectation_for(table: &TransitionTable, state: CoreState) -> Option<Rational> {
    let values: Vec<Rational> = table
        .entries()
        .filter(|&(s, _, _)| s == state)
        .filter_map(|(_, pair, t)| match t {
            Transition::Stop(alt) => Some(terminal_value(alt, pair)),
            Transition::Advance { .. } => None,
        })
        .collect();
    if values.is_empty() {
        return None;
    }
    let count = Rational::integer(values.len() as i64);
    Some(values.into_iter().sum::<Rational>() / count)
}

/// The terminal sum expectation out of the start state: 1/2 + 2/3.
pub fn terminal_sum_expectation() -> Rational {
    terminal_sum_expectation_for(&TransitionTable::standard(), CoreState::StartP)
        .expect("the start state has stop transitions")
}

fn unknown(state: CoreState) -> usize {
    match state {
        CoreState::StartP => 1,
        CoreState::MiddleR => 2,
        CoreState::RightQ => 3,
        _ => unreachable!("terminal states carry no unknown"),
    }
}

/// The expected-distance equations read off `table`, as `A d = b` in the
/// unknowns `(d1, d2, d3, d4)`: `d1` before the prefix discard, then one per
/// transient state. Every step halves the scale of what follows.
pub fn distance_system(table: &TransitionTable) -> LinearSystem {
    let ninth = ratio(1, 9);
    let half = ratio(1, 2);
    let mut a = vec![vec![Rational::zero(); 4]; 4];
    let mut b = vec![Rational::zero(); 4];

    // equal top pair (3 of 9) repeats the prefix phase; otherwise the core starts
    a[0][0] = Rational::one() - ratio(1, 3) * &half;
    a[0][1] = -(ratio(2, 3) * &half);

    for (state, pair, t) in table.entries() {
        let row = unknown(state);
        match t {
            Transition::Advance { next, weight } => {
                let w = match weight {
                    EdgeWeight::Full => Rational::one(),
                    EdgeWeight::Half => half.clone(),
                };
                b[row] = &b[row] + &(&ninth * &w);
                let col = unknown(next);
                a[row][col] = &a[row][col] - &(&ninth * &half);
            }
            Transition::Stop(alt) => {
                b[row] = &b[row] + &(&ninth * &terminal_value(alt, pair));
            }
        }
    }
    for (i, row) in a.iter_mut().enumerate().skip(1) {
        row[i] = &row[i] + &Rational::one();
    }
    LinearSystem::new(a, b).expect("system is square")
}

/// `(d1, d2, d3, d4)`; `d1 * 2^n` is the asymptotic mean distance between two
/// random vertices of the n-th gasket.
pub fn expected_distance_constants() -> [Rational; 4] {
    let d = solve_exact(&distance_system(&TransitionTable::standard())).expect("system is nonsingular");
    [d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        ratio(p, q)
    }

    /// The four equations written out by hand in `A d = b` form.
    fn hand_written_system() -> LinearSystem {
        let stop = r(1, 2) + r(2, 3);
        let a = vec![
            vec![r(1, 1) - r(1, 6), -r(1, 3), r(0, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1) - r(1, 9), -r(1, 18), r(0, 1)],
            vec![r(0, 1), -r(1, 9), r(1, 1) - r(1, 9) - r(1, 18), -r(1, 9)],
            vec![r(0, 1), r(0, 1), -r(1, 18), r(1, 1) - r(1, 9)],
        ];
        let b = vec![
            r(0, 1),
            r(2, 9) + r(1, 9) + r(2, 3) * &stop,
            r(1, 9) + r(1, 9) + r(1, 9) + r(1, 9) + r(2, 9) * r(2, 3),
            r(1, 9) + r(2, 9) + r(2, 3) * &stop,
        ];
        LinearSystem::new(a, b).unwrap()
    }

    #[test]
    fn tail_and_terminal() {
        assert_eq!(geometric_tail(), r(1, 3));
        assert_eq!(terminal_sum_expectation(), r(7, 6));
        assert_eq!(terminal_sum_expectation(), r(1, 2) + r(2, 3));
        let table = TransitionTable::standard();
        assert_eq!(terminal_sum_expectation_for(&table, CoreState::RightQ), Some(r(7, 6)));
        // both stops out of the middle state agree with the relabelled pair
        assert_eq!(terminal_sum_expectation_for(&table, CoreState::MiddleR), Some(r(2, 3)));
    }

    #[test]
    fn derived_system_matches_hand_written() {
        let derived = distance_system(&TransitionTable::standard());
        assert_eq!(derived, hand_written_system());
    }

    #[test]
    fn constants() {
        let d = expected_distance_constants();
        assert_eq!(d, [r(466, 885), r(233, 177), r(188, 177), r(233, 177)]);
        assert!(distance_system(&TransitionTable::standard()).is_solution(&d));
        assert_eq!(solve_exact(&hand_written_system()).unwrap(), d.to_vec());
    }
}
