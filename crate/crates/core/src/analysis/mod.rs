//! Exact and simulated statistics of the decision machine on random inputs.
//!
//! All constants are exact rationals; floating point appears only in the
//! simulation summaries.

mod chain;
mod constants;
mod linear;
mod simulate;

pub use chain::{
    absorption_times, absorption_times_of, chain_from_table, decision_chain, expected_reads_finite,
    expected_reads_finite_of, merge_absorbing, read_count_distribution, reduced_chain, transient_probabilities,
    TransitionMatrix,
};
pub use constants::{
    distance_system, expected_distance_constants, geometric_tail, terminal_sum_expectation,
    terminal_sum_expectation_for,
};
pub use linear::{solve_exact, LinearSystem};
pub use simulate::{
    average_distance_to_perfect, average_pair_distance_exact, average_pair_distance_sampled, simulate_stopping_time,
    ExactAverage, SampledAverage, StoppingTimeStats, MAX_EXACT_AVERAGE_N,
};
