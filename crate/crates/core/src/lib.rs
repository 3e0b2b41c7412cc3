//! Shortest paths in the Tower of Hanoi graph.
//!
//! The n-disc Hanoi state graph `H_n` is isomorphic to the discrete
//! Sierpinski gasket `SG_n`. Distances on the gasket side are computed by a
//! small finite-state machine that reads the two vertex labels one symbol
//! pair at a time; a second transducer translates Hanoi states into gasket
//! labels on the fly. On random inputs the machine settles the once-or-twice
//! question for the largest disc after 63/38 pairs on average.
//!
//! Modules:
//!
//! - [`word`], [`moves`], [`distance`], [`rational`], [`decision`]: shared types.
//! - [`gasket`]: adjacency, corner distances, the `p`/`q`/`r` functions.
//! - [`transducer`]: Hanoi labels to gasket labels and back.
//! - [`machine`]: the decision and distance automata.
//! - [`pathfinder`]: explicit move sequences and the two-alternative baseline.
//! - [`oracle`]: explicit graphs, BFS, exhaustive cross-checks, DOT export.
//! - [`analysis`]: exact Markov-chain constants and simulations.

pub mod analysis;
pub mod decision;
pub mod distance;
pub mod error;
pub mod gasket;
pub mod machine;
pub mod moves;
pub mod oracle;
pub mod pathfinder;
pub mod rational;
pub mod transducer;
pub mod word;

pub use decision::{Decision, Verdict};
pub use distance::Distance;
pub use error::{Error, IllegalMoveReason, Result};
pub use moves::{replay, Move, MovePath};
pub use rational::Rational;
pub use word::{parse_gasket_word, parse_hanoi_word, GasketSymbol, GasketWord, HanoiWord, PegId};
