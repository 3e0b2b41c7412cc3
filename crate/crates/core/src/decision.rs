use std::fmt;

use serde::Serialize;

/// Outcome of the once-or-twice question for the largest differing disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Alternative 1: the largest differing disc moves exactly once.
    Once,
    /// Alternative 2: it moves twice, via the third peg.
    Twice,
    /// Both alternatives give shortest paths.
    Draw,
    /// The two states are equal.
    Identical,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Once => "once",
            Verdict::Twice => "twice",
            Verdict::Draw => "draw",
            Verdict::Identical => "identical",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict plus how much input the machine consumed to reach it.
///
/// `prefix_discarded` counts the equal leading pairs, `permutation_pair_read`
/// records whether the first differing pair was consumed, and
/// `core_pairs_read` counts only pairs fed to the decision automaton after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub core_pairs_read: usize,
    pub prefix_discarded: usize,
    pub permutation_pair_read: bool,
}

impl Decision {
    /// Symbols consumed from both words together.
    pub fn symbols_read(&self) -> usize {
        2 * (self.prefix_discarded + usize::from(self.permutation_pair_read) + self.core_pairs_read)
    }
}
