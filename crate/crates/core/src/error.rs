use thiserror::Error;

/// Why a move in a [`MovePath`](crate::MovePath) could not be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalMoveReason {
    /// A smaller disc sits on top of the moved disc.
    DiscNotTop,
    /// The destination peg already holds a smaller disc.
    SmallerDiscAtDestination,
    /// The disc is not on the peg the move claims to take it from.
    DiscNotOnSource,
    /// The disc number is outside `1..=n`.
    NoSuchDisc,
}

impl std::fmt::Display for IllegalMoveReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IllegalMoveReason::DiscNotTop => "disc is not on top of its peg",
            IllegalMoveReason::SmallerDiscAtDestination => "a smaller disc is on the destination peg",
            IllegalMoveReason::DiscNotOnSource => "disc is not on the source peg",
            IllegalMoveReason::NoSuchDisc => "no such disc",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol at position {0}")]
    InvalidSymbol(usize),
    #[error("words have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("illegal move at index {index}: {reason}")]
    IllegalMove { index: usize, reason: IllegalMoveReason },
    #[error("a move must change pegs (peg {0} to itself)")]
    NullMove(u8),
    #[error("peg label {0} is out of range 0..=2")]
    InvalidPeg(u8),
    #[error("core machine stepped from a terminal state")]
    TerminalStateStepped,
    #[error("the two states are identical")]
    IdenticalStates,
    #[error("n = {n} exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex is not in the graph")]
    UnknownVertex,
    #[error("coefficient matrix is singular")]
    SingularMatrix,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_lengths(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}
