use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, IllegalMoveReason, Result};
use crate::word::{HanoiWord, PegId};

/// A single disc move. Disc `n` is the largest, disc 1 the smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    disc: u32,
    #[serde(serialize_with = "peg_number")]
    from: PegId,
    #[serde(serialize_with = "peg_number")]
    to: PegId,
}

fn peg_number<S: Serializer>(peg: &PegId, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u8(peg.value())
}

impl Move {
    pub fn new(disc: u32, from: PegId, to: PegId) -> Result<Self> {
        if from == to {
            return Err(Error::NullMove(from.value()));
        }
        Ok(Move { disc, from, to })
    }

    pub(crate) fn unchecked(disc: u32, from: PegId, to: PegId) -> Self {
        debug_assert_ne!(from, to);
        Move { disc, from, to }
    }

    pub fn disc(&self) -> u32 {
        self.disc
    }

    pub fn from(&self) -> PegId {
        self.from
    }

    pub fn to(&self) -> PegId {
        self.to
    }

    /// The same disc moved back.
    pub fn reversed(&self) -> Move {
        Move { disc: self.disc, from: self.to, to: self.from }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self.disc, self.from, self.to)
    }
}

/// A start state and a sequence of moves. Legality is checked by [`replay`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovePath {
    #[serde(serialize_with = "word_string")]
    pub start: HanoiWord,
    pub moves: Vec<Move>,
}

fn word_string<S: Serializer>(w: &HanoiWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

impl MovePath {
    pub fn new(start: HanoiWord, moves: Vec<Move>) -> Self {
        MovePath { start, moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// All states visited, starting with `start`. Fails like [`replay`].
    pub fn states(&self) -> Result<Vec<HanoiWord>> {
        let mut state = self.start.clone();
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(state.clone());
        for (i, mv) in self.moves.iter().enumerate() {
            apply_move(&mut state, mv).map_err(|reason| Error::IllegalMove { index: i, reason })?;
            out.push(state.clone());
        }
        Ok(out)
    }
}

/// Applies every move of `path` to its start state and returns the end state.
pub fn replay(path: &MovePath) -> Result<HanoiWord> {
    let mut state = path.start.clone();
    for (i, mv) in path.moves.iter().enumerate() {
        apply_move(&mut state, mv).map_err(|reason| Error::IllegalMove { index: i, reason })?;
    }
    Ok(state)
}

pub(crate) fn apply_move(state: &mut HanoiWord, mv: &Move) -> std::result::Result<(), IllegalMoveReason> {
    let n = state.len();
    let disc = mv.disc as usize;
    if disc == 0 || disc > n {
        return Err(IllegalMoveReason::NoSuchDisc);
    }
    let idx = n - disc;
    let pegs = state.pegs_mut();
    if pegs[idx] != mv.from {
        return Err(IllegalMoveReason::DiscNotOnSource);
    }
    // Smaller discs live at higher indices.
    let smaller = &pegs[idx + 1..];
    if smaller.contains(&mv.from) {
        return Err(IllegalMoveReason::DiscNotTop);
    }
    if smaller.contains(&mv.to) {
        return Err(IllegalMoveReason::SmallerDiscAtDestination);
    }
    pegs[idx] = mv.to;
    Ok(())
}

/// True when `a` and `b` are one legal move apart.
pub fn hanoi_adjacent(a: &HanoiWord, b: &HanoiWord) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut diff = a.pegs().iter().zip(b.pegs()).enumerate().filter(|(_, (x, y))| x != y);
    let Some((idx, (&from, &to))) = diff.next() else {
        return false;
    };
    if diff.next().is_some() {
        return false;
    }
    let smaller = &a.pegs()[idx + 1..];
    !smaller.contains(&from) && !smaller.contains(&to)
}
