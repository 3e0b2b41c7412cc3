//! Vertex labels for the two graphs.
//!
//! Both word types store the most significant symbol first: index 0 of a
//! [`HanoiWord`] is the peg of the largest disc, index 0 of a [`GasketWord`]
//! selects the top-level sub-triangle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the three gasket symbols: top, left, right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GasketSymbol {
    T,
    L,
    R,
}

impl GasketSymbol {
    pub const ALL: [GasketSymbol; 3] = [GasketSymbol::T, GasketSymbol::L, GasketSymbol::R];

    /// Base-3 digit used for vertex indexing (T=0, L=1, R=2).
    pub fn index(self) -> usize {
        match self {
            GasketSymbol::T => 0,
            GasketSymbol::L => 1,
            GasketSymbol::R => 2,
        }
    }

    pub fn from_index(i: usize) -> GasketSymbol {
        GasketSymbol::ALL[i]
    }

    pub fn as_char(self) -> char {
        match self {
            GasketSymbol::T => 'T',
            GasketSymbol::L => 'L',
            GasketSymbol::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<GasketSymbol> {
        match c {
            'T' => Some(GasketSymbol::T),
            'L' => Some(GasketSymbol::L),
            'R' => Some(GasketSymbol::R),
            _ => None,
        }
    }

    /// The symbol that is neither `self` nor `other`. Requires `self != other`.
    pub fn third(self, other: GasketSymbol) -> GasketSymbol {
        debug_assert_ne!(self, other);
        GasketSymbol::from_index(3 - self.index() - other.index())
    }
}

impl fmt::Display for GasketSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A vertex of the discrete Sierpinski gasket of level `n = len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GasketWord(Vec<GasketSymbol>);

impl GasketWord {
    pub fn new(symbols: Vec<GasketSymbol>) -> Self {
        GasketWord(symbols)
    }

    /// The constant word `alpha^n`, a corner of the gasket.
    pub fn corner(alpha: GasketSymbol, n: usize) -> Self {
        GasketWord(vec![alpha; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[GasketSymbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<GasketSymbol> {
        self.0
    }

    /// Decodes a base-3 vertex index (most significant digit first).
    pub fn from_index(mut index: usize, n: usize) -> Self {
        let mut symbols = vec![GasketSymbol::T; n];
        for slot in symbols.iter_mut().rev() {
            *slot = GasketSymbol::from_index(index % 3);
            index /= 3;
        }
        GasketWord(symbols)
    }

    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, s| acc * 3 + s.index())
    }
}

impl FromStr for GasketWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gasket_word(s)
    }
}

impl fmt::Display for GasketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Parses an uppercase `T`/`L`/`R` string.
pub fn parse_gasket_word(text: &str) -> Result<GasketWord> {
    text.chars()
        .enumerate()
        .map(|(i, c)| GasketSymbol::from_char(c).ok_or(Error::InvalidSymbol(i)))
        .collect::<Result<Vec<_>>>()
        .map(GasketWord)
}

/// A peg label in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PegId(u8);

impl PegId {
    pub const ALL: [PegId; 3] = [PegId(0), PegId(1), PegId(2)];

    pub fn new(value: u8) -> Result<Self> {
        if value < 3 {
            Ok(PegId(value))
        } else {
            Err(Error::InvalidPeg(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The peg that is neither `self` nor `other`. Requires `self != other`.
    pub fn third(self, other: PegId) -> PegId {
        debug_assert_ne!(self, other);
        PegId(3 - self.0 - other.0)
    }
}

impl fmt::Display for PegId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Tower of Hanoi state: `pegs()[0]` is the peg of the largest disc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HanoiWord(Vec<PegId>);

impl HanoiWord {
    pub fn new(pegs: Vec<PegId>) -> Self {
        HanoiWord(pegs)
    }

    /// All `n` discs stacked on `peg`.
    pub fn perfect(peg: PegId, n: usize) -> Self {
        HanoiWord(vec![peg; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pegs(&self) -> &[PegId] {
        &self.0
    }

    pub(crate) fn pegs_mut(&mut self) -> &mut [PegId] {
        &mut self.0
    }

    pub fn from_index(mut index: usize, n: usize) -> Self {
        let mut pegs = vec![PegId(0); n];
        for slot in pegs.iter_mut().rev() {
            *slot = PegId((index % 3) as u8);
            index /= 3;
        }
        HanoiWord(pegs)
    }

    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 3 + p.index())
    }

    /// Word index holding disc `disc` (disc `n` is the largest, at index 0).
    pub fn index_of_disc(&self, disc: usize) -> usize {
        self.len() - disc
    }
}

impl FromStr for HanoiWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hanoi_word(s)
    }
}

impl fmt::Display for HanoiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.0)?;
        }
        Ok(())
    }
}

/// Parses a string of `0`/`1`/`2` digits.
pub fn parse_hanoi_word(text: &str) -> Result<HanoiWord> {
    text.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(PegId(0)),
            '1' => Ok(PegId(1)),
            '2' => Ok(PegId(2)),
            _ => Err(Error::InvalidSymbol(i)),
        })
        .collect::<Result<Vec<_>>>()
        .map(HanoiWord)
}
