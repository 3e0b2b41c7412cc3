//! The letter-to-letter transducer carrying Hanoi states onto gasket words.
//!
//! The internal state is a bijection from pegs to gasket symbols. Reading a
//! peg emits its current image, then swaps the images of the other two pegs.
//! Each transition is therefore an involution.

use std::fmt;

use crate::word::{GasketSymbol, GasketWord, HanoiWord, PegId};

/// A bijection `{0,1,2} -> {T,L,R}`; one of the six transducer states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PegPermutation([GasketSymbol; 3]);

impl PegPermutation {
    /// `0=T, 1=L, 2=R`.
    pub const START: PegPermutation = PegPermutation([GasketSymbol::T, GasketSymbol::L, GasketSymbol::R]);

    /// Builds a permutation from the images of pegs 0, 1, 2. Returns `None`
    /// unless the images are distinct.
    pub fn new(images: [GasketSymbol; 3]) -> Option<Self> {
        let distinct = images[0] != images[1] && images[1] != images[2] && images[0] != images[2];
        distinct.then_some(PegPermutation(images))
    }

    /// All six states.
    pub fn all() -> [PegPermutation; 6] {
        use GasketSymbol::*;
        [[T, L, R], [T, R, L], [L, T, R], [L, R, T], [R, T, L], [R, L, T]].map(PegPermutation)
    }

    pub fn image(&self, peg: PegId) -> GasketSymbol {
        self.0[peg.index()]
    }

    /// The unique peg whose image is `symbol`.
    pub fn preimage(&self, symbol: GasketSymbol) -> PegId {
        let i = self.0.iter().position(|&s| s == symbol).expect("bijection");
        PegId::ALL[i]
    }

    fn swapped_except(&self, fixed: PegId) -> PegPermutation {
        let mut next = self.0;
        let (a, b) = match fixed.index() {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        next.swap(a, b);
        PegPermutation(next)
    }
}

impl fmt::Display for PegPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0={} 1={} 2={}", self.0[0], self.0[1], self.0[2])
    }
}

/// One transducer transition: emit the image of `input`, then fix that image
/// and exchange the other two.
pub fn transducer_step(state: PegPermutation, input: PegId) -> (GasketSymbol, PegPermutation) {
    (state.image(input), state.swapped_except(input))
}

/// Translates a Hanoi state into the label of the corresponding gasket vertex.
pub fn hanoi_to_sg(h: &HanoiWord) -> GasketWord {
    GasketWord::new(HanoiToGasket::new(h.pegs().iter().copied()).collect())
}

/// Inverse of [`hanoi_to_sg`].
pub fn sg_to_hanoi(g: &GasketWord) -> HanoiWord {
    let mut state = PegPermutation::START;
    let pegs = g
        .symbols()
        .iter()
        .map(|&s| {
            let peg = state.preimage(s);
            state = transducer_step(state, peg).1;
            peg
        })
        .collect();
    HanoiWord::new(pegs)
}

/// Streaming form of [`hanoi_to_sg`]: translates pegs lazily, one per `next`.
#[derive(Debug, Clone)]
pub struct HanoiToGasket<I> {
    pegs: I,
    state: PegPermutation,
}

impl<I: Iterator<Item = PegId>> HanoiToGasket<I> {
    pub fn new(pegs: I) -> Self {
        HanoiToGasket { pegs, state: PegPermutation::START }
    }

    pub fn state(&self) -> PegPermutation {
        self.state
    }
}

impl<I: Iterator<Item = PegId>> Iterator for HanoiToGasket<I> {
    type Item = GasketSymbol;

    fn next(&mut self) -> Option<GasketSymbol> {
        let peg = self.pegs.next()?;
        let (out, next) = transducer_step(self.state, peg);
        self.state = next;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.pegs.size_hint()
    }
}
