//! Explicit shortest move sequences, and the two-alternative baseline that
//! prices both routes for the largest differing disc.

use serde::Serialize;

use crate::decision::Verdict;
use crate::distance::{Distance, PowerSum};
use crate::error::{check_lengths, Error, Result};
use crate::machine::{decide_hanoi, Alternative};
use crate::moves::{Move, MovePath};
use crate::transducer::{sg_to_hanoi, HanoiToGasket, PegPermutation};
use crate::word::{GasketWord, HanoiWord, PegId};

/// Appends the standard `2^k - 1` move transfer of discs `k..=1` from `from`
/// to `to`.
pub fn canonical_transfer(k: usize, from: PegId, to: PegId, out: &mut Vec<Move>) {
    if k == 0 {
        return;
    }
    let via = from.third(to);
    canonical_transfer(k - 1, from, via, out);
    out.push(Move::unchecked(k as u32, from, to));
    canonical_transfer(k - 1, via, to, out);
}

/// Moves taking the discs in `pegs` (largest first, disc numbers
/// `pegs.len()..=1`) onto `target`.
fn p1_moves(pegs: &[PegId], target: PegId, out: &mut Vec<Move>) {
    let Some(i) = pegs.iter().position(|&p| p != target) else {
        return;
    };
    let disc = pegs.len() - i;
    let source = pegs[i];
    let spare = source.third(target);
    p1_moves(&pegs[i + 1..], spare, out);
    out.push(Move::unchecked(disc as u32, source, target));
    canonical_transfer(disc - 1, spare, target, out);
}

/// A shortest path from `x` to the perfect state on `target`.
pub fn p1_path(x: &HanoiWord, target: PegId) -> MovePath {
    let mut moves = Vec::new();
    p1_moves(x.pegs(), target, &mut moves);
    MovePath::new(x.clone(), moves)
}

fn append_reversed(out: &mut Vec<Move>, forward: Vec<Move>) {
    out.extend(forward.into_iter().rev().map(|m| m.reversed()));
}

/// A shortest path from `x` to `y`, using Alternative 1 on a draw.
pub fn p2_path(x: &HanoiWord, y: &HanoiWord) -> Result<MovePath> {
    let alt = match decide_hanoi(x, y)?.verdict {
        Verdict::Twice => Alternative::Two,
        _ => Alternative::One,
    };
    p2_path_for(x, y, alt)
}

/// The path from `x` to `y` that moves the largest differing disc once
/// ([`Alternative::One`]) or twice ([`Alternative::Two`]). Only the
/// alternative chosen by the decision machine is guaranteed shortest.
pub fn p2_path_for(x: &HanoiWord, y: &HanoiWord, alt: Alternative) -> Result<MovePath> {
    check_lengths(x.len(), y.len())?;
    let (xp, yp) = (x.pegs(), y.pegs());
    let Some(i) = xp.iter().zip(yp).position(|(a, b)| a != b) else {
        return Ok(MovePath::new(x.clone(), Vec::new()));
    };
    let disc = x.len() - i;
    let (s, t) = (xp[i], yp[i]);
    let o = s.third(t);
    let (x_rest, y_rest) = (&xp[i + 1..], &yp[i + 1..]);
    let mut moves = Vec::new();
    match alt {
        Alternative::One => {
            p1_moves(x_rest, o, &mut moves);
            moves.push(Move::unchecked(disc as u32, s, t));
            let mut back = Vec::new();
            p1_moves(y_rest, o, &mut back);
            append_reversed(&mut moves, back);
        }
        Alternative::Two => {
            p1_moves(x_rest, t, &mut moves);
            moves.push(Move::unchecked(disc as u32, s, o));
            canonical_transfer(disc - 1, t, s, &mut moves);
            moves.push(Move::unchecked(disc as u32, o, t));
            let mut back = Vec::new();
            p1_moves(y_rest, s, &mut back);
            append_reversed(&mut moves, back);
        }
    }
    Ok(MovePath::new(x.clone(), moves))
}

/// Lengths of both candidate routes for the largest differing disc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternativeCosts {
    pub alt1: Distance,
    pub alt2: Distance,
    pub minimum: Distance,
    /// Symbols of `x` and `y` read to produce the costs.
    pub symbols_read: usize,
}

impl AlternativeCosts {
    pub fn verdict(&self) -> Verdict {
        match self.alt1.cmp(&self.alt2) {
            std::cmp::Ordering::Less => Verdict::Once,
            std::cmp::Ordering::Greater => Verdict::Twice,
            std::cmp::Ordering::Equal => Verdict::Draw,
        }
    }
}

/// Distance from `pegs` to the perfect state on `target`, read once through
/// the transducer.
fn p1_distance(pegs: &[PegId], target: PegId, reads: &mut usize) -> PowerSum {
    let corner = PegPermutation::START.image(target);
    let n = pegs.len();
    let mut acc = PowerSum::with_bits(n + 1);
    for (i, sym) in HanoiToGasket::new(pegs.iter().copied()).enumerate() {
        *reads += 1;
        if sym != corner {
            acc.add_pow2(n - 1 - i);
        }
    }
    acc
}

/// Prices both alternatives in full, with no early exit. This is the
/// comparison baseline for the decision machine.
pub fn both_alternative_costs(x: &HanoiWord, y: &HanoiWord) -> Result<AlternativeCosts> {
    check_lengths(x.len(), y.len())?;
    let (xp, yp) = (x.pegs(), y.pegs());
    let mut reads = 0;
    let mut split = None;
    for (i, (a, b)) in xp.iter().zip(yp).enumerate() {
        reads += 2;
        if a != b {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or(Error::IdenticalStates)?;
    let disc = x.len() - i;
    let (s, t) = (xp[i], yp[i]);
    let o = s.third(t);
    let (x_rest, y_rest) = (&xp[i + 1..], &yp[i + 1..]);

    let mut alt1 = p1_distance(x_rest, o, &mut reads);
    alt1.add_pow2(0);
    let alt1 = alt1.into_distance() + p1_distance(y_rest, o, &mut reads).into_distance();

    let mut alt2 = p1_distance(x_rest, t, &mut reads);
    alt2.add_pow2(0);
    alt2.add_pow2(disc - 1);
    let alt2 = alt2.into_distance() + p1_distance(y_rest, s, &mut reads).into_distance();

    let minimum = alt1.clone().min(alt2.clone());
    Ok(AlternativeCosts { alt1, alt2, minimum, symbols_read: reads })
}

/// [`both_alternative_costs`] for gasket labels.
pub fn both_alternative_costs_sg(x: &GasketWord, y: &GasketWord) -> Result<AlternativeCosts> {
    check_lengths(x.len(), y.len())?;
    both_alternative_costs(&sg_to_hanoi(x), &sg_to_hanoi(y))
}
