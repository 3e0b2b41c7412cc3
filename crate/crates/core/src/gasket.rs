//! The discrete Sierpinski gasket `SG_n`: adjacency, distances to corners, and
//! the closed-form and recursive evaluations of the `p`/`q`/`r` functions.

use num_bigint::BigUint;

use crate::distance::{Distance, PowerSum};
use crate::error::{check_lengths, Error, Result};
use crate::word::{GasketSymbol, GasketWord};

use GasketSymbol::{L, R, T};

/// Distance from `u` to the corner `alpha^n`: the sum of `2^k` over positions
/// `k` (0 = rightmost) where `u` differs from `alpha`.
pub fn f_alpha(u: &GasketWord, alpha: GasketSymbol) -> Distance {
    f_alpha_slice(u.symbols(), alpha)
}

pub(crate) fn f_alpha_slice(u: &[GasketSymbol], alpha: GasketSymbol) -> Distance {
    let mut acc = PowerSum::with_bits(u.len());
    add_f_alpha(&mut acc, u, alpha);
    acc.into_distance()
}

pub(crate) fn add_f_alpha(acc: &mut PowerSum, u: &[GasketSymbol], alpha: GasketSymbol) {
    let n = u.len();
    for (i, &c) in u.iter().enumerate() {
        if c != alpha {
            acc.add_pow2(n - 1 - i);
        }
    }
}

/// Neighbours of `u` in `SG_n`: the two sibling words differing in the last
/// symbol, plus the bridge across the tail when the tail is shorter than `n`.
pub fn sg_neighbors(u: &GasketWord) -> Result<Vec<GasketWord>> {
    let s = u.symbols();
    let n = s.len();
    let Some(&last) = s.last() else {
        return Err(Error::EmptyWord);
    };
    let mut out = Vec::with_capacity(3);
    for beta in GasketSymbol::ALL {
        if beta != last {
            let mut w = s.to_vec();
            w[n - 1] = beta;
            out.push(GasketWord::new(w));
        }
    }
    let tail = s.iter().rev().take_while(|&&c| c == last).count();
    if tail < n {
        let beta = s[n - 1 - tail];
        let mut w = s.to_vec();
        w[n - 1 - tail] = last;
        for c in &mut w[n - tail..] {
            *c = beta;
        }
        out.push(GasketWord::new(w));
    }
    Ok(out)
}

/// True when `a` and `b` are adjacent in `SG_n`.
pub fn sg_adjacent(a: &GasketWord, b: &GasketWord) -> bool {
    a.len() == b.len() && !a.is_empty() && sg_neighbors(a).map(|ns| ns.contains(b)).unwrap_or(false)
}

/// A relabelling of the gasket symbols, applied position-wise to words.
/// `SG_n` is invariant under all six.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relabeling([GasketSymbol; 3]);

impl Relabeling {
    pub const IDENTITY: Relabeling = Relabeling([T, L, R]);

    /// The relabelling sending `a -> T`, `b -> R` and the third symbol to `L`.
    pub fn canonical(a: GasketSymbol, b: GasketSymbol) -> Relabeling {
        debug_assert_ne!(a, b);
        let mut map = [L; 3];
        map[a.index()] = T;
        map[b.index()] = R;
        Relabeling(map)
    }

    pub fn apply(&self, s: GasketSymbol) -> GasketSymbol {
        self.0[s.index()]
    }

    pub fn apply_word(&self, w: &[GasketSymbol]) -> Vec<GasketSymbol> {
        w.iter().map(|&s| self.apply(s)).collect()
    }
}

/// Which of the three functions of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PqrFunction {
    /// `min(f_R(u)+f_T(v), 2^n + f_L(u)+f_L(v))`
    P,
    /// `min(2^n + f_R(u)+f_T(v), f_L(u)+f_L(v))`
    Q,
    /// `min(f_R(u)+f_T(v), f_L(u)+f_L(v))`
    R,
}

/// `f_R(u) + f_T(v)`: cost of crossing the direct bridge.
pub fn alt1_sum(u: &[GasketSymbol], v: &[GasketSymbol]) -> Distance {
    let mut acc = PowerSum::with_bits(u.len() + 1);
    add_f_alpha(&mut acc, u, R);
    add_f_alpha(&mut acc, v, T);
    acc.into_distance()
}

/// `f_L(u) + f_L(v)`: cost of routing through the third sub-triangle.
pub fn alt2_sum(u: &[GasketSymbol], v: &[GasketSymbol]) -> Distance {
    let mut acc = PowerSum::with_bits(u.len() + 1);
    add_f_alpha(&mut acc, u, L);
    add_f_alpha(&mut acc, v, L);
    acc.into_distance()
}

/// Evaluates `p`, `q` or `r` directly from its definition as a minimum.
pub fn pqr_eval(kind: PqrFunction, u: &GasketWord, v: &GasketWord) -> Result<Distance> {
    check_lengths(u.len(), v.len())?;
    Ok(pqr_eval_slices(kind, u.symbols(), v.symbols()))
}

pub(crate) fn pqr_eval_slices(kind: PqrFunction, u: &[GasketSymbol], v: &[GasketSymbol]) -> Distance {
    let n = u.len();
    let a1 = alt1_sum(u, v);
    let a2 = alt2_sum(u, v);
    let bump = |d: Distance| d + Distance::pow2(n);
    match kind {
        PqrFunction::P => a1.min(bump(a2)),
        PqrFunction::Q => bump(a1).min(a2),
        PqrFunction::R => a1.min(a2),
    }
}

/// Evaluates `p`, `q` or `r` by the recursion on the leading pair.
///
/// Must agree with [`pqr_eval`] everywhere; that identity is what the
/// decision machine relies on.
pub fn pqr_recurse(kind: PqrFunction, u: &GasketWord, v: &GasketWord) -> Result<Distance> {
    check_lengths(u.len(), v.len())?;
    let (u, v) = (u.symbols(), v.symbols());
    let mut acc = BigUint::default();
    let mut kind = kind;
    let mut i = 0;
    while i < u.len() {
        let m = u.len() - i;
        let full = BigUint::from(1u8) << m;
        let half = BigUint::from(1u8) << (m - 1);
        let (c, d) = (u[i], v[i]);
        enum Step {
            Alt1,
            Alt2,
            Go(BigUint, PqrFunction),
        }
        use PqrFunction as F;
        let step = match kind {
            F::P => match (c, d) {
                (R, T) | (R, L) | (R, R) | (L, T) | (T, T) | (T, R) => Step::Alt1,
                (T, L) | (L, R) => Step::Go(full, F::P),
                (L, L) => Step::Go(full, F::R),
            },
            F::Q => match (c, d) {
                (L, L) | (L, T) | (L, R) | (R, L) | (T, L) | (T, R) => Step::Alt2,
                (T, T) | (R, R) => Step::Go(full, F::Q),
                (R, T) => Step::Go(full, F::R),
            },
            F::R => match (c, d) {
                (R, T) => Step::Alt1,
                (L, L) => Step::Alt2,
                (L, T) | (R, L) => Step::Go(half, F::R),
                (T, R) => Step::Go(full, F::R),
                (R, R) | (T, T) => Step::Go(half, F::P),
                (T, L) | (L, R) => Step::Go(half, F::Q),
            },
        };
        match step {
            Step::Alt1 => return Ok(Distance::from(acc) + alt1_sum(&u[i..], &v[i..])),
            Step::Alt2 => return Ok(Distance::from(acc) + alt2_sum(&u[i..], &v[i..])),
            Step::Go(w, next) => {
                acc += w;
                kind = next;
            }
        }
        i += 1;
    }
    Ok(Distance::from(acc))
}

/// Shortest-path distance in `SG_n` from the top-level decomposition, using
/// the closed form of `p`. Reference implementation for the machines.
pub fn sg_distance_reference(x: &GasketWord, y: &GasketWord) -> Result<Distance> {
    check_lengths(x.len(), y.len())?;
    let (x, y) = (x.symbols(), y.symbols());
    let Some(split) = x.iter().zip(y).position(|(a, b)| a != b) else {
        return Ok(Distance::zero());
    };
    let map = Relabeling::canonical(x[split], y[split]);
    let xs = map.apply_word(&x[split + 1..]);
    let ys = map.apply_word(&y[split + 1..]);
    Ok(Distance::from(1) + pqr_eval_slices(PqrFunction::P, &xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_gasket_word;
    use proptest::prelude::*;

    fn g(s: &str) -> GasketWord {
        parse_gasket_word(s).unwrap()
    }

    fn d(v: u64) -> Distance {
        Distance::from(v)
    }

    #[test]
    fn corner_distances() {
        assert_eq!(f_alpha(&g("TRL"), L), d(6));
        assert_eq!(f_alpha(&g("TTT"), T), d(0));
        assert_eq!(f_alpha(&g("LL"), R), d(3));
        assert_eq!(f_alpha(&g(""), R), d(0));
    }

    #[test]
    fn neighbors() {
        let mut ns = sg_neighbors(&g("TL")).unwrap();
        ns.sort();
        assert_eq!(ns, vec![g("TT"), g("TR"), g("LT")]);
        let mut ns = sg_neighbors(&g("LL")).unwrap();
        ns.sort();
        assert_eq!(ns, vec![g("LT"), g("LR")]);
        let mut ns = sg_neighbors(&g("T")).unwrap();
        ns.sort();
        assert_eq!(ns, vec![g("L"), g("R")]);
        assert_eq!(sg_neighbors(&g("")), Err(Error::EmptyWord));
        // tail of length 2 inside a word of length 4
        assert!(sg_neighbors(&g("TRLL")).unwrap().contains(&g("TLRR")));
    }

    #[test]
    fn degree_two_only_at_corners() {
        for n in 1..=5 {
            let mut corners = 0;
            for i in 0..3usize.pow(n) {
                let w = GasketWord::from_index(i, n as usize);
                let deg = sg_neighbors(&w).unwrap().len();
                assert!(deg == 2 || deg == 3);
                if deg == 2 {
                    corners += 1;
                    assert!(w.symbols().iter().all(|&s| s == w.symbols()[0]));
                }
            }
            assert_eq!(corners, 3);
        }
    }

    #[test]
    fn pqr_examples() {
        assert_eq!(pqr_eval(PqrFunction::P, &g("L"), &g("L")).unwrap(), d(2));
        assert_eq!(pqr_eval(PqrFunction::R, &g(""), &g("")).unwrap(), d(0));
        assert_eq!(pqr_eval(PqrFunction::Q, &g("T"), &g("T")).unwrap(), d(2));
        assert_eq!(pqr_recurse(PqrFunction::P, &g("L"), &g("L")).unwrap(), d(2));
        assert_eq!(pqr_recurse(PqrFunction::R, &g("T"), &g("R")).unwrap(), d(2));
        assert_eq!(pqr_recurse(PqrFunction::P, &g("T"), &g("L")).unwrap(), d(2));
        assert!(matches!(
            pqr_eval(PqrFunction::P, &g("T"), &g("TT")),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(pqr_recurse(PqrFunction::Q, &g("TL"), &g("T")).is_err());
    }

    #[test]
    fn recursion_matches_closed_form_exhaustively() {
        for n in 0..=6usize {
            let count = 3usize.pow(n as u32);
            for i in 0..count {
                let u = GasketWord::from_index(i, n);
                for j in 0..count {
                    let v = GasketWord::from_index(j, n);
                    for kind in [PqrFunction::P, PqrFunction::Q, PqrFunction::R] {
                        assert_eq!(
                            pqr_recurse(kind, &u, &v).unwrap(),
                            pqr_eval(kind, &u, &v).unwrap(),
                            "{kind:?} {u} {v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reference_distance_examples() {
        assert_eq!(sg_distance_reference(&g("TL"), &g("RL")).unwrap(), d(3));
        assert_eq!(sg_distance_reference(&g("TTTT"), &g("LLLL")).unwrap(), d(15));
        assert_eq!(sg_distance_reference(&g("TLR"), &g("TLR")).unwrap(), d(0));
        assert_eq!(sg_distance_reference(&g(""), &g("")).unwrap(), d(0));
        assert!(sg_distance_reference(&g("TL"), &g("T")).is_err());
    }

    #[test]
    fn canonical_relabeling() {
        let m = Relabeling::canonical(L, T);
        assert_eq!((m.apply(L), m.apply(T), m.apply(R)), (T, R, L));
        assert_eq!(Relabeling::canonical(T, R), Relabeling::IDENTITY);
    }

    fn word(max: usize) -> impl Strategy<Value = GasketWord> {
        proptest::collection::vec(0usize..3, 0..=max)
            .prop_map(|v| GasketWord::new(v.into_iter().map(GasketSymbol::from_index).collect()))
    }

    fn pair(max: usize) -> impl Strategy<Value = (GasketWord, GasketWord)> {
        (1..=max).prop_flat_map(|n| {
            let w = proptest::collection::vec(0usize..3, n)
                .prop_map(|v| GasketWord::new(v.into_iter().map(GasketSymbol::from_index).collect()));
            (w.clone(), w)
        })
    }

    proptest! {
        #[test]
        fn corner_sums(u in word(40)) {
            let n = u.len();
            let bound = Distance::perfect_transfer(n);
            let parts = [f_alpha(&u, T), f_alpha(&u, L), f_alpha(&u, R)];
            for p in &parts {
                prop_assert!(p <= &bound);
            }
            let [a, b, c] = parts;
            prop_assert_eq!(a + b + c, &bound + &bound);
        }

        #[test]
        fn reference_distance_is_symmetric((x, y) in pair(20)) {
            prop_assert_eq!(sg_distance_reference(&x, &y).unwrap(), sg_distance_reference(&y, &x).unwrap());
        }

        #[test]
        fn triangle_inequality(n in 1usize..=10, seeds in proptest::collection::vec(0usize..59049, 3)) {
            let [x, y, z] = [0, 1, 2].map(|i| GasketWord::from_index(seeds[i] % 3usize.pow(n as u32), n));
            let dxz = sg_distance_reference(&x, &z).unwrap();
            let via = sg_distance_reference(&x, &y).unwrap() + sg_distance_reference(&y, &z).unwrap();
            prop_assert!(dxz <= via);
        }
    }

    #[test]
    fn reference_distance_symmetric_exhaustive() {
        for n in 1..=5usize {
            let count = 3usize.pow(n as u32);
            for i in 0..count {
                let x = GasketWord::from_index(i, n);
                for j in 0..count {
                    let y = GasketWord::from_index(j, n);
                    assert_eq!(sg_distance_reference(&x, &y), sg_distance_reference(&y, &x));
                }
            }
        }
    }
}
