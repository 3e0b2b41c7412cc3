use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// A shortest-path length. Distances in the n-disc graph reach `2^n - 1`,
/// so the value is arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Distance(BigUint);

impl Distance {
    pub fn zero() -> Self {
        Distance(BigUint::zero())
    }

    pub fn pow2(k: usize) -> Self {
        let mut v = BigUint::zero();
        v.set_bit(k as u64, true);
        Distance(v)
    }

    /// `2^n - 1`, the distance between two distinct perfect states.
    pub fn perfect_transfer(n: usize) -> Self {
        Distance((BigUint::from(1u8) << n) - 1u8)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl From<u64> for Distance {
    fn from(v: u64) -> Self {
        Distance(BigUint::from(v))
    }
}

impl From<BigUint> for Distance {
    fn from(v: BigUint) -> Self {
        Distance(v)
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        Distance(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Distance> for &'a Distance {
    type Output = Distance;

    fn add(self, rhs: &Distance) -> Distance {
        Distance(&self.0 + &rhs.0)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Decimal string: distances overflow JSON's safe integer range.
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// Accumulates a sum of powers of two in a fixed limb buffer.
///
/// The machines only ever add `2^k` terms, so this avoids a big-integer
/// allocation per addition.
#[derive(Debug, Clone)]
pub(crate) struct PowerSum {
    limbs: Vec<u32>,
}

impl PowerSum {
    /// Preallocates room for sums below `2^max_bits`; grows on demand.
    pub(crate) fn with_bits(max_bits: usize) -> Self {
        PowerSum { limbs: vec![0; max_bits / 32 + 2] }
    }

    pub(crate) fn add_pow2(&mut self, k: usize) {
        let mut limb = k / 32;
        if limb >= self.limbs.len() {
            self.limbs.resize(limb + 2, 0);
        }
        let (sum, mut carry) = self.limbs[limb].overflowing_add(1 << (k % 32));
        self.limbs[limb] = sum;
        while carry {
            limb += 1;
            if limb == self.limbs.len() {
                self.limbs.push(0);
            }
            let (sum, c) = self.limbs[limb].overflowing_add(1);
            self.limbs[limb] = sum;
            carry = c;
        }
    }

    pub(crate) fn into_distance(self) -> Distance {
        Distance(BigUint::new(self.limbs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_transfer_values() {
        assert_eq!(Distance::perfect_transfer(0), Distance::zero());
        assert_eq!(Distance::perfect_transfer(4).to_u64(), Some(15));
        assert_eq!(Distance::perfect_transfer(70), Distance::from((BigUint::from(1u8) << 70usize) - 1u8));
    }

    #[test]
    fn serializes_as_string() {
        let d = Distance::from(12345u64);
        assert_eq!(serde_json::to_string(&d).unwrap(), "\"12345\"");
    }

    proptest! {
        #[test]
        fn power_sum_matches_bigint(exps in proptest::collection::vec(0usize..200, 0..60)) {
            let mut acc = PowerSum::with_bits(8);
            let mut expected = BigUint::zero();
            for &k in &exps {
                acc.add_pow2(k);
                expected += BigUint::from(1u8) << k;
            }
            prop_assert_eq!(acc.into_distance(), Distance::from(expected));
        }
    }
}
