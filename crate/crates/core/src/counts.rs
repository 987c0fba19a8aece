//! Nonnegative counters for the family transfer, which only ever adds.
//! Fixed-width limbs avoid a heap allocation per coefficient; `BigUint`
//! covers anything wider.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::One;

pub(crate) trait Count: Clone + Default {
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn to_bigint(&self) -> BigInt;
}

/// Little-endian `64 * L`-bit unsigned integer. Callers pick `L` from an
/// a priori bound; overflow is a logic error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Wide<const L: usize>([u64; L]);

impl<const L: usize> Default for Wide<L> {
    fn default() -> Self {
        Wide([0; L])
    }
}

impl<const L: usize> Count for Wide<L> {
    fn one() -> Self {
        let mut limbs = [0; L];
        limbs[0] = 1;
        Wide(limbs)
    }

    #[inline]
    fn add_assign(&mut self, other: &Self) {
        let mut carry = false;
        for (a, &b) in self.0.iter_mut().zip(other.0.iter()) {
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(u64::from(carry));
            *a = s2;
            carry = c1 || c2;
        }
        debug_assert!(!carry, "counter overflow");
    }

    fn to_bigint(&self) -> BigInt {
        let bytes: Vec<u8> = self.0.iter().flat_map(|x| x.to_le_bytes()).collect();
        BigInt::from_bytes_le(Sign::Plus, &bytes)
    }
}

impl Count for BigUint {
    fn one() -> Self {
        One::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_propagate() {
        let mut x = Wide::<3>([u64::MAX, u64::MAX, 0]);
        x.add_assign(&Wide::<3>::one());
        assert_eq!(x, Wide([0, 0, 1]));
        assert_eq!(x.to_bigint(), BigInt::from(1u8) << 128);
        assert_eq!(Wide::<2>::default().to_bigint(), BigInt::from(0u8));
    }

    #[test]
    fn agrees_with_biguint() {
        let mut w = Wide::<2>::one();
        let mut b = <BigUint as Count>::one();
        for _ in 0..100 {
            let (w2, b2) = (w, b.clone());
            w.add_assign(&w2);
            Count::add_assign(&mut b, &b2);
            w.add_assign(&Wide::one());
            Count::add_assign(&mut b, &<BigUint as Count>::one());
        }
        assert_eq!(w.to_bigint(), b.to_bigint());
    }
}
