//! Residue digit words.
//!
//! Every residue digit is an unsigned machine word strictly below its
//! modulus. Products are formed in the next wider type, so a `u32` digit
//! multiplies through `u64` and a `u64` digit through `u128`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{PrimInt, ToPrimitive, Unsigned};

pub trait Digit:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless widening to `u64`.
    fn to_u64_digit(self) -> u64;

    /// Narrowing from `u64`. Callers guarantee the value fits.
    fn from_u64_digit(v: u64) -> Self;

    fn mul_mod(self, rhs: Self, m: Self) -> Self;

    #[inline]
    fn add_mod(self, rhs: Self, m: Self) -> Self {
        let (a, b, m) = (self.to_u64_digit(), rhs.to_u64_digit(), m.to_u64_digit());
        let s = a as u128 + b as u128;
        Self::from_u64_digit((s % m as u128) as u64)
    }

    #[inline]
    fn sub_mod(self, rhs: Self, m: Self) -> Self {
        if self >= rhs {
            self - rhs
        } else {
            m - (rhs - self)
        }
    }

    #[inline]
    fn neg_mod(self, m: Self) -> Self {
        if self.is_zero() {
            self
        } else {
            m - self
        }
    }

    /// Multiplicative inverse modulo `m`, if `self` and `m` are coprime.
    fn inv_mod(self, m: Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.to_u64_digit() as i128, self.to_u64_digit() as i128 % m.to_u64_digit() as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        let m = m.to_u64_digit() as i128;
        Some(Self::from_u64_digit(t0.rem_euclid(m) as u64))
    }

    /// Reduces a big integer modulo `m`.
    fn reduce(v: &BigUint, m: Self) -> Self {
        let r = v % BigUint::from(m.to_u64_digit());
        Self::from_u64_digit(r.to_u64().expect("residue below modulus"))
    }
}

macro_rules! impl_digit {
    ($($t:ty => $wide:ty),*) => {$(
        impl Digit for $t {
            #[inline]
            fn to_u64_digit(self) -> u64 {
                self as u64
            }

            #[inline]
            fn from_u64_digit(v: u64) -> Self {
                debug_assert!(v <= <$t>::MAX as u64);
                v as $t
            }

            #[inline]
            fn mul_mod(self, rhs: Self, m: Self) -> Self {
                ((self as $wide * rhs as $wide) % m as $wide) as $t
            }
        }
    )*};
}

impl_digit!(u16 => u32, u32 => u64, u64 => u128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_ops_u32() {
        assert_eq!(6u32.add_mod(5, 7), 4);
        assert_eq!(2u32.sub_mod(5, 7), 4);
        assert_eq!(0u32.neg_mod(7), 0);
        assert_eq!(3u32.neg_mod(7), 4);
        assert_eq!(6u32.mul_mod(6, 7), 1);
    }

    #[test]
    fn wide_products_do_not_overflow() {
        let m = u64::MAX - 58; // largest prime below 2^64
        assert_eq!((m - 1).mul_mod(m - 1, m), 1);
        assert_eq!((m - 1).add_mod(m - 1, m), m - 2);
        let m16 = 65521u16;
        assert_eq!((m16 - 1).mul_mod(m16 - 1, m16), 1);
    }

    #[test]
    fn inverses() {
        assert_eq!(3u32.inv_mod(7), Some(5));
        assert_eq!(2u32.inv_mod(4), None);
        assert_eq!(10u16.inv_mod(7), Some(5));
        for m in [5u64, 251, 509, 16381] {
            for a in 1..m.min(300) {
                let inv = a.inv_mod(m).unwrap();
                assert_eq!(a.mul_mod(inv, m), 1);
            }
        }
    }

    #[test]
    fn reduce_big() {
        let v = BigUint::from(1u64 << 40) + 17u32;
        assert_eq!(u32::reduce(&v, 509), (((1u128 << 40) + 17) % 509) as u32);
    }
}
