//! Arbitrary-precision reference arithmetic, independent of the library's
//! conversion paths: residues by direct reduction, reconstruction by the
//! Chinese remainder sum.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub struct Oracle {
    moduli: Vec<BigInt>,
    range: BigInt,
    // M_i * (M_i^-1 mod m_i), with M_i = R / m_i
    basis: Vec<BigInt>,
}

impl Oracle {
    pub fn new(moduli: &[u64]) -> Self {
        let moduli: Vec<BigInt> = moduli.iter().map(|&m| BigInt::from(m)).collect();
        let range = moduli.iter().fold(BigInt::one(), |a, m| a * m);
        let basis = moduli
            .iter()
            .map(|m| {
                let big_m = &range / m;
                let e = (&big_m % m).extended_gcd(m);
                assert!(e.gcd.is_one(), "moduli must be coprime");
                big_m * e.x.mod_floor(m)
            })
            .collect();
        Self {
            moduli,
            range,
            basis,
        }
    }

    pub fn range(&self) -> &BigInt {
        &self.range
    }

    /// `(R - 1) / 2`.
    pub fn bound(&self) -> BigInt {
        (&self.range - 1) / 2
    }

    pub fn residues(&self, v: &BigInt) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|m| u32::try_from(v.mod_floor(m)).unwrap())
            .collect()
    }

    /// Unsigned representative in `[0, R)`.
    pub fn crt(&self, residues: &[u32]) -> BigInt {
        residues
            .iter()
            .zip(&self.basis)
            .fold(BigInt::zero(), |acc, (&r, b)| acc + b * r)
            .mod_floor(&self.range)
    }

    /// Signed value: representatives at or above `ceil(R/2)` are negative.
    pub fn signed(&self, residues: &[u32]) -> BigInt {
        self.wrap(&self.crt(residues))
    }

    /// Reduces into the signed range the way residue arithmetic wraps.
    pub fn wrap(&self, v: &BigInt) -> BigInt {
        let u = v.mod_floor(&self.range);
        if &u * 2 >= self.range {
            u - &self.range
        } else {
            u
        }
    }
}

/// Nearest integer, ties away from zero: `sign(x) * floor((2|a| + b) / 2b)`
/// for `x = a/b`.
pub fn round_away(x: &BigRational) -> BigInt {
    let (a, b) = (x.numer().abs(), x.denom().abs());
    let mag = (a * BigInt::from(2) + &b).div_floor(&(b * BigInt::from(2)));
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}
