//! Modulus sets and their system-level metrics.
//!
//! A [`RnsSystem`] is an ordered set of pairwise-coprime moduli. The range
//! `R` is kept as an exact big integer; every logarithm reported by
//! [`SystemMetrics`] is taken from `R` itself so that wide systems (1900
//! moduli at `Q = 14`) keep their fractional digits.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::digit::Digit;
use crate::error::{Result, RnsError};
use crate::primes::{first_primes, primes_below};

#[derive(Debug)]
pub struct RnsSystem<D: Digit = u32> {
    moduli: Vec<D>,
    range: BigUint,
    half: BigUint,
    bound: BigUint,
    max_modulus: D,
    digit_bits: u32,
    // inverses[i * p + j] = m_i^-1 mod m_j
    inverses: OnceLock<Vec<D>>,
    half_digits: OnceLock<Vec<D>>,
}

impl<D: Digit> PartialEq for RnsSystem<D> {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli
    }
}

impl<D: Digit> Eq for RnsSystem<D> {}

impl<D: Digit> Clone for RnsSystem<D> {
    fn clone(&self) -> Self {
        Self::from_trusted(self.moduli.clone())
    }
}

impl<D: Digit> RnsSystem<D> {
    /// Builds a system from explicit moduli, checking that each is at least 2
    /// and that every pair is coprime.
    pub fn new(moduli: Vec<D>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(RnsError::EmptyDomain("no moduli".into()));
        }
        for &m in &moduli {
            if m < D::from_u64_digit(2) {
                return Err(RnsError::InvalidModulus(m.to_u64_digit()));
            }
        }
        for (i, &a) in moduli.iter().enumerate() {
            for &b in &moduli[i + 1..] {
                if a.to_u64_digit().gcd(&b.to_u64_digit()) != 1 {
                    return Err(RnsError::NotCoprime(a.to_u64_digit(), b.to_u64_digit()));
                }
            }
        }
        Ok(Self::from_trusted(moduli))
    }

    /// Like [`RnsSystem::new`] but from `u64` values, rejecting any that do
    /// not fit the digit type.
    pub fn from_u64(moduli: &[u64]) -> Result<Self> {
        let max = D::max_value().to_u64_digit();
        let digits = moduli
            .iter()
            .map(|&m| {
                if m > max {
                    Err(RnsError::InvalidModulus(m))
                } else {
                    Ok(D::from_u64_digit(m))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits)
    }

    // Moduli already known to be pairwise coprime.
    pub(crate) fn from_trusted(moduli: Vec<D>) -> Self {
        let range = moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc * m.to_u64_digit());
        let half = (&range + 1u32) >> 1;
        let bound = (&range - 1u32) >> 1;
        let max_modulus = moduli.iter().copied().max().expect("nonempty moduli");
        let digit_bits = 64 - max_modulus.to_u64_digit().leading_zeros();
        Self {
            moduli,
            range,
            half,
            bound,
            max_modulus,
            digit_bits,
            inverses: OnceLock::new(),
            half_digits: OnceLock::new(),
        }
    }

    fn from_primes(primes: Vec<u64>) -> Result<Self> {
        let max = D::max_value().to_u64_digit();
        if let Some(&big) = primes.iter().find(|&&p| p > max) {
            return Err(RnsError::InvalidModulus(big));
        }
        Ok(Self::from_trusted(
            primes.into_iter().map(D::from_u64_digit).collect(),
        ))
    }

    /// The natural system: the first `p` primes in order.
    pub fn natural(p: usize) -> Result<Self> {
        Self::from_primes(first_primes(p)?)
    }

    /// Every prime below `2^q`: the largest natural system whose digits fit
    /// in `q` bits.
    pub fn max_for_digit_width(q: u32) -> Result<Self> {
        if !(2..=32).contains(&q) {
            return Err(RnsError::UnsupportedWidth(q));
        }
        Self::from_primes(primes_below(1u64 << q)?)
    }

    /// Every prime below `2^q`, with each prime that has a square below
    /// `2^q` replaced by its largest power below `2^q`.
    pub fn power_augmented(q: u32) -> Result<Self> {
        if !(3..=32).contains(&q) {
            return Err(RnsError::UnsupportedWidth(q));
        }
        let limit = 1u64 << q;
        let moduli = primes_below(limit)?
            .into_iter()
            .map(|p| largest_power_below(p, limit))
            .collect();
        Self::from_primes(moduli)
    }

    /// The `count` largest moduli of [`RnsSystem::power_augmented`], kept in
    /// ascending order.
    pub fn power_augmented_top(q: u32, count: usize) -> Result<Self> {
        let full = Self::power_augmented(q)?;
        if count == 0 || count > full.len() {
            return Err(RnsError::EmptyDomain(format!(
                "cannot select {count} of {} moduli",
                full.len()
            )));
        }
        let mut moduli = full.moduli;
        moduli.sort_unstable();
        let top = moduli.split_off(moduli.len() - count);
        Ok(Self::from_trusted(top))
    }

    pub fn moduli(&self) -> &[D] {
        &self.moduli
    }

    pub fn modulus(&self, i: usize) -> D {
        self.moduli[i]
    }

    /// Number of digits `p`.
    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// The range `R`, the product of every modulus.
    pub fn range(&self) -> &BigUint {
        &self.range
    }

    /// `ceil(R/2)`: nonnegative representatives at or above this decode as
    /// negative.
    pub fn half_range(&self) -> &BigUint {
        &self.half
    }

    /// `floor((R-1)/2)`, the largest magnitude accepted by forward conversion.
    pub fn signed_bound(&self) -> &BigUint {
        &self.bound
    }

    /// The largest modulus `P`.
    pub fn max_modulus(&self) -> D {
        self.max_modulus
    }

    /// Digit encoding width `Q = floor(log2 P) + 1`.
    pub fn digit_bits(&self) -> u32 {
        self.digit_bits
    }

    pub fn index_of(&self, m: D) -> Option<usize> {
        self.moduli.iter().position(|&x| x == m)
    }

    /// Residues of a nonnegative big integer.
    pub fn residues_of(&self, v: &BigUint) -> Vec<D> {
        self.moduli.iter().map(|&m| D::reduce(v, m)).collect()
    }

    pub(crate) fn inverse_table(&self) -> &[D] {
        self.inverses.get_or_init(|| {
            let p = self.moduli.len();
            let mut table = vec![D::zero(); p * p];
            for (i, &mi) in self.moduli.iter().enumerate() {
                for (j, &mj) in self.moduli.iter().enumerate() {
                    if i != j {
                        let r = D::from_u64_digit(mi.to_u64_digit() % mj.to_u64_digit());
                        table[i * p + j] = r.inv_mod(mj).expect("pairwise coprime moduli");
                    }
                }
            }
            table
        })
    }

    /// Sequential mixed-radix conversion visiting the moduli in `order`.
    ///
    /// Returns digits `d_0..d_{k-1}` such that the nonnegative representative
    /// equals `d_0 + d_1 m_{o0} + d_2 m_{o0} m_{o1} + ...`. One stage per
    /// modulus, so exactly `order.len()` digit-steps.
    pub(crate) fn mixed_radix_ordered(&self, residues: &[D], order: &[usize]) -> Vec<D> {
        let p = self.moduli.len();
        let inv = self.inverse_table();
        let mut work: Vec<D> = order.iter().map(|&i| residues[i]).collect();
        for k in 0..order.len() {
            let d = work[k];
            let ik = order[k];
            for t in k + 1..order.len() {
                let jt = order[t];
                let m = self.moduli[jt];
                let d = if d < m { d } else { d % m };
                work[t] = work[t].sub_mod(d, m).mul_mod(inv[ik * p + jt], m);
            }
        }
        work
    }

    /// Mixed-radix digits of a constant `v < R`, computed by repeated
    /// division on the binary side.
    pub(crate) fn mixed_radix_of_big(&self, v: &BigUint, order: &[usize]) -> Vec<D> {
        let mut rest = v.clone();
        order
            .iter()
            .map(|&i| {
                let m = BigUint::from(self.moduli[i].to_u64_digit());
                let (q, r) = rest.div_rem(&m);
                rest = q;
                D::from_u64_digit(r.to_u64().expect("digit below modulus"))
            })
            .collect()
    }

    /// Mixed-radix digits of `ceil(R/2)` in natural order.
    pub(crate) fn half_range_digits(&self) -> &[D] {
        self.half_digits.get_or_init(|| {
            let order: Vec<usize> = (0..self.len()).collect();
            self.mixed_radix_of_big(&self.half, &order)
        })
    }

    pub fn metrics(&self) -> SystemMetrics {
        let p = self.len();
        let q = self.digit_bits;
        let effective_bits = log2_big(&self.range);
        let half_log10 = log2_big(&self.half) * std::f64::consts::LOG10_2;
        let binary_digits = (self.range.clone() - 1u32).bits().div_ceil(q as u64);
        SystemMetrics {
            digits: p,
            max_modulus: self.max_modulus.to_u64_digit(),
            digit_bits: q,
            effective_bits,
            decimal_digits: half_log10.round() as u64,
            efficiency: 100.0 * effective_bits / (p as f64 * q as f64),
            digits_per_bit: p as f64 / effective_bits,
            binary_digits,
        }
    }
}

fn largest_power_below(p: u64, limit: u64) -> u64 {
    let mut v = p;
    while v * p < limit {
        v *= p;
    }
    v
}

/// System-level figures derived from the modulus set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemMetrics {
    /// `p`, the number of residue digits.
    pub digits: usize,
    /// `P`, the largest modulus.
    pub max_modulus: u64,
    /// `Q`, the digit encoding width in bits.
    pub digit_bits: u32,
    /// `n_e = log2 R`.
    pub effective_bits: f64,
    /// Decimal width of the signed magnitude range, `round(log10(R/2))`.
    pub decimal_digits: u64,
    /// Representational efficiency `E_R = 100 log2(R) / (p Q)`, in percent.
    pub efficiency: f64,
    /// `p / n_e`.
    pub digits_per_bit: f64,
    /// Radix-`2^Q` digits needed for the same range, `ceil(n_e / Q)`.
    pub binary_digits: u64,
}

/// `log2` of a big integer from its bit length and leading 64 bits.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return (v.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// Solves `p = n / log2(p)` by fixed-point iteration from
/// `max(2, n / log2 n)` to a relative tolerance of `1e-9`.
pub fn approx_digits(n: f64) -> Result<f64> {
    if !(n >= 2.0) {
        return Err(RnsError::EmptyDomain(format!("bit width {n} below 2")));
    }
    let mut p = (n / n.log2()).max(2.0);
    for _ in 0..200 {
        let next = n / p.log2();
        if (next - p).abs() <= 1e-9 * next.abs() {
            return Ok(next);
        }
        p = next;
    }
    Err(RnsError::NoConvergence(200))
}

/// Digit count predicted by `n / log2(p)` at the true digit count `p`.
pub fn digit_estimate(n: f64, p: usize) -> f64 {
    n / (p as f64).log2()
}

/// Relative gap between the `n / log2(p)` estimate and the true digit count,
/// `1 - p / (n / log2 p)`.
pub fn estimate_divergence(n: f64, p: usize) -> f64 {
    1.0 - p as f64 / digit_estimate(n, p)
}
