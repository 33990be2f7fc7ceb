//! Forward, mixed-radix and reverse conversion; magnitude comparison and
//! base extension.
//!
//! The production reverse path is sequential mixed-radix conversion (MRC):
//! one stage per modulus, so `p` digit-steps. Sign detection compares the
//! mixed-radix digits against those of `ceil(R/2)`, most significant first,
//! which folds into the final stage.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::digit::Digit;
use crate::error::{Result, RnsError};
use crate::int::{same_system, RnsInt};
use crate::steps::{OpKind, StepCounter};
use crate::system::RnsSystem;

/// Positional expansion `X = d_1 + d_2 m_1 + d_3 m_1 m_2 + ...` over the
/// system's moduli in their natural order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadix<D: Digit = u32> {
    system: Arc<RnsSystem<D>>,
    digits: Vec<D>,
}

impl<D: Digit> MixedRadix<D> {
    pub fn new(system: &Arc<RnsSystem<D>>, digits: Vec<D>) -> Result<Self> {
        if digits.len() != system.len() {
            return Err(RnsError::DigitCount {
                expected: system.len(),
                actual: digits.len(),
            });
        }
        for (index, (&d, &m)) in digits.iter().zip(system.moduli()).enumerate() {
            if d >= m {
                return Err(RnsError::InvalidDigit {
                    index,
                    digit: d.to_u64_digit(),
                    modulus: m.to_u64_digit(),
                });
            }
        }
        Ok(Self {
            system: Arc::clone(system),
            digits,
        })
    }

    pub fn system(&self) -> &Arc<RnsSystem<D>> {
        &self.system
    }

    pub fn digits(&self) -> &[D] {
        &self.digits
    }
}

impl<D: Digit> PartialOrd for MixedRadix<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !same_system(&self.system, &other.system) {
            return None;
        }
        Some(cmp_mixed_radix(&self.digits, &other.digits))
    }
}

/// Numeric order of two mixed-radix expansions over the same radices.
pub(crate) fn cmp_mixed_radix<D: Digit>(a: &[D], b: &[D]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Evaluates a mixed-radix expansion (digits over `radices`, least
/// significant first) into residues modulo each of `target`. Horner form,
/// one digit-parallel multiply-add per digit.
pub(crate) fn horner_residues<D: Digit>(digits: &[D], radices: &[D], target: &[D]) -> Vec<D> {
    debug_assert_eq!(digits.len(), radices.len());
    let mut acc = vec![D::zero(); target.len()];
    for k in (0..digits.len()).rev() {
        let d = digits[k].to_u64_digit();
        let below = (k > 0).then(|| radices[k - 1].to_u64_digit());
        for (a, &m) in acc.iter_mut().zip(target) {
            let mu = m.to_u64_digit();
            *a = a.add_mod(D::from_u64_digit(d % mu), m);
            if let Some(r) = below {
                *a = a.mul_mod(D::from_u64_digit(r % mu), m);
            }
        }
    }
    acc
}

/// Binary (big integer) to residue conversion.
///
/// The magnitude is consumed in `Q`-bit chunks, most significant first, with
/// one digit-parallel multiply-add per chunk: `ceil(bitlen / Q)` digit-steps.
pub fn forward_int<D: Digit>(
    x: &BigInt,
    system: &Arc<RnsSystem<D>>,
    steps: &mut StepCounter,
) -> Result<RnsInt<D>> {
    let mag = x.magnitude();
    if mag > system.signed_bound() {
        return Err(RnsError::out_of_range(x, system.signed_bound()));
    }
    let q = system.digit_bits() as u64;
    let chunks = mag.bits().div_ceil(q);
    let mask = (BigUint::from(1u32) << q) - 1u32;
    let base: Vec<D> = system
        .moduli()
        .iter()
        .map(|&m| D::reduce(&(BigUint::from(1u32) << q), m))
        .collect();
    let negative = x.sign() == Sign::Minus;
    let mut acc = vec![D::zero(); system.len()];
    for c in (0..chunks).rev() {
        let chunk = ((mag >> (c * q)) & &mask).to_u64().expect("chunk fits in Q bits");
        for ((a, &m), &b) in acc.iter_mut().zip(system.moduli()).zip(&base) {
            let cm = D::from_u64_digit(chunk % m.to_u64_digit());
            let t = a.mul_mod(b, m);
            *a = if negative { t.sub_mod(cm, m) } else { t.add_mod(cm, m) };
        }
    }
    steps.record(OpKind::Forward, chunks);
    Ok(RnsInt::from_raw(system, acc))
}

pub fn to_mixed_radix<D: Digit>(a: &RnsInt<D>, steps: &mut StepCounter) -> MixedRadix<D> {
    let system = a.system();
    let order: Vec<usize> = (0..system.len()).collect();
    steps.record(OpKind::MixedRadix, system.len() as u64);
    MixedRadix {
        system: Arc::clone(system),
        digits: system.mixed_radix_ordered(a.digits(), &order),
    }
}

/// Evaluates the positional identity exactly.
pub fn from_mixed_radix<D: Digit>(m: &MixedRadix<D>) -> BigUint {
    eval_mixed_radix(&m.digits, m.system.moduli())
}

pub(crate) fn eval_mixed_radix<D: Digit>(digits: &[D], radices: &[D]) -> BigUint {
    let mut acc = BigUint::zero();
    for k in (0..digits.len()).rev() {
        acc *= radices[k].to_u64_digit();
        acc += digits[k].to_u64_digit();
    }
    acc
}

fn is_negative_digits<D: Digit>(system: &RnsSystem<D>, mr: &[D]) -> bool {
    cmp_mixed_radix(mr, system.half_range_digits()) != Ordering::Less
}

/// Nonnegative representative `X` in `[0, R)`; `p` digit-steps.
pub fn reverse_unsigned<D: Digit>(a: &RnsInt<D>, steps: &mut StepCounter) -> BigUint {
    let system = a.system();
    let order: Vec<usize> = (0..system.len()).collect();
    let mr = system.mixed_radix_ordered(a.digits(), &order);
    steps.record(OpKind::Reverse, system.len() as u64);
    eval_mixed_radix(&mr, system.moduli())
}

/// Signed value: `X` if `X < ceil(R/2)`, otherwise `X - R`; `p` digit-steps.
pub fn reverse_int<D: Digit>(a: &RnsInt<D>, steps: &mut StepCounter) -> BigInt {
    let system = a.system();
    let order: Vec<usize> = (0..system.len()).collect();
    let mr = system.mixed_radix_ordered(a.digits(), &order);
    steps.record(OpKind::Reverse, system.len() as u64);
    signed_from_mixed_radix(system, &mr)
}

fn signed_from_mixed_radix<D: Digit>(system: &RnsSystem<D>, mr: &[D]) -> BigInt {
    let x = BigInt::from(eval_mixed_radix(mr, system.moduli()));
    if is_negative_digits(system, mr) {
        x - BigInt::from(system.range().clone())
    } else {
        x
    }
}

/// Sign of the signed decode relative to zero; `p` digit-steps.
pub fn sign<D: Digit>(a: &RnsInt<D>, steps: &mut StepCounter) -> Ordering {
    let system = a.system();
    let order: Vec<usize> = (0..system.len()).collect();
    let mr = system.mixed_radix_ordered(a.digits(), &order);
    steps.record(OpKind::Sign, system.len() as u64);
    if mr.iter().all(|d| d.is_zero()) {
        Ordering::Equal
    } else if is_negative_digits(system, &mr) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Orders two values by their signed decodes.
///
/// Both operands are expanded to mixed radix (`2p` digit-steps). Operands of
/// opposite sign are ordered by sign; operands of equal sign compare their
/// nonnegative representatives, which preserves signed order on each half.
pub fn compare<D: Digit>(a: &RnsInt<D>, b: &RnsInt<D>, steps: &mut StepCounter) -> Result<Ordering> {
    if !same_system(a.system(), b.system()) {
        return Err(RnsError::SystemMismatch);
    }
    let system = a.system();
    let order: Vec<usize> = (0..system.len()).collect();
    let ma = system.mixed_radix_ordered(a.digits(), &order);
    let mb = system.mixed_radix_ordered(b.digits(), &order);
    steps.record(OpKind::Compare, 2 * system.len() as u64);
    let na = is_negative_digits(system, &ma);
    let nb = is_negative_digits(system, &mb);
    Ok(match (na, nb) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => cmp_mixed_radix(&ma, &mb),
    })
}

/// Extends a value held on a subset of moduli to every modulus of `target`.
///
/// The source's nonnegative representative (below the subset's range) is
/// expanded to mixed radix over the subset, then evaluated modulo each target
/// modulus: `k + k` digit-steps for a `k`-modulus source.
pub fn base_extend<D: Digit>(
    a: &RnsInt<D>,
    target: &Arc<RnsSystem<D>>,
    steps: &mut StepCounter,
) -> Result<RnsInt<D>> {
    let source = a.system();
    for &m in source.moduli() {
        if target.index_of(m).is_none() {
            return Err(RnsError::NotSubset(m.to_u64_digit()));
        }
    }
    let order: Vec<usize> = (0..source.len()).collect();
    let mr = source.mixed_radix_ordered(a.digits(), &order);
    let digits = horner_residues(&mr, source.moduli(), target.moduli());
    steps.record(OpKind::BaseExtend, 2 * source.len() as u64);
    Ok(RnsInt::from_raw(target, digits))
}
