//! Carry-free signed integers.
//!
//! Each operation acts on every residue channel independently, so add, sub,
//! mul and scalar mul cost exactly one digit-step whatever the digit count.
//! Results wrap modulo `R`; keeping values inside `[-(R-1)/2, (R-1)/2]` is
//! the caller's concern.

use std::fmt;
use std::ops;
use std::sync::Arc;

use crate::digit::Digit;
use crate::error::{Result, RnsError};
use crate::steps::{OpKind, StepCounter};
use crate::system::RnsSystem;

#[derive(Clone)]
pub struct RnsInt<D: Digit = u32> {
    system: Arc<RnsSystem<D>>,
    digits: Vec<D>,
}

pub(crate) fn same_system<D: Digit>(a: &Arc<RnsSystem<D>>, b: &Arc<RnsSystem<D>>) -> bool {
    Arc::ptr_eq(a, b) || a.moduli() == b.moduli()
}

impl<D: Digit> RnsInt<D> {
    pub fn zero(system: &Arc<RnsSystem<D>>) -> Self {
        Self {
            system: Arc::clone(system),
            digits: vec![D::zero(); system.len()],
        }
    }

    pub fn from_digits(system: &Arc<RnsSystem<D>>, digits: Vec<D>) -> Result<Self> {
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
        Ok(Self::from_raw(system, digits))
    }

    pub(crate) fn from_raw(system: &Arc<RnsSystem<D>>, digits: Vec<D>) -> Self {
        debug_assert_eq!(digits.len(), system.len());
        Self {
            system: Arc::clone(system),
            digits,
        }
    }

    /// Residues of a machine integer, reduced channel by channel.
    pub fn from_i64(system: &Arc<RnsSystem<D>>, v: i64) -> Self {
        let digits = system.moduli().iter().map(|&m| reduce_i64(v, m)).collect();
        Self::from_raw(system, digits)
    }

    pub fn system(&self) -> &Arc<RnsSystem<D>> {
        &self.system
    }

    pub fn digits(&self) -> &[D] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<D> {
        self.digits
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if same_system(&self.system, &rhs.system) {
            Ok(())
        } else {
            Err(RnsError::SystemMismatch)
        }
    }

    pub(crate) fn zip_with(&self, rhs: &Self, f: impl Fn(D, D, D) -> D) -> Self {
        let digits = self
            .digits
            .iter()
            .zip(&rhs.digits)
            .zip(self.system.moduli())
            .map(|((&a, &b), &m)| f(a, b, m))
            .collect();
        Self::from_raw(&self.system, digits)
    }

    pub(crate) fn map_digits(&self, f: impl Fn(D, D) -> D) -> Self {
        let digits = self
            .digits
            .iter()
            .zip(self.system.moduli())
            .map(|(&a, &m)| f(a, m))
            .collect();
        Self::from_raw(&self.system, digits)
    }

    pub fn add(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        steps.record(OpKind::Add, 1);
        Ok(self.zip_with(rhs, D::add_mod))
    }

    pub fn sub(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        steps.record(OpKind::Sub, 1);
        Ok(self.zip_with(rhs, D::sub_mod))
    }

    pub fn mul(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        steps.record(OpKind::Mul, 1);
        Ok(self.zip_with(rhs, D::mul_mod))
    }

    pub fn neg(&self, steps: &mut StepCounter) -> Self {
        steps.record(OpKind::Neg, 1);
        self.map_digits(D::neg_mod)
    }

    /// Multiplies by a machine integer; the scalar's residues are formed on
    /// the fly, so this is still a single digit-step.
    pub fn mul_small(&self, k: i64, steps: &mut StepCounter) -> Self {
        steps.record(OpKind::MulSmall, 1);
        self.map_digits(|a, m| a.mul_mod(reduce_i64(k, m), m))
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| d.is_zero())
    }

    /// Digit-wise equality; errors when the systems differ.
    pub fn try_eq(&self, rhs: &Self) -> Result<bool> {
        self.check(rhs)?;
        Ok(self.digits == rhs.digits)
    }
}

pub(crate) fn reduce_i64<D: Digit>(v: i64, m: D) -> D {
    let r = (v as i128).rem_euclid(m.to_u64_digit() as i128);
    D::from_u64_digit(r as u64)
}

impl<D: Digit> PartialEq for RnsInt<D> {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.system, &other.system) && self.digits == other.digits
    }
}

impl<D: Digit> Eq for RnsInt<D> {}

impl<D: Digit> fmt::Debug for RnsInt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RnsInt{:?}", self.digits)
    }
}

impl<D: Digit> fmt::Display for RnsInt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

// Operator forms skip instrumentation and panic on mismatched systems.
macro_rules! binop {
    ($tr:ident, $method:ident, $f:path) => {
        impl<'a, D: Digit> ops::$tr<&'a RnsInt<D>> for &'a RnsInt<D> {
            type Output = RnsInt<D>;

            fn $method(self, rhs: &'a RnsInt<D>) -> RnsInt<D> {
                self.check(rhs).expect("operands share a residue system");
                self.zip_with(rhs, $f)
            }
        }

        impl<D: Digit> ops::$tr for RnsInt<D> {
            type Output = RnsInt<D>;

            fn $method(self, rhs: RnsInt<D>) -> RnsInt<D> {
                ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, D::add_mod);
binop!(Sub, sub, D::sub_mod);
binop!(Mul, mul, D::mul_mod);

impl<D: Digit> ops::Neg for &RnsInt<D> {
    type Output = RnsInt<D>;

    fn neg(self) -> RnsInt<D> {
        self.map_digits(D::neg_mod)
    }
}

impl<D: Digit> ops::Neg for RnsInt<D> {
    type Output = RnsInt<D>;

    fn neg(self) -> RnsInt<D> {
        -&self
    }
}
