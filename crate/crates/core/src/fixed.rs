//! Fixed-point fractional residue arithmetic.
//!
//! A [`FracSplit`] partitions the moduli into a fractional set with product
//! `F` and a whole set with product `W`, `F * W = R`. An [`RnsFixed`] stores
//! the value `x` as the integer payload `round(x * F)`, so one unit in the
//! last place is `1/F`.
//!
//! Addition, subtraction and integer multiples act on the payload directly
//! and are exact. A fractional product leaves a payload scaled by `F^2`;
//! [`scale_by_f`] divides it back down by `F` with one round-half-away step.
//! Scaling runs a single mixed-radix conversion with the fractional moduli
//! first: the low `p_f` digits are the remainder modulo `F`, the high digits
//! the quotient, and the same pass yields the sign.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::convert::{cmp_mixed_radix, eval_mixed_radix, forward_int, horner_residues, reverse_int};
use crate::digit::Digit;
use crate::error::{Result, RnsError};
use crate::int::{same_system, RnsInt};
use crate::primes::{factorize, is_prime};
use crate::steps::{OpKind, StepCounter};
use crate::system::RnsSystem;

pub struct FracSplit<D: Digit = u32> {
    system: Arc<RnsSystem<D>>,
    fractional: Vec<usize>,
    whole: Vec<usize>,
    // fractional indices, then whole indices
    order: Vec<usize>,
    frac_range: BigUint,
    whole_range: BigUint,
    // mixed-radix digits in `order`
    half_digits: Vec<D>,
    // remainder thresholds over the fractional prefix
    round_up_digits: Vec<D>,
    half_down_digits: Vec<D>,
    // W mod m on fractional channels, zero on whole channels
    wrap: Vec<D>,
    whole_radices: Vec<D>,
    division: OnceLock<std::result::Result<DivContext<D>, RnsError>>,
}

impl<D: Digit> fmt::Debug for FracSplit<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FracSplit")
            .field("fractional", &self.fractional_moduli())
            .field("whole", &self.whole_moduli())
            .finish()
    }
}

impl<D: Digit> FracSplit<D> {
    /// Uses the given moduli as the fractional set; the rest are whole.
    /// Both sets must be nonempty.
    pub fn new(system: &Arc<RnsSystem<D>>, fractional_moduli: &[D]) -> Result<Self> {
        let mut fractional = Vec::with_capacity(fractional_moduli.len());
        for &m in fractional_moduli {
            let i = system
                .index_of(m)
                .ok_or(RnsError::NotSubset(m.to_u64_digit()))?;
            if fractional.contains(&i) {
                return Err(RnsError::InvalidSplit(format!("modulus {m} listed twice")));
            }
            fractional.push(i);
        }
        fractional.sort_unstable();
        Self::from_indices(system, fractional)
    }

    /// Assigns the largest moduli to the fractional set until `F` reaches
    /// `min_range`.
    pub fn with_precision(system: &Arc<RnsSystem<D>>, min_range: &BigUint) -> Result<Self> {
        let mut by_size: Vec<usize> = (0..system.len()).collect();
        by_size.sort_by_key(|&i| std::cmp::Reverse(system.modulus(i)));
        let mut f = BigUint::one();
        let mut fractional = Vec::new();
        for i in by_size {
            if &f >= min_range && !fractional.is_empty() {
                break;
            }
            f *= system.modulus(i).to_u64_digit();
            fractional.push(i);
        }
        if &f < min_range {
            return Err(RnsError::InvalidSplit(format!(
                "system range cannot reach fractional range {min_range}"
            )));
        }
        fractional.sort_unstable();
        Self::from_indices(system, fractional)
    }

    fn from_indices(system: &Arc<RnsSystem<D>>, fractional: Vec<usize>) -> Result<Self> {
        if fractional.is_empty() {
            return Err(RnsError::InvalidSplit("no fractional moduli".into()));
        }
        let whole: Vec<usize> = (0..system.len()).filter(|i| !fractional.contains(i)).collect();
        if whole.is_empty() {
            return Err(RnsError::InvalidSplit("no whole moduli".into()));
        }
        let product = |idx: &[usize]| {
            idx.iter()
                .fold(BigUint::one(), |acc, &i| acc * system.modulus(i).to_u64_digit())
        };
        let frac_range = product(&fractional);
        let whole_range = product(&whole);
        let order: Vec<usize> = fractional.iter().chain(&whole).copied().collect();
        let half_digits = system.mixed_radix_of_big(system.half_range(), &order);
        let round_up_digits =
            system.mixed_radix_of_big(&((&frac_range + 1u32) >> 1), &fractional);
        let half_down_digits = system.mixed_radix_of_big(&(&frac_range >> 1), &fractional);
        let wrap = (0..system.len())
            .map(|i| {
                if fractional.contains(&i) {
                    D::reduce(&whole_range, system.modulus(i))
                } else {
                    D::zero()
                }
            })
            .collect();
        let whole_radices = whole.iter().map(|&i| system.modulus(i)).collect();
        Ok(Self {
            system: Arc::clone(system),
            fractional,
            whole,
            order,
            frac_range,
            whole_range,
            half_digits,
            round_up_digits,
            half_down_digits,
            wrap,
            whole_radices,
            division: OnceLock::new(),
        })
    }

    pub fn system(&self) -> &Arc<RnsSystem<D>> {
        &self.system
    }

    /// `F`, the product of the fractional moduli.
    pub fn fractional_range(&self) -> &BigUint {
        &self.frac_range
    }

    /// `W = R / F`.
    pub fn whole_range(&self) -> &BigUint {
        &self.whole_range
    }

    pub fn fractional_moduli(&self) -> Vec<D> {
        self.fractional.iter().map(|&i| self.system.modulus(i)).collect()
    }

    pub fn whole_moduli(&self) -> Vec<D> {
        self.whole.iter().map(|&i| self.system.modulus(i)).collect()
    }

    /// `p_f`, the number of fractional moduli.
    pub fn fractional_count(&self) -> usize {
        self.fractional.len()
    }

    /// Largest representable magnitude `(R-1) / (2F)`.
    pub fn max_value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.system.signed_bound().clone()),
            BigInt::from(self.frac_range.clone()),
        )
    }

    pub(crate) fn same_as(&self, other: &Self) -> bool {
        same_system(&self.system, &other.system) && self.fractional == other.fractional
    }

    fn division_context(&self) -> Result<&DivContext<D>> {
        self.division
            .get_or_init(|| DivContext::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Number of distinct denominators `d > 1` that divide `F`, i.e. fractions
/// `k/d` representable exactly. For squarefree `F` this is `2^p_f - 1`.
pub fn denominator_count<D: Digit>(split: &FracSplit<D>) -> u64 {
    split
        .fractional_moduli()
        .iter()
        .map(|m| {
            factorize(m.to_u64_digit())
                .iter()
                .map(|&(_, e)| e as u64 + 1)
                .product::<u64>()
        })
        .product::<u64>()
        - 1
}

/// Signed fixed-point value `payload / F`.
#[derive(Clone)]
pub struct RnsFixed<D: Digit = u32> {
    payload: RnsInt<D>,
    split: Arc<FracSplit<D>>,
}

impl<D: Digit> PartialEq for RnsFixed<D> {
    fn eq(&self, other: &Self) -> bool {
        self.split.same_as(&other.split) && self.payload == other.payload
    }
}

impl<D: Digit> Eq for RnsFixed<D> {}

impl<D: Digit> fmt::Debug for RnsFixed<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RnsFixed{:?}", self.payload.digits())
    }
}

impl<D: Digit> RnsFixed<D> {
    pub fn from_payload(split: &Arc<FracSplit<D>>, payload: RnsInt<D>) -> Result<Self> {
        if !same_system(split.system(), payload.system()) {
            return Err(RnsError::SystemMismatch);
        }
        Ok(Self {
            payload,
            split: Arc::clone(split),
        })
    }

    /// Value `k / F` from a machine-integer payload `k`.
    pub fn from_payload_i64(split: &Arc<FracSplit<D>>, k: i64) -> Self {
        Self {
            payload: RnsInt::from_i64(split.system(), k),
            split: Arc::clone(split),
        }
    }

    pub fn zero(split: &Arc<FracSplit<D>>) -> Self {
        Self {
            payload: RnsInt::zero(split.system()),
            split: Arc::clone(split),
        }
    }

    /// The value 1, payload `F`; needs `F <= (R-1)/2`.
    pub fn one(split: &Arc<FracSplit<D>>) -> Result<Self> {
        let f = BigInt::from(split.fractional_range().clone());
        let payload = forward_int(&f, split.system(), &mut StepCounter::new())?;
        Ok(Self {
            payload,
            split: Arc::clone(split),
        })
    }

    pub fn payload(&self) -> &RnsInt<D> {
        &self.payload
    }

    pub fn split(&self) -> &Arc<FracSplit<D>> {
        &self.split
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.split.same_as(&rhs.split) {
            Ok(())
        } else {
            Err(RnsError::SplitMismatch)
        }
    }

    fn with_payload(&self, payload: RnsInt<D>) -> Self {
        Self {
            payload,
            split: Arc::clone(&self.split),
        }
    }

    pub fn add(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        steps.record(OpKind::FracAdd, 1);
        Ok(self.with_payload(&self.payload + &rhs.payload))
    }

    pub fn sub(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        steps.record(OpKind::FracSub, 1);
        Ok(self.with_payload(&self.payload - &rhs.payload))
    }

    pub fn neg(&self, steps: &mut StepCounter) -> Self {
        self.with_payload(self.payload.neg(steps))
    }

    /// Multiplies by an integer held in residue form; exact, one digit-step.
    pub fn mul_int(&self, k: &RnsInt<D>, steps: &mut StepCounter) -> Result<Self> {
        if !same_system(self.payload.system(), k.system()) {
            return Err(RnsError::SystemMismatch);
        }
        steps.record(OpKind::FracMulInt, 1);
        Ok(self.with_payload(&self.payload * k))
    }

    pub fn mul_i64(&self, k: i64, steps: &mut StepCounter) -> Self {
        steps.record(OpKind::FracMulInt, 1);
        self.with_payload(self.payload.map_digits(|a, m| {
            a.mul_mod(crate::int::reduce_i64(k, m), m)
        }))
    }

    /// Fractional product: integer payload product, then one normalization.
    /// Error at most `1/(2F)` when `|X * Y| <= (R-1)/2`.
    pub fn mul(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        self.check(rhs)?;
        let (out, n) = mul_inner(&self.payload, &rhs.payload, &self.split);
        steps.record(OpKind::FracMul, n);
        Ok(self.with_payload(out))
    }

    /// Goldschmidt quotient `self / rhs`, within `2/F` of the true value.
    pub fn div(&self, rhs: &Self, steps: &mut StepCounter) -> Result<Self> {
        Ok(self.div_with_stats(rhs, steps)?.quotient)
    }

    pub fn div_with_stats(&self, rhs: &Self, steps: &mut StepCounter) -> Result<DivOutcome<D>> {
        self.check(rhs)?;
        goldschmidt(self, rhs, steps)
    }

    pub fn to_rational(&self, steps: &mut StepCounter) -> BigRational {
        reverse_frac(self, steps)
    }

    pub fn to_decimal(&self, places: usize, steps: &mut StepCounter) -> String {
        format_decimal(&reverse_frac(self, steps), places)
    }
}

/// Binary rational to fixed point: payload `round_half_away(x * F)`.
pub fn forward_frac<D: Digit>(
    x: &BigRational,
    split: &Arc<FracSplit<D>>,
    steps: &mut StepCounter,
) -> Result<RnsFixed<D>> {
    let scaled = x * BigRational::from_integer(BigInt::from(split.fractional_range().clone()));
    let k = round_half_away(&scaled);
    let payload = forward_int(&k, split.system(), steps).map_err(|_| {
        RnsError::out_of_range(x, split.max_value())
    })?;
    Ok(RnsFixed {
        payload,
        split: Arc::clone(split),
    })
}

/// Exact value `signed(payload) / F`.
pub fn reverse_frac<D: Digit>(a: &RnsFixed<D>, steps: &mut StepCounter) -> BigRational {
    let k = reverse_int(&a.payload, steps);
    BigRational::new(k, BigInt::from(a.split.fractional_range().clone()))
}

/// Divides an extended-format integer by `F` with round-half-away, giving a
/// fixed-point value over the full system.
///
/// One mixed-radix pass (fractional moduli first, `p` digit-steps) yields the
/// sign, the remainder `r = |Z| mod F` and the quotient digits; a Horner
/// pass over the whole-modulus digits (`p - p_f` digit-steps, the rounding
/// and sign correction fused into the last stage) re-expresses the quotient
/// on every modulus.
pub fn scale_by_f<D: Digit>(
    z: &RnsInt<D>,
    split: &Arc<FracSplit<D>>,
    steps: &mut StepCounter,
) -> Result<RnsFixed<D>> {
    if !same_system(z.system(), split.system()) {
        return Err(RnsError::SystemMismatch);
    }
    let (payload, n) = scale_inner(z, split);
    steps.record(OpKind::Normalize, n);
    Ok(RnsFixed {
        payload,
        split: Arc::clone(split),
    })
}

fn mul_inner<D: Digit>(a: &RnsInt<D>, b: &RnsInt<D>, split: &FracSplit<D>) -> (RnsInt<D>, u64) {
    let product = a * b;
    let (out, n) = scale_inner(&product, split);
    (out, n + 1)
}

fn scale_inner<D: Digit>(z: &RnsInt<D>, split: &FracSplit<D>) -> (RnsInt<D>, u64) {
    let system = split.system();
    let p_f = split.fractional.len();
    let mr = system.mixed_radix_ordered(z.digits(), &split.order);
    let (rem, quot) = mr.split_at(p_f);
    let negative = cmp_mixed_radix(&mr, &split.half_digits) != Ordering::Less;
    let adjust: u64 = if !negative {
        (cmp_mixed_radix(rem, &split.round_up_digits) != Ordering::Less) as u64
    } else if rem.iter().all(|d| d.is_zero()) {
        0
    } else {
        // |Z| = (W - q - 1) F + (F - r): round up unless 2r <= F
        (cmp_mixed_radix(rem, &split.half_down_digits) == Ordering::Greater) as u64
    };
    let mut digits = horner_residues(quot, &split.whole_radices, system.moduli());
    for ((d, &m), &w) in digits.iter_mut().zip(system.moduli()).zip(&split.wrap) {
        let a = D::from_u64_digit(adjust % m.to_u64_digit());
        *d = d.add_mod(a, m);
        if negative {
            *d = d.sub_mod(w, m);
        }
    }
    let horner_steps = quot.len().max(1) as u64;
    (RnsInt::from_raw(system, digits), mr.len() as u64 + horner_steps)
}

/// Result of a Goldschmidt division with its iteration count.
#[derive(Clone, Debug)]
pub struct DivOutcome<D: Digit = u32> {
    pub quotient: RnsFixed<D>,
    pub iterations: usize,
    pub iteration_cap: usize,
}

/// Working format for division: the target system extended with guard
/// moduli (joining the fractional set, product `G >= 64 W`) and headroom
/// moduli (joining the whole set) so that every intermediate product of the
/// iteration stays inside the extended range.
struct DivContext<D: Digit> {
    work: Arc<FracSplit<D>>,
    guard: Arc<FracSplit<D>>,
    guard_range: BigUint,
    cap: usize,
}

impl<D: Digit> DivContext<D> {
    fn build(split: &FracSplit<D>) -> Result<Self> {
        let system = split.system();
        let f = split.fractional_range();
        let mut candidate = system.max_modulus().to_u64_digit() + 1;
        let limit = D::max_value().to_u64_digit();
        let mut next_prime = || -> Result<u64> {
            while candidate <= limit {
                let c = candidate;
                candidate += 1;
                if is_prime(c) {
                    return Ok(c);
                }
            }
            Err(RnsError::InvalidSplit(
                "digit type has no room for division guard moduli".into(),
            ))
        };
        let guard_target = split.whole_range() * 64u32;
        let mut guard = Vec::new();
        let mut g = BigUint::one();
        while g < guard_target {
            let q = next_prime()?;
            g *= q;
            guard.push(q);
        }
        let work_frac = f * &g;
        let headroom_target = &work_frac * f * 4u32;
        let mut headroom = Vec::new();
        let mut h = BigUint::one();
        while h < headroom_target {
            let q = next_prime()?;
            h *= q;
            headroom.push(q);
        }
        let moduli: Vec<D> = system
            .moduli()
            .iter()
            .copied()
            .chain(guard.iter().chain(&headroom).map(|&q| D::from_u64_digit(q)))
            .collect();
        let work_system = Arc::new(RnsSystem::from_trusted(moduli));
        let guard_digits: Vec<D> = guard.iter().map(|&q| D::from_u64_digit(q)).collect();
        let work_frac_moduli: Vec<D> = split
            .fractional_moduli()
            .into_iter()
            .chain(guard_digits.iter().copied())
            .collect();
        let work = Arc::new(FracSplit::new(&work_system, &work_frac_moduli)?);
        let guard_split = Arc::new(FracSplit::new(&work_system, &guard_digits)?);
        let bitlen = work_frac.bits().max(2);
        let cap = (64 - (bitlen - 1).leading_zeros()) as usize + 2;
        Ok(Self {
            work,
            guard: guard_split,
            guard_range: g,
            cap,
        })
    }
}

fn goldschmidt<D: Digit>(
    a: &RnsFixed<D>,
    b: &RnsFixed<D>,
    steps: &mut StepCounter,
) -> Result<DivOutcome<D>> {
    let split = &a.split;
    let system = split.system();
    let p = system.len() as u64;
    let mut n_steps = 0u64;
    let mut scratch = StepCounter::new();

    let num = reverse_int(&a.payload, &mut scratch);
    let den = reverse_int(&b.payload, &mut scratch);
    n_steps += 2 * p;
    if den.is_zero() {
        return Err(RnsError::DivisionByZero);
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let den_mag = den.magnitude().clone();

    let ctx = split.division_context()?;
    let work = &ctx.work;
    let work_system = work.system();
    let wp = work_system.len() as u64;
    let f = split.fractional_range();
    let work_f = work.fractional_range();

    // seed from the two leading mixed-radix digits of |B|
    let order: Vec<usize> = (0..system.len()).collect();
    let den_rns = RnsInt::from_raw(system, system.residues_of(&den_mag));
    let mut mr = system.mixed_radix_ordered(den_rns.digits(), &order);
    n_steps += p;
    let top = mr.iter().rposition(|d| !d.is_zero()).expect("nonzero divisor");
    for d in mr.iter_mut().take(top.saturating_sub(1)) {
        *d = D::zero();
    }
    let estimate = eval_mixed_radix(&mr, system.moduli());
    let seed = div_round(&(work_f * f), &estimate);

    let lift = |v: &BigUint| -> Result<RnsInt<D>> {
        forward_int(&BigInt::from(v.clone()), work_system, &mut scratch.clone())
    };
    let g = &ctx.guard_range;
    let seed_rns = lift(&seed)?;
    let mut n = lift(&(num.magnitude() * g))?;
    let mut d = lift(&(&den_mag * g))?;
    n_steps += 3 * (work_f.bits().div_ceil(work_system.digit_bits() as u64) + 1);

    let (n0, s1) = mul_inner(&n, &seed_rns, work);
    let (d0, s2) = mul_inner(&d, &seed_rns, work);
    n = n0;
    d = d0;
    n_steps += s1 + s2;

    let one = lift(work_f)?;
    let two = &one + &one;
    let unit = RnsInt::from_i64(work_system, 1);
    let mut iterations = 0;
    loop {
        let factor = &two - &d;
        let delta = &factor - &one;
        n_steps += 2;
        if delta.is_zero() || delta == unit || delta == -&unit {
            break;
        }
        if iterations == ctx.cap {
            return Err(RnsError::NoConvergence(iterations));
        }
        let (n1, s1) = mul_inner(&n, &factor, work);
        let (d1, s2) = mul_inner(&d, &factor, work);
        n = n1;
        d = d1;
        n_steps += s1 + s2;
        iterations += 1;
    }

    let (scaled, s) = scale_inner(&n, &ctx.guard);
    n_steps += s + wp;
    let q = reverse_int(&scaled, &mut scratch);
    if q.magnitude() > system.signed_bound() {
        let value = BigRational::new(q, BigInt::from(f.clone()));
        return Err(RnsError::out_of_range(value, split.max_value()));
    }
    let q = if negative { -q } else { q };
    let payload = forward_int(&q, system, &mut scratch)?;
    n_steps += q.magnitude().bits().div_ceil(system.digit_bits() as u64);
    steps.record(OpKind::FracDiv, n_steps);
    Ok(DivOutcome {
        quotient: RnsFixed {
            payload,
            split: Arc::clone(split),
        },
        iterations,
        iteration_cap: ctx.cap,
    })
}

fn div_round(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r * 2u32 >= *den {
        q + 1u32
    } else {
        q
    }
}

/// Nearest integer, ties away from zero.
pub fn round_half_away(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mag = (x.abs() + half).floor().to_integer();
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Decimal rendering with `places` fractional digits, ties away from zero.
pub fn format_decimal(x: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = round_half_away(&(x * BigRational::from_integer(scale.clone())));
    let negative = scaled.is_negative();
    let (int_part, frac_part) = scaled.magnitude().div_rem(scale.magnitude());
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
    }
}

/// Parses `[-+]int[.frac]` or `[-+]num/den`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = |position: usize, message: &str| RnsError::Parse {
        position,
        message: message.to_string(),
    };
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    if t.is_empty() {
        return Err(err(offset, "empty number"));
    }
    let (negative, body, body_at) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..], offset + 1),
        b'+' => (false, &t[1..], offset + 1),
        _ => (false, t, offset),
    };
    let digits = |part: &str, at: usize| -> Result<BigInt> {
        if part.is_empty() {
            return Err(err(at, "expected digits"));
        }
        if let Some(bad) = part.find(|c: char| !c.is_ascii_digit()) {
            return Err(err(at + bad, "unexpected character"));
        }
        Ok(part.parse::<BigInt>().expect("ascii digits"))
    };
    let value = if let Some(slash) = body.find('/') {
        let num = digits(&body[..slash], body_at)?;
        let den = digits(&body[slash + 1..], body_at + slash + 1)?;
        if den.is_zero() {
            return Err(err(body_at + slash + 1, "zero denominator"));
        }
        BigRational::new(num, den)
    } else if let Some(dot) = body.find('.') {
        let int = if dot == 0 {
            BigInt::zero()
        } else {
            digits(&body[..dot], body_at)?
        };
        let frac_str = &body[dot + 1..];
        let frac = digits(frac_str, body_at + dot + 1)?;
        let scale = BigInt::from(10u32).pow(frac_str.len() as u32);
        BigRational::new(int * &scale + frac, scale)
    } else {
        BigRational::from_integer(digits(body, body_at)?)
    };
    Ok(if negative { -value } else { value })
}

/// Exact `f64` view of a rational, for reporting only.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    let shift = x.numer().bits().max(x.denom().bits()) as i64 - 60;
    let n = (x.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
    n / d
}
