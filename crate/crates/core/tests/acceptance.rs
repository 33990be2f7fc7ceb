//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Reference figures are the published table values.

mod common;

use std::cmp::Ordering;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{round_away, Oracle};
use rns_core::system::{approx_digits, estimate_divergence};
use rns_core::{
    compare, dot_delayed, dot_sequential, emit_table,
    forward_int, from_mixed_radix, matmul_delayed, reverse_frac, reverse_int, reverse_unsigned,
    to_mixed_radix, validate_counters, CostReport, FixedMatrix, FracSplit, OpKind, RnsFixed,
    RnsInt, RnsSystem, StepCounter,
};

type Sys = RnsSystem<u32>;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, ok_detail: String) -> Self {
        if failures.is_empty() {
            Outcome {
                pass: true,
                detail: ok_detail,
            }
        } else {
            Outcome {
                pass: false,
                detail: failures.join("; "),
            }
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol + 1e-12
}

fn system_moduli(s: &Sys) -> Vec<u64> {
    s.moduli().iter().map(|&m| m as u64).collect()
}

// Q, p, binary digits, n_e, P
const BINARY_DIGIT_ROWS: [(u32, usize, u64, f64, u64); 11] = [
    (4, 6, 4, 14.87, 13),
    (5, 11, 8, 37.55, 31),
    (6, 18, 13, 76.63, 61),
    (7, 31, 24, 161.46, 127),
    (8, 54, 42, 334.88, 251),
    (9, 97, 79, 702.60, 509),
    (10, 172, 142, 1419.52, 1021),
    (11, 309, 261, 2864.48, 2039),
    (12, 564, 485, 5810.32, 4093),
    (13, 1028, 895, 11634.09, 8191),
    (14, 1900, 1676, 23451.13, 16381),
];

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    for (q, p, digits, ne, max) in BINARY_DIGIT_ROWS {
        let m = Sys::max_for_digit_width(q).unwrap().metrics();
        if m.digits != p || m.max_modulus != max {
            failures.push(format!("Q={q}: (p, P) = ({}, {}), want ({p}, {max})", m.digits, m.max_modulus));
        }
        if m.binary_digits != digits {
            failures.push(format!("Q={q}: binary digits {}, want {digits}", m.binary_digits));
        }
        if !close(m.effective_bits, ne, 0.01) {
            failures.push(format!("Q={q}: n_e {:.4}, want {ne}", m.effective_bits));
        }
    }
    let t = emit_table(3, 4..=14).unwrap();
    if t.rows.len() != 11 {
        failures.push(format!("table has {} rows", t.rows.len()));
    }
    Outcome::from_failures(failures, "11 rows, Q=9 -> 97, 509, 702.60".into())
}

// Q, p, decimal digits, n_e, p/n_e
const DECIMAL_ROWS: [(u32, usize, u64, u64, f64); 7] = [
    (8, 54, 101, 335, 0.16),
    (9, 97, 211, 703, 0.14),
    (10, 172, 427, 1420, 0.12),
    (11, 309, 862, 2865, 0.11),
    (12, 564, 1749, 5811, 0.10),
    (13, 1028, 3502, 11635, 0.09),
    (14, 1900, 7059, 23452, 0.08),
];

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let t = emit_table(2, 8..=14).unwrap();
    for (q, p, dec, ne, ratio) in DECIMAL_ROWS {
        let m = Sys::max_for_digit_width(q).unwrap().metrics();
        let row = t.row_for(q as i64).unwrap();
        let ne_cell = row[t.column("n_e").unwrap()].value();
        if m.digits != p {
            failures.push(format!("Q={q}: p {} want {p}", m.digits));
        }
        if m.decimal_digits != dec {
            failures.push(format!("Q={q}: decimal digits {} want {dec}", m.decimal_digits));
        }
        if (ne_cell - ne as f64).abs() > 1.0 {
            failures.push(format!("Q={q}: n_e {ne_cell} want {ne}"));
        }
        if !close(m.digits_per_bit, ratio, 0.005) {
            failures.push(format!("Q={q}: ratio {:.4} want {ratio}", m.digits_per_bit));
        }
    }
    Outcome::from_failures(failures, "7 rows, Q=8 -> (54, 101, 335, 0.16)".into())
}

// Q, p, ne, log2 p, ne/log2 p, log2 p / Q, ne/Q, 2 ne/Q
const GROWTH_ROWS: [(u32, usize, u64, f64, f64, f64, f64, u64); 9] = [
    (6, 18, 89, 4.16993, 21.34, 0.6950, 14.83, 30),
    (7, 31, 183, 4.95420, 36.94, 0.7077, 26.14, 52),
    (8, 54, 335, 5.75489, 58.21, 0.7194, 41.88, 84),
    (9, 97, 703, 6.59991, 106.52, 0.7333, 78.11, 156),
    (10, 172, 1420, 7.42626, 191.21, 0.7426, 142.00, 284),
    (11, 309, 2865, 8.27146, 346.37, 0.7520, 260.45, 521),
    (12, 564, 5811, 9.13955, 635.81, 0.7616, 484.25, 969),
    (13, 1028, 11635, 10.00562, 1162.85, 0.7697, 895.00, 1790),
    (14, 1900, 23452, 10.89178, 2153.18, 0.7780, 1675.14, 3350),
];

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let t = emit_table(5, 6..=14).unwrap();
    let col = |name: &str| t.column(name).unwrap();
    for (q, p, ne, lp, ne_lp, ratio, ne_q, two_ne_q) in GROWTH_ROWS {
        let row = t.row_for(q as i64).unwrap();
        let got = |name: &str| row[col(name)].value();
        let mut bad = Vec::new();
        if got("p") != p as f64 {
            bad.push(format!("p {}", got("p")));
        }
        if got("ne") != ne as f64 {
            bad.push(format!("ne {} (want {ne})", got("ne")));
        }
        if !close(got("log2_p"), lp, 0.01) {
            bad.push(format!("log2 p {}", got("log2_p")));
        }
        if !close(got("ne_over_log2_p"), ne_lp, 0.01) {
            bad.push(format!("ne/log2 p {} (want {ne_lp})", got("ne_over_log2_p")));
        }
        if !close(got("log2_p_over_Q"), ratio, 0.00005) {
            bad.push(format!("ratio {}", got("log2_p_over_Q")));
        }
        if !close(got("ne_over_Q"), ne_q, 0.01) {
            bad.push(format!("ne/Q {} (want {ne_q})", got("ne_over_Q")));
        }
        if got("two_ne_over_Q") != two_ne_q as f64 {
            bad.push(format!("2ne/Q {} (want {two_ne_q})", got("two_ne_over_Q")));
        }
        if !bad.is_empty() {
            failures.push(format!("Q={q}: {}", bad.join(", ")));
        }
    }
    Outcome::from_failures(failures, "9 rows, ratio 0.6950 .. 0.7780".into())
}

fn criterion_4() -> Outcome {
    let checkpoints = [(335.0, 54usize, 7.2), (23452.0, 1900, 12.6)];
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (n, p, stated) in checkpoints {
        let divergence = 100.0 * estimate_divergence(n, p);
        let solved = approx_digits(n).unwrap_or(f64::NAN);
        let solve_gap = 100.0 * (solved - p as f64).abs() / p as f64;
        let note = format!(
            "n={n}: divergence {divergence:.2}% (solve p={solved:.2}, {solve_gap:.2}% off), stated {stated}%"
        );
        if !close(divergence, stated, 0.5) {
            failures.push(note.clone());
        }
        notes.push(note);
    }
    Outcome::from_failures(failures, notes.join("; "))
}

fn criterion_5() -> Outcome {
    let top = Sys::power_augmented_top(9, 43).unwrap().metrics();
    let natural = Sys::max_for_digit_width(9).unwrap().metrics();
    let detail = format!(
        "43 largest power-augmented Q=9 moduli: E_R {:.2}%; full 97-prime natural set: E_R {:.2}%",
        top.efficiency, natural.efficiency
    );
    Outcome {
        pass: top.efficiency > 95.0 && top.digit_bits == 9,
        detail,
    }
}

struct Setup {
    name: &'static str,
    system: Arc<Sys>,
    split: Arc<FracSplit<u32>>,
    oracle: Oracle,
}

fn setups() -> Vec<Setup> {
    let q9 = Arc::new(Sys::max_for_digit_width(9).unwrap());
    let q9_frac: Vec<u32> = q9.moduli()[q9.len() - 30..].to_vec();
    let build = |name, system: Arc<Sys>, frac: &[u32]| Setup {
        name,
        split: Arc::new(FracSplit::new(&system, frac).unwrap()),
        oracle: Oracle::new(&system_moduli(&system)),
        system,
    };
    vec![
        build("{2,3,5,7}", Arc::new(Sys::from_u64(&[2, 3, 5, 7]).unwrap()), &[3, 5]),
        build("first 8 primes", Arc::new(Sys::natural(8).unwrap()), &[17, 19]),
        build("max Q=9", q9, &q9_frac),
    ]
}

fn random_signed(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    rng.gen_bigint_range(&-bound, &(bound + 1))
}

fn check_int_triple(s: &Setup, a: &BigInt, b: &BigInt, op: u8, steps: &mut StepCounter) -> Option<String> {
    let x = forward_int(a, &s.system, steps).unwrap();
    let y = forward_int(b, &s.system, steps).unwrap();
    if x.digits() != s.oracle.residues(a).as_slice() {
        return Some(format!("{}: forward {a}", s.name));
    }
    let (got, want) = match op {
        0 => (x.add(&y, steps).unwrap(), a + b),
        1 => (x.sub(&y, steps).unwrap(), a - b),
        _ => (x.mul(&y, steps).unwrap(), a * b),
    };
    let want = s.oracle.wrap(&want);
    if s.oracle.signed(got.digits()) != want || reverse_int(&got, steps) != want {
        return Some(format!("{}: op {op} on {a}, {b}", s.name));
    }
    None
}

fn check_frac_pair(s: &Setup, a: &BigInt, b: &BigInt, steps: &mut StepCounter) -> Option<String> {
    let f = BigInt::from(s.split.fractional_range().clone());
    let fr = BigRational::from_integer(f.clone());
    let x = RnsFixed::from_payload(&s.split, forward_int(a, &s.system, steps).unwrap()).unwrap();
    let y = RnsFixed::from_payload(&s.split, forward_int(b, &s.system, steps).unwrap()).unwrap();
    let xv = BigRational::new(a.clone(), f.clone());
    let yv = BigRational::new(b.clone(), f.clone());
    let sum = x.add(&y, steps).unwrap();
    let diff = x.sub(&y, steps).unwrap();
    if s.oracle.signed(sum.payload().digits()) != s.oracle.wrap(&(a + b))
        || s.oracle.signed(diff.payload().digits()) != s.oracle.wrap(&(a - b))
    {
        return Some(format!("{}: frac add/sub on {a}, {b}", s.name));
    }
    let prod = x.mul(&y, steps).unwrap();
    let got = BigRational::new(s.oracle.signed(prod.payload().digits()), f.clone());
    let exact = &xv * &yv;
    let err = (&got - &exact).abs();
    if err * &fr * BigRational::from_integer(2.into()) > BigRational::from_integer(1.into()) {
        return Some(format!("{}: frac mul {a} * {b} / F^2 -> {got}", s.name));
    }
    None
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut steps = StepCounter::new();
    let mut counts = Vec::new();
    let sets = setups();
    for s in &sets {
        let bound = s.oracle.bound();
        let frac_bound = bound.sqrt();
        let mut n = 0;
        for _ in 0..10_000 {
            let a = random_signed(&mut rng, &bound);
            let b = random_signed(&mut rng, &bound);
            let op = rng.gen_range(0..3u8);
            if let Some(f) = check_int_triple(s, &a, &b, op, &mut steps) {
                failures.push(f);
            }
            n += 1;
        }
        for _ in 0..10_000 {
            let a = random_signed(&mut rng, &frac_bound);
            let b = random_signed(&mut rng, &frac_bound);
            if let Some(f) = check_frac_pair(s, &a, &b, &mut steps) {
                failures.push(f);
            }
        }
        counts.push(format!("{}: {n} int triples + 10000 frac pairs", s.name));
    }
    // exhaustive over the small system
    let small = &sets[0];
    let bound: i64 = 104;
    let mut exhaustive = 0;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let (ab, bb) = (BigInt::from(a), BigInt::from(b));
            for op in 0..3 {
                if let Some(f) = check_int_triple(small, &ab, &bb, op, &mut steps) {
                    failures.push(f);
                }
                exhaustive += 1;
            }
            if (a * b).abs() <= bound {
                if let Some(f) = check_frac_pair(small, &ab, &bb, &mut steps) {
                    failures.push(f);
                }
            }
        }
    }
    failures.truncate(10);
    counts.push(format!("R=210 exhaustive: {exhaustive} int triples"));
    Outcome::from_failures(failures, counts.join("; "))
}

fn mixed_radix_weight_sum(digits: &[u32], moduli: &[u32]) -> BigInt {
    let mut weight = BigInt::from(1);
    let mut total = BigInt::zero();
    for (&d, &m) in digits.iter().zip(moduli) {
        total += &weight * d;
        weight *= m;
    }
    total
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut steps = StepCounter::new();
    let exhaustive_sets: [&[u64]; 4] = [
        &[2, 3, 5, 7],
        &[2, 3, 5, 7, 11, 13, 17],
        &[4, 9, 5, 7, 11, 13],
        &[13, 11, 7, 5, 3, 2, 17],
    ];
    let mut checked = 0u64;
    for moduli in exhaustive_sets {
        let system = Arc::new(Sys::from_u64(moduli).unwrap());
        let oracle = Oracle::new(moduli);
        let r: i64 = moduli.iter().product::<u64>() as i64;
        let mut prev: Option<rns_core::MixedRadix<u32>> = None;
        for x in 0..r {
            let big = BigInt::from(x);
            let v = RnsInt::from_digits(&system, oracle.residues(&big)).unwrap();
            let mr = to_mixed_radix(&v, &mut steps);
            if mixed_radix_weight_sum(mr.digits(), system.moduli()) != big
                || from_mixed_radix(&mr) != BigUint::from(x as u64)
            {
                failures.push(format!("{moduli:?}: mixed-radix round trip at {x}"));
            }
            let signed = oracle.wrap(&big);
            if reverse_int(&v, &mut steps) != signed {
                failures.push(format!("{moduli:?}: signed decode at {x}"));
            }
            // for even R the lone value -R/2 decodes but lies outside the forward range
            if signed.magnitude() <= system.signed_bound()
                && forward_int(&signed, &system, &mut steps).unwrap() != v
            {
                failures.push(format!("{moduli:?}: signed round trip at {signed}"));
            }
            if let Some(p) = &prev {
                if p.partial_cmp(&mr) != Some(Ordering::Less) {
                    failures.push(format!("{moduli:?}: order broken at {x}"));
                }
            }
            prev = Some(mr);
            checked += 1;
            if failures.len() > 10 {
                break;
            }
        }
    }
    // large systems: MRC reverse against the CRT sum
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    for system in [Sys::max_for_digit_width(9).unwrap(), Sys::natural(200).unwrap()] {
        let oracle = Oracle::new(&system_moduli(&system));
        let system = Arc::new(system);
        let range = oracle.range().clone();
        for _ in 0..2_000 {
            let x = rng.gen_bigint_range(&BigInt::zero(), &range);
            let v = RnsInt::from_digits(&system, oracle.residues(&x)).unwrap();
            let crt = oracle.crt(v.digits());
            if BigInt::from(reverse_unsigned(&v, &mut steps)) != crt || crt != x {
                failures.push(format!("MRC and CRT disagree on {x}"));
            }
            sampled += 1;
        }
    }
    failures.truncate(10);
    Outcome::from_failures(
        failures,
        format!("{checked} residues exhaustive over 4 systems, {sampled} MRC/CRT samples"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut steps = StepCounter::new();
    let mut cases = 0;
    let mut strictly = 0;
    let q9 = Arc::new(Sys::max_for_digit_width(9).unwrap());
    let q9_frac: Vec<u32> = q9.moduli()[q9.len() - 30..].to_vec();
    let n16 = Arc::new(Sys::natural(16).unwrap());
    let splits = [
        Arc::new(FracSplit::new(&n16, &[47, 53]).unwrap()),
        Arc::new(FracSplit::new(&q9, &q9_frac).unwrap()),
    ];
    for split in &splits {
        let oracle = Oracle::new(&system_moduli(split.system()));
        let f = BigInt::from(split.fractional_range().clone());
        let fr = BigRational::from_integer(f.clone());
        for _ in 0..600 {
            let len = rng.gen_range(2..=32usize);
            let cap = (oracle.bound() / len).sqrt();
            // mix full-scale and small payloads so both regimes are covered
            let cap = if rng.gen_bool(0.5) { cap } else { cap.min(f.clone()) };
            let xs: Vec<BigInt> = (0..len).map(|_| random_signed(&mut rng, &cap)).collect();
            let ys: Vec<BigInt> = (0..len).map(|_| random_signed(&mut rng, &cap)).collect();
            let lift = |v: &BigInt, steps: &mut StepCounter| {
                RnsFixed::from_payload(split, forward_int(v, split.system(), steps).unwrap()).unwrap()
            };
            let x: Vec<_> = xs.iter().map(|v| lift(v, &mut steps)).collect();
            let y: Vec<_> = ys.iter().map(|v| lift(v, &mut steps)).collect();
            let exact = xs
                .iter()
                .zip(&ys)
                .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::new(a * b, &f * &f));
            let want = BigRational::new(round_away(&(&exact * &fr)), f.clone());
            let del = reverse_frac(&dot_delayed(&x, &y, &mut steps).unwrap(), &mut steps);
            let seq = reverse_frac(&dot_sequential(&x, &y, &mut steps).unwrap(), &mut steps);
            let (ed, es) = ((&del - &exact).abs(), (&seq - &exact).abs());
            if del != want || &ed * &fr * BigRational::from_integer(2.into()) > BigRational::from_integer(1.into()) {
                failures.push(format!("delayed not correctly rounded (len {len})"));
            }
            if es < ed {
                failures.push(format!("sequential beat delayed (len {len})"));
            }
            if es > ed {
                strictly += 1;
            }
            cases += 1;
        }
    }
    failures.truncate(10);
    Outcome::from_failures(
        failures,
        format!("{cases} vectors, all correctly rounded; sequential strictly worse in {strictly}"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for s in setups() {
        let p = s.system.len() as u64;
        let mut steps = StepCounter::new();
        let bound = s.oracle.bound();
        let frac_bound = bound.sqrt();
        for _ in 0..200 {
            let a = forward_int(&random_signed(&mut rng, &bound), &s.system, &mut steps).unwrap();
            let b = forward_int(&random_signed(&mut rng, &bound), &s.system, &mut steps).unwrap();
            a.add(&b, &mut steps).unwrap();
            a.sub(&b, &mut steps).unwrap();
            a.mul(&b, &mut steps).unwrap();
            compare(&a, &b, &mut steps).unwrap();
            reverse_int(&a, &mut steps);
            let xa = random_signed(&mut rng, &frac_bound);
            let xb = random_signed(&mut rng, &frac_bound);
            let x = RnsFixed::from_payload(&s.split, forward_int(&xa, &s.system, &mut steps).unwrap()).unwrap();
            let y = RnsFixed::from_payload(&s.split, forward_int(&xb, &s.system, &mut steps).unwrap()).unwrap();
            x.mul(&y, &mut steps).unwrap();
        }
        let one = |op| steps.tally(op).map(|t| (t.min, t.max));
        for op in [OpKind::Add, OpKind::Sub, OpKind::Mul] {
            if one(op) != Some((1, 1)) {
                failures.push(format!("{}: {op} steps {:?}", s.name, one(op)));
            }
        }
        let fm = steps.tally(OpKind::FracMul).unwrap();
        if fm.min < p || fm.max > 2 * p {
            failures.push(format!("{}: frac mul steps {}..{} outside [{p}, {}]", s.name, fm.min, fm.max, 2 * p));
        }
        let cmp = steps.tally(OpKind::Compare).unwrap();
        if cmp.max > 2 * p {
            failures.push(format!("{}: compare {} steps", s.name, cmp.max));
        }
        let rev = steps.tally(OpKind::Reverse).unwrap();
        if (rev.min, rev.max) != (p, p) {
            failures.push(format!("{}: reverse {}..{} steps", s.name, rev.min, rev.max));
        }
        let report = CostReport::for_system(&s.system);
        for v in validate_counters(&report, &steps) {
            failures.push(format!("{}: {} observed {} expected {}", s.name, v.op, v.observed, v.expected));
        }
        notes.push(format!("{} (p={p}): frac mul {}..{}", s.name, fm.min, fm.max));
    }
    // matmul normalization counts
    let sets = setups();
    for (s, m) in [(&sets[1], 4usize), (&sets[2], 8)] {
        let mut steps = StepCounter::new();
        let f = BigInt::from(s.split.fractional_range().clone());
        let cap = (s.oracle.bound() / m).sqrt().min(f * 4);
        let gen = |rng: &mut ChaCha8Rng| {
            let elems = (0..m * m)
                .map(|_| {
                    let v = random_signed(rng, &cap);
                    RnsFixed::from_payload(&s.split, forward_int(&v, &s.system, &mut StepCounter::new()).unwrap()).unwrap()
                })
                .collect();
            FixedMatrix::new(m, m, elems).unwrap()
        };
        let a = gen(&mut rng);
        let b = gen(&mut rng);
        matmul_delayed(&a, &b, &mut steps).unwrap();
        let m3 = (m * m * m) as u64;
        let m2 = (m * m) as u64;
        if steps.normalizations() != m2
            || steps.steps(OpKind::Mul) != m3
            || steps.steps(OpKind::Add) != m2 * (m as u64 - 1)
        {
            failures.push(format!(
                "{m}x{m}: {} normalizations, {} muls, {} adds",
                steps.normalizations(),
                steps.steps(OpKind::Mul),
                steps.steps(OpKind::Add)
            ));
        }
        notes.push(format!("{m}x{m} matmul: {} normalizations", steps.normalizations()));
    }
    Outcome::from_failures(failures, notes.join("; "))
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    for q in 6..=14 {
        let m = Sys::max_for_digit_width(q).unwrap().metrics();
        let ne = m.effective_bits;
        let p = m.digits as f64;
        if !(p < 2.0 * ne / q as f64) {
            failures.push(format!("Q={q}: p={p} not below 2 n_e/Q = {:.2}", 2.0 * ne / q as f64));
        }
        if !((ne / q as f64).ceil() <= ne / p.log2()) {
            failures.push(format!("Q={q}: ceil(n_e/Q) above n_e/log2 p"));
        }
    }
    Outcome::from_failures(failures, "Q=6..14".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, Option<Duration>); 10] = [
        (1, "binary-digit table Q=4..14", criterion_1, Some(Duration::from_secs(5))),
        (2, "decimal-width table Q=8..14", criterion_2, Some(Duration::from_secs(5))),
        (3, "digit-growth table Q=6..14", criterion_3, Some(Duration::from_secs(5))),
        (4, "digit-count estimate checkpoints", criterion_4, None),
        (5, "efficiency above 95% at Q=9", criterion_5, None),
        (6, "oracle equivalence", criterion_6, Some(Duration::from_secs(60))),
        (7, "mixed-radix properties", criterion_7, None),
        (8, "single-rounding dot product", criterion_8, None),
        (9, "step counts", criterion_9, None),
        (10, "model inequalities", criterion_10, None),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} criterion {n}: {name} [{timing}] {}",
            if pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
