//! Product sums with delayed normalization.
//!
//! Fractional products are accumulated as raw payload products (scale `F^2`)
//! and normalized once per output, so a dot product costs `M` single-step
//! multiplies, `M - 1` single-step adds and one scaling. The accumulated sum
//! has to fit the signed range; [`range_budget_check`] and the exact
//! per-call checks guard that.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::convert::reverse_int;
use crate::digit::Digit;
use crate::error::{Result, RnsError};
use crate::fixed::{forward_frac, reverse_frac, scale_by_f, FracSplit, RnsFixed};
use crate::steps::{OpKind, StepCounter};

/// Outcome of a headroom check `M * max_abs^2 <= (R-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub fits: bool,
    pub required: BigUint,
    pub limit: BigUint,
    /// `limit - required`; negative when the budget is exceeded.
    pub margin: BigInt,
}

/// Worst-case headroom for `terms` products of payloads bounded by `max_abs`.
pub fn range_budget_check<D: Digit>(
    split: &FracSplit<D>,
    terms: usize,
    max_abs: &BigUint,
) -> BudgetReport {
    let required = max_abs * max_abs * terms;
    let limit = split.system().signed_bound().clone();
    BudgetReport {
        fits: required <= limit,
        margin: BigInt::from(limit.clone()) - BigInt::from(required.clone()),
        required,
        limit,
    }
}

fn check_vectors<D: Digit>(x: &[RnsFixed<D>], y: &[RnsFixed<D>]) -> Result<Arc<FracSplit<D>>> {
    if x.len() != y.len() {
        return Err(RnsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let first = x
        .first()
        .ok_or_else(|| RnsError::EmptyDomain("empty vector".into()))?;
    if x.iter().chain(y).any(|v| !same_split(v, first)) {
        return Err(RnsError::SplitMismatch);
    }
    Ok(Arc::clone(first.split()))
}

fn same_split<D: Digit>(a: &RnsFixed<D>, b: &RnsFixed<D>) -> bool {
    a.split().same_as(b.split())
}

// Exact sum of |x_i| |y_i| over payloads, checked on the binary side.
fn exact_budget<D: Digit>(
    x: &[RnsFixed<D>],
    y: &[RnsFixed<D>],
    split: &FracSplit<D>,
    index: Option<(usize, usize)>,
) -> Result<()> {
    let mut scratch = StepCounter::new();
    let mut total = BigUint::default();
    for (a, b) in x.iter().zip(y) {
        let pa = reverse_int(a.payload(), &mut scratch);
        let pb = reverse_int(b.payload(), &mut scratch);
        total += pa.magnitude() * pb.magnitude();
    }
    let limit = split.system().signed_bound();
    if &total > limit {
        return Err(RnsError::Budget {
            index,
            required: total.to_string(),
            limit: limit.to_string(),
        });
    }
    Ok(())
}

fn dot_unchecked<D: Digit>(
    x: &[RnsFixed<D>],
    y: &[RnsFixed<D>],
    split: &Arc<FracSplit<D>>,
    steps: &mut StepCounter,
) -> Result<RnsFixed<D>> {
    let mut acc = x[0].payload() * y[0].payload();
    steps.record(OpKind::Mul, 1);
    for (a, b) in x.iter().zip(y).skip(1) {
        let term = a.payload() * b.payload();
        steps.record(OpKind::Mul, 1);
        acc = &acc + &term;
        steps.record(OpKind::Add, 1);
    }
    scale_by_f(&acc, split, steps)
}

/// Dot product with one final rounding: exactly `round(F * x.y) / F`
/// whenever `sum |X_i| |Y_i| <= (R-1)/2`.
pub fn dot_delayed<D: Digit>(
    x: &[RnsFixed<D>],
    y: &[RnsFixed<D>],
    steps: &mut StepCounter,
) -> Result<RnsFixed<D>> {
    let split = check_vectors(x, y)?;
    exact_budget(x, y, &split, None)?;
    dot_unchecked(x, y, &split, steps)
}

/// Baseline dot product that rounds after every multiply.
pub fn dot_sequential<D: Digit>(
    x: &[RnsFixed<D>],
    y: &[RnsFixed<D>],
    steps: &mut StepCounter,
) -> Result<RnsFixed<D>> {
    let split = check_vectors(x, y)?;
    exact_budget(x, y, &split, None)?;
    let mut acc = x[0].mul(&y[0], steps)?;
    for (a, b) in x.iter().zip(y).skip(1) {
        let term = a.mul(b, steps)?;
        acc = acc.add(&term, steps)?;
    }
    Ok(acc)
}

/// Dense row-major matrix of fixed-point values over one split.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedMatrix<D: Digit = u32> {
    rows: usize,
    cols: usize,
    elements: Vec<RnsFixed<D>>,
}

impl<D: Digit> FixedMatrix<D> {
    pub fn new(rows: usize, cols: usize, elements: Vec<RnsFixed<D>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(RnsError::EmptyDomain("matrix dimensions must be positive".into()));
        }
        if elements.len() != rows * cols {
            return Err(RnsError::LengthMismatch {
                left: rows * cols,
                right: elements.len(),
            });
        }
        if elements.iter().any(|e| !same_split(e, &elements[0])) {
            return Err(RnsError::SplitMismatch);
        }
        Ok(Self {
            rows,
            cols,
            elements,
        })
    }

    pub fn from_rationals(
        split: &Arc<FracSplit<D>>,
        rows: usize,
        cols: usize,
        values: &[BigRational],
        steps: &mut StepCounter,
    ) -> Result<Self> {
        let elements = values
            .iter()
            .map(|v| forward_frac(v, split, steps))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, cols, elements)
    }

    /// Identity matrix, payload `F` on the diagonal.
    pub fn identity(split: &Arc<FracSplit<D>>, n: usize) -> Result<Self> {
        let one = RnsFixed::one(split)?;
        let zero = RnsFixed::zero(split);
        let elements = (0..n * n)
            .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
            .collect();
        Self::new(n, n, elements)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RnsFixed<D> {
        &self.elements[i * self.cols + j]
    }

    pub fn elements(&self) -> &[RnsFixed<D>] {
        &self.elements
    }

    pub fn row(&self, i: usize) -> &[RnsFixed<D>] {
        &self.elements[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<RnsFixed<D>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn split(&self) -> &Arc<FracSplit<D>> {
        self.elements[0].split()
    }

    pub fn to_rationals(&self, steps: &mut StepCounter) -> Vec<BigRational> {
        self.elements.iter().map(|e| reverse_frac(e, steps)).collect()
    }
}

/// Matrix product with one normalization per output element: `M^3`
/// single-step multiplies, `M^2 (M-1)` adds and `M^2` scalings for `M x M`.
/// Every output's budget is checked before any arithmetic runs.
pub fn matmul_delayed<D: Digit>(
    a: &FixedMatrix<D>,
    b: &FixedMatrix<D>,
    steps: &mut StepCounter,
) -> Result<FixedMatrix<D>> {
    if a.cols != b.rows {
        return Err(RnsError::LengthMismatch {
            left: a.cols,
            right: b.rows,
        });
    }
    if !same_split(&a.elements[0], &b.elements[0]) {
        return Err(RnsError::SplitMismatch);
    }
    let split = Arc::clone(a.split());
    let cols: Vec<Vec<RnsFixed<D>>> = (0..b.cols).map(|j| b.col(j)).collect();
    for i in 0..a.rows {
        for (j, col) in cols.iter().enumerate() {
            exact_budget(a.row(i), col, &split, Some((i, j)))?;
        }
    }
    let mut out = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for col in &cols {
            out.push(dot_unchecked(a.row(i), col, &split, steps)?);
        }
    }
    FixedMatrix::new(a.rows, b.cols, out)
}
