//! Digit-step instrumentation.
//!
//! A digit-step is one digit-parallel operation over every residue channel:
//! a modular add or multiply, one stage of mixed-radix conversion, or one
//! Horner stage of a conversion. Operations record into a [`StepCounter`]
//! passed by the caller; there is no global counter.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
    MulSmall,
    Neg,
    Forward,
    MixedRadix,
    Reverse,
    Compare,
    Sign,
    BaseExtend,
    FracAdd,
    FracSub,
    FracMulInt,
    Normalize,
    FracMul,
    FracDiv,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Add => "add",
            OpKind::Sub => "sub",
            OpKind::Mul => "mul",
            OpKind::MulSmall => "mul_small",
            OpKind::Neg => "neg",
            OpKind::Forward => "forward",
            OpKind::MixedRadix => "mixed_radix",
            OpKind::Reverse => "reverse",
            OpKind::Compare => "compare",
            OpKind::Sign => "sign",
            OpKind::BaseExtend => "base_extend",
            OpKind::FracAdd => "frac_add",
            OpKind::FracSub => "frac_sub",
            OpKind::FracMulInt => "frac_mul_int",
            OpKind::Normalize => "normalize",
            OpKind::FracMul => "frac_mul",
            OpKind::FracDiv => "frac_div",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-operation tally: number of calls, total steps and the per-call extremes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub calls: u64,
    pub steps: u64,
    pub min: u64,
    pub max: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepCounter {
    tallies: BTreeMap<OpKind, Tally>,
}

impl StepCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, op: OpKind, steps: u64) {
        self.tallies
            .entry(op)
            .and_modify(|t| {
                t.calls += 1;
                t.steps += steps;
                t.min = t.min.min(steps);
                t.max = t.max.max(steps);
            })
            .or_insert(Tally {
                calls: 1,
                steps,
                min: steps,
                max: steps,
            });
    }

    pub fn tally(&self, op: OpKind) -> Option<Tally> {
        self.tallies.get(&op).copied()
    }

    pub fn calls(&self, op: OpKind) -> u64 {
        self.tally(op).map_or(0, |t| t.calls)
    }

    pub fn steps(&self, op: OpKind) -> u64 {
        self.tally(op).map_or(0, |t| t.steps)
    }

    /// Digit-steps summed over every recorded operation.
    pub fn total_steps(&self) -> u64 {
        self.tallies.values().map(|t| t.steps).sum()
    }

    /// Number of normalizations (scalings by the fractional range).
    pub fn normalizations(&self) -> u64 {
        self.calls(OpKind::Normalize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (OpKind, Tally)> + '_ {
        self.tallies.iter().map(|(k, v)| (*k, *v))
    }

    /// Folds another counter into this one.
    pub fn merge(&mut self, other: &StepCounter) {
        for (op, t) in other.iter() {
            self.tallies
                .entry(op)
                .and_modify(|s| {
                    s.calls += t.calls;
                    s.steps += t.steps;
                    s.min = s.min.min(t.min);
                    s.max = s.max.max(t.max);
                })
                .or_insert(t);
        }
    }

    pub fn clear(&mut self) {
        self.tallies.clear();
    }
}
