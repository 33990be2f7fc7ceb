//! Residue number system arithmetic for signed integers and fixed-point
//! fractions, with a digit-step cost model.
//!
//! Types are generic over the residue digit type ([`Digit`], implemented
//! for `u16`, `u32` and `u64`); the aliases at the crate root fix it to `u32`.

pub mod convert;
pub mod cost;
pub mod digit;
pub mod error;
pub mod fixed;
pub mod int;
pub mod linalg;
pub mod primes;
pub mod steps;
pub mod system;

pub use convert::{
    base_extend, compare, forward_int, from_mixed_radix, reverse_int, reverse_unsigned, sign,
    to_mixed_radix, MixedRadix,
};
pub use cost::{
    emit_graph_data, emit_table, model_for, validate_counters, Cell, CostParams, CostReport,
    MatrixClocks, Table, Table5Row, Violation,
};
pub use digit::Digit;
pub use error::{Result, RnsError};
pub use fixed::{
    denominator_count, format_decimal, forward_frac, parse_rational, reverse_frac,
    round_half_away, scale_by_f, DivOutcome, FracSplit, RnsFixed,
};
pub use int::RnsInt;
pub use linalg::{
    dot_delayed, dot_sequential, matmul_delayed, range_budget_check, BudgetReport, FixedMatrix,
};
pub use steps::{OpKind, StepCounter, Tally};
pub use system::{RnsSystem, SystemMetrics};

pub type System = RnsSystem<u32>;
pub type Int = RnsInt<u32>;
pub type Fixed = RnsFixed<u32>;
pub type Split = FracSplit<u32>;
pub type Matrix = FixedMatrix<u32>;
