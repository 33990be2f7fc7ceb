//! Clock model for residue and binary arithmetic, table and graph emitters,
//! and checks binding the model to instrumented step counts.
//!
//! Every logarithm here is base 2. Binary figures are models only: `N` is
//! the number of radix-`2^Q` digits covering the same range as the residue
//! system.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Result, RnsError};
use crate::steps::{OpKind, StepCounter};
use crate::system::{log2_big, RnsSystem};

/// Size parameters of a system and its equal-range binary counterpart.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CostParams {
    /// Digit width `Q` in bits.
    pub q: u32,
    /// Residue digit count `p`.
    pub p: usize,
    /// Equal-range binary width `n = ceil(n_e)` in bits.
    pub n: u64,
    /// `n_e = log2 R`.
    pub effective_bits: f64,
    /// `N = ceil(n / Q)`.
    pub binary_digits: u64,
}

impl CostParams {
    pub fn for_system(system: &RnsSystem<u32>) -> Self {
        let m = system.metrics();
        let n = m.effective_bits.ceil() as u64;
        Self {
            q: m.digit_bits,
            p: m.digits,
            n,
            effective_bits: m.effective_bits,
            binary_digits: n.div_ceil(m.digit_bits as u64),
        }
    }
}

/// Predicted clocks per residue operation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RnsClocks {
    pub add: u64,
    pub sub: u64,
    pub int_mul: u64,
    pub frac_mul_min: u64,
    pub frac_mul_max: u64,
    pub compare: u64,
    pub reverse: u64,
    pub forward: u64,
}

/// Predicted clocks for the binary baselines at `N` digits.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BinaryClocks {
    pub schoolbook_add: f64,
    pub lookahead_add: f64,
    pub digit_mul: f64,
    pub karatsuba: f64,
    pub newton_div: f64,
}

/// `M x M` matrix-multiply clock totals.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MatrixClocks {
    pub m: usize,
    /// `M^3 * 2N`.
    pub binary_standard: f64,
    /// `M^2.807 * 2N`.
    pub binary_strassen: f64,
    /// `M^3 + M^2 * 2p`.
    pub rns_delayed: f64,
    /// `M^2.807 + M^2 * 2p`.
    pub rns_strassen: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CostReport {
    pub params: CostParams,
    pub rns: RnsClocks,
    pub binary: BinaryClocks,
}

impl CostReport {
    pub fn new(params: CostParams) -> Self {
        let p = params.p as u64;
        let big_n = params.binary_digits as f64;
        let rns = RnsClocks {
            add: 1,
            sub: 1,
            int_mul: 1,
            frac_mul_min: p,
            frac_mul_max: 2 * p,
            compare: p,
            reverse: p,
            forward: params.binary_digits,
        };
        let binary = BinaryClocks {
            schoolbook_add: big_n,
            lookahead_add: if big_n > 1.0 { big_n / big_n.log2() } else { 1.0 },
            digit_mul: 2.0 * big_n,
            karatsuba: big_n.powf(1.585),
            newton_div: big_n,
        };
        Self {
            params,
            rns,
            binary,
        }
    }

    pub fn for_system(system: &RnsSystem<u32>) -> Self {
        Self::new(CostParams::for_system(system))
    }

    pub fn matrix(&self, m: usize) -> MatrixClocks {
        let mf = m as f64;
        let two_n = 2.0 * self.params.binary_digits as f64;
        let two_p = 2.0 * self.params.p as f64;
        MatrixClocks {
            m,
            binary_standard: mf.powi(3) * two_n,
            binary_strassen: mf.powf(2.807) * two_n,
            rns_delayed: mf.powi(3) + mf * mf * two_p,
            rns_strassen: mf.powf(2.807) + mf * mf * two_p,
        }
    }
}

/// Model for the largest natural system of digit width `q`, `4 <= q <= 20`.
pub fn model_for(q: u32) -> Result<(CostReport, Table5Row)> {
    if !(4..=20).contains(&q) {
        return Err(RnsError::UnsupportedWidth(q));
    }
    let system = RnsSystem::<u32>::max_for_digit_width(q)?;
    Ok((CostReport::for_system(&system), Table5Row::for_system(&system)))
}

/// One row of the digit-growth table: `ne` is the integer width `ceil(log2 R)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Table5Row {
    pub q: u32,
    pub p: usize,
    pub ne: u64,
    pub log2_p: f64,
    pub ne_over_log2_p: f64,
    pub log2_p_over_q: f64,
    /// Exact `log2 p / log2 P` for comparison with the `Q` approximation.
    pub log2_p_over_log2_max: f64,
    pub ne_over_q: f64,
    /// `2 ne / Q`, rounded half away from zero.
    pub two_ne_over_q: u64,
}

impl Table5Row {
    pub fn for_system(system: &RnsSystem<u32>) -> Self {
        let m = system.metrics();
        let ne = m.effective_bits.ceil() as u64;
        let q = m.digit_bits;
        let log2_p = (m.digits as f64).log2();
        Self {
            q,
            p: m.digits,
            ne,
            log2_p,
            ne_over_log2_p: ne as f64 / log2_p,
            log2_p_over_q: log2_p / q as f64,
            log2_p_over_log2_max: log2_p / (m.max_modulus as f64).log2(),
            ne_over_q: ne as f64 / q as f64,
            two_ne_over_q: (2.0 * ne as f64 / q as f64).round() as u64,
        }
    }
}

/// A table cell; reals carry their display precision.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64, usize),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v, places) => format!("{v:.places$}"),
        }
    }

    /// Numeric value as rendered.
    pub fn value(&self) -> f64 {
        match self {
            Cell::Int(v) => *v as f64,
            Cell::Real(..) => self.render().parse().expect("rendered number"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Real(..) => s.serialize_f64(self.value()),
        }
    }
}

/// Rectangular output with CSV, aligned-text and JSON renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub id: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Table", 3)?;
        st.serialize_field("table_id", &self.id)?;
        st.serialize_field("columns", &self.columns)?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

impl Table {
    fn new(id: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            id: id.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Row whose first cell equals `key`.
    pub fn row_for(&self, key: i64) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| r.first() == Some(&Cell::Int(key)))
            .map(Vec::as_slice)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                rendered
                    .iter()
                    .map(|r| r[i].len())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(out, "{}", parts.join("  ")).expect("write to string");
        };
        line(&self.columns, &mut out);
        for r in &rendered {
            line(r, &mut out);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

fn check_range(range: &RangeInclusive<u32>, lo: u32, hi: u32) -> Result<()> {
    if range.is_empty() || *range.start() < lo || *range.end() > hi {
        return Err(RnsError::EmptyDomain(format!(
            "range {}..{} outside {lo}..{hi}",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

/// Emits table 2 (decimal width), 3 (binary digits) or 5 (digit growth)
/// over the digit widths in `qs`.
pub fn emit_table(id: u32, qs: RangeInclusive<u32>) -> Result<Table> {
    check_range(&qs, 2, 20)?;
    let mut table = match id {
        2 => Table::new("2", &["Q", "p", "decimal_digits", "n_e", "p_over_n_e"]),
        3 => Table::new("3", &["Q", "p", "binary_digits", "n_e", "P"]),
        5 => Table::new(
            "5",
            &[
                "Q",
                "p",
                "ne",
                "log2_p",
                "ne_over_log2_p",
                "log2_p_over_Q",
                "ne_over_Q",
                "two_ne_over_Q",
            ],
        ),
        _ => return Err(RnsError::EmptyDomain(format!("no table {id}"))),
    };
    for q in qs {
        let system = RnsSystem::<u32>::max_for_digit_width(q)?;
        let m = system.metrics();
        let row = match id {
            2 => vec![
                Cell::Int(q as i64),
                Cell::Int(m.digits as i64),
                Cell::Int(m.decimal_digits as i64),
                Cell::Int(m.effective_bits.ceil() as i64),
                Cell::Real(m.digits_per_bit, 2),
            ],
            3 => vec![
                Cell::Int(q as i64),
                Cell::Int(m.digits as i64),
                Cell::Int(m.binary_digits as i64),
                Cell::Real(m.effective_bits, 2),
                Cell::Int(m.max_modulus as i64),
            ],
            _ => {
                let r = Table5Row::for_system(&system);
                vec![
                    Cell::Int(q as i64),
                    Cell::Int(r.p as i64),
                    Cell::Int(r.ne as i64),
                    Cell::Real(r.log2_p, 5),
                    Cell::Real(r.ne_over_log2_p, 2),
                    Cell::Real(r.log2_p_over_q, 4),
                    Cell::Real(r.ne_over_q, 2),
                    Cell::Int(r.two_ne_over_q as i64),
                ]
            }
        };
        table.rows.push(row);
    }
    Ok(table)
}

/// Plot series. Graph 1 runs over digit counts `p` (natural systems),
/// graphs 2 and 3 over digit widths `Q`.
pub fn emit_graph_data(id: u32, range: RangeInclusive<u32>) -> Result<Table> {
    match id {
        1 => {
            check_range(&range, 1, 10_000)?;
            let mut t = Table::new("graph1", &["p", "n_e", "karatsuba"]);
            let primes = crate::primes::first_primes(*range.end() as usize)?;
            let mut r = num_bigint::BigUint::from(1u32);
            for (i, &q) in primes.iter().enumerate() {
                r *= q;
                let p = i as u32 + 1;
                if range.contains(&p) {
                    let ne = log2_big(&r);
                    t.rows.push(vec![
                        Cell::Int(p as i64),
                        Cell::Real(ne, 4),
                        Cell::Real(ne.powf(1.585), 2),
                    ]);
                }
            }
            Ok(t)
        }
        2 | 3 => {
            check_range(&range, 2, 20)?;
            let mut t = if id == 2 {
                Table::new("graph2", &["Q", "p", "binary_digits", "n_e"])
            } else {
                Table::new("graph3", &["Q", "log2_p_over_Q", "log2_p_over_log2_P"])
            };
            for q in range {
                let system = RnsSystem::<u32>::max_for_digit_width(q)?;
                let m = system.metrics();
                t.rows.push(if id == 2 {
                    vec![
                        Cell::Int(q as i64),
                        Cell::Int(m.digits as i64),
                        Cell::Int(m.binary_digits as i64),
                        Cell::Real(m.effective_bits, 2),
                    ]
                } else {
                    let r = Table5Row::for_system(&system);
                    vec![
                        Cell::Int(q as i64),
                        Cell::Real(r.log2_p_over_q, 4),
                        Cell::Real(r.log2_p_over_log2_max, 4),
                    ]
                });
            }
            Ok(t)
        }
        _ => Err(RnsError::EmptyDomain(format!("no graph {id}"))),
    }
}

/// A measured count outside its modeled bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: OpKind,
    pub observed: u64,
    pub expected: String,
}

/// Checks every instrumented operation against the model: single-step
/// integer and additive ops, fractional multiply and scaling in `[p, 2p]`,
/// compare at most `2p`, reverse, sign and mixed-radix exactly `p`, forward
/// at most `N`.
pub fn validate_counters(report: &CostReport, measured: &StepCounter) -> Vec<Violation> {
    let p = report.params.p as u64;
    let mut out = Vec::new();
    for (op, t) in measured.iter() {
        let (lo, hi, expected) = match op {
            OpKind::Add
            | OpKind::Sub
            | OpKind::Mul
            | OpKind::MulSmall
            | OpKind::Neg
            | OpKind::FracAdd
            | OpKind::FracSub
            | OpKind::FracMulInt => (1, 1, "1".to_string()),
            OpKind::FracMul | OpKind::Normalize => (p, 2 * p, format!("{p}..={}", 2 * p)),
            OpKind::Compare => (0, 2 * p, format!("<= {}", 2 * p)),
            OpKind::Reverse | OpKind::Sign | OpKind::MixedRadix => (p, p, p.to_string()),
            OpKind::Forward => (
                0,
                report.rns.forward,
                format!("<= {}", report.rns.forward),
            ),
            OpKind::BaseExtend | OpKind::FracDiv => continue,
        };
        for observed in [t.min, t.max] {
            if observed < lo || observed > hi {
                out.push(Violation {
                    op,
                    observed,
                    expected: expected.clone(),
                });
                break;
            }
        }
    }
    out
}
