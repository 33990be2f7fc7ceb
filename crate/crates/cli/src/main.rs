mod expr;

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rns_core::{
    emit_graph_data, emit_table, format_decimal, forward_frac, forward_int, matmul_delayed, parse_rational,
    reverse_frac, reverse_int, reverse_unsigned, to_mixed_radix, validate_counters, CostReport, Fixed, Int,
    Matrix, RnsError, Split, StepCounter, System,
};

#[derive(Parser)]
#[command(name = "rns", version, about = "Residue number system arithmetic, conversion and cost tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a modulus set and print its size and efficiency figures
    System(SystemCmd),
    /// Emit table 2, 3 or 5 over a range of digit widths
    Tables(TablesCmd),
    /// Emit plot data for graph 1, 2 or 3
    Graph(GraphCmd),
    /// Forward or reverse conversion of one value
    Convert(ConvertCmd),
    /// Evaluate an arithmetic expression in fixed-point residue arithmetic
    Eval(EvalCmd),
    /// Matrix product with one normalization per element
    Matmul(MatmulCmd),
}

#[derive(Args, Clone, Default)]
#[group(multiple = false)]
struct SystemSource {
    /// All primes below 2^Q
    #[arg(long = "Q", value_name = "BITS")]
    q: Option<u32>,
    /// The first P primes
    #[arg(long = "p", value_name = "COUNT")]
    p: Option<usize>,
    /// Explicit pairwise-coprime moduli
    #[arg(long, value_delimiter = ',', value_name = "M1,M2,..")]
    moduli: Option<Vec<u64>>,
}

#[derive(Args, Clone)]
struct SplitArgs {
    /// Moduli forming the fractional range F
    #[arg(long = "frac-moduli", value_delimiter = ',', value_name = "M1,M2,..")]
    frac_moduli: Option<Vec<u64>>,
    /// Minimum bits of F when --frac-moduli is absent [default: n_e / 4]
    #[arg(long = "frac-bits", value_name = "BITS", conflicts_with = "frac_moduli")]
    frac_bits: Option<u64>,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Selection {
    #[default]
    Natural,
    PowerAugmented,
    PowerAugmentedTop,
}

#[derive(Args)]
struct SystemCmd {
    #[command(flatten)]
    source: SystemSource,
    /// Modulus selection for --Q
    #[arg(long, value_enum, default_value_t)]
    select: Selection,
    /// Moduli kept by power-augmented-top [default: primes in [2^(Q-1), 2^Q)]
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct TablesCmd {
    #[arg(long, value_parser = ["2", "3", "5"])]
    id: String,
    /// Digit widths, `A..B` inclusive
    #[arg(long = "q", value_parser = parse_range, value_name = "A..B")]
    q: Option<RangeInclusive<u32>>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GraphCmd {
    #[arg(long, value_parser = ["1", "2", "3"])]
    id: String,
    /// Digit counts p for graph 1, digit widths Q otherwise, `A..B`
    #[arg(long, value_parser = parse_range, value_name = "A..B")]
    range: Option<RangeInclusive<u32>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true))]
struct ConvertCmd {
    #[command(flatten)]
    source: SystemSource,
    #[command(flatten)]
    split: SplitArgs,
    /// Integer to convert to residues
    #[arg(long, group = "mode", allow_hyphen_values = true)]
    int: Option<String>,
    /// Fixed-point value (decimal or a/b) to convert
    #[arg(long, group = "mode", allow_hyphen_values = true)]
    frac: Option<String>,
    /// Residue digits to convert back to binary
    #[arg(long, group = "mode", requires = "digits")]
    reverse: bool,
    #[arg(long, value_delimiter = ',')]
    digits: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct EvalCmd {
    #[command(flatten)]
    source: SystemSource,
    #[command(flatten)]
    split: SplitArgs,
    /// Expression over + - * / and parentheses; `a/b` without spaces is a literal
    #[arg(allow_hyphen_values = true)]
    expression: String,
    /// Decimal places in the printed value
    #[arg(long, default_value_t = 12)]
    places: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true))]
struct MatmulCmd {
    #[command(flatten)]
    source: SystemSource,
    #[command(flatten)]
    split: SplitArgs,
    /// Left operand, CSV of decimal or a/b tokens
    #[arg(long, group = "input", requires = "b")]
    a: Option<PathBuf>,
    /// Right operand
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    /// Random M x M operands drawn with ChaCha8 from --seed
    #[arg(long, value_name = "M", group = "input")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    places: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Rns(#[from] RnsError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Rns(
                RnsError::OutOfRange { .. }
                | RnsError::Budget { .. }
                | RnsError::DivisionByZero
                | RnsError::NoConvergence(_),
            ) => 3,
            CliError::Rns(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let bad = || format!("expected A..B, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn build_system(src: &SystemSource) -> Result<Arc<System>> {
    let s = match (src.q, src.p, &src.moduli) {
        (Some(q), _, _) => System::max_for_digit_width(q)?,
        (_, Some(p), _) => System::natural(p)?,
        (_, _, Some(m)) => System::from_u64(m)?,
        _ => System::natural(8)?,
    };
    Ok(Arc::new(s))
}

fn build_split(system: &Arc<System>, args: &SplitArgs) -> Result<Arc<Split>> {
    let split = match &args.frac_moduli {
        Some(m) => {
            let m: Vec<u32> = m
                .iter()
                .map(|&v| u32::try_from(v).map_err(|_| RnsError::InvalidModulus(v)))
                .collect::<std::result::Result<_, _>>()?;
            Split::new(system, &m)?
        }
        None => {
            let bits = args
                .frac_bits
                .unwrap_or((system.metrics().effective_bits / 4.0).floor() as u64);
            Split::with_precision(system, &(BigUint::one() << bits))?
        }
    };
    Ok(Arc::new(split))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `key value` lines for text, `key,value` rows for CSV, one object for JSON.
fn render_fields(fields: &[(&str, Value)], format: Format) -> String {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Text => {
            let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            fields
                .iter()
                .map(|(k, v)| format!("{k:<w$}  {}\n", plain(v)))
                .collect()
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            for (k, v) in fields {
                let s = plain(v);
                if s.contains([',', '"', '\n']) {
                    writeln!(out, "{k},\"{}\"", s.replace('"', "\"\"")).unwrap();
                } else {
                    writeln!(out, "{k},{s}").unwrap();
                }
            }
            out
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            serde_json::to_string_pretty(&Value::Object(map)).unwrap() + "\n"
        }
    }
}

fn steps_value(steps: &StepCounter) -> Value {
    let map: serde_json::Map<String, Value> = steps
        .iter()
        .map(|(op, t)| (op.name().to_string(), serde_json::to_value(t).unwrap()))
        .collect();
    Value::Object(map)
}

fn steps_text(steps: &StepCounter) -> String {
    steps
        .iter()
        .map(|(op, t)| {
            if t.min == t.max {
                format!("{op} {}x{}", t.calls, t.min)
            } else {
                format!("{op} {}x[{}..{}]", t.calls, t.min, t.max)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn steps_field(steps: &StepCounter, format: Format) -> Value {
    match format {
        Format::Json => steps_value(steps),
        _ => Value::String(steps_text(steps)),
    }
}

fn model_check(system: &System, steps: &StepCounter) -> String {
    let violations = validate_counters(&CostReport::for_system(system), steps);
    if violations.is_empty() {
        "within model bounds".into()
    } else {
        violations
            .iter()
            .map(|v| format!("{} observed {} expected {}", v.op, v.observed, v.expected))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn cmd_system(cmd: &SystemCmd) -> Result<String> {
    if cmd.source.q.is_none() && cmd.source.p.is_none() && cmd.source.moduli.is_none() {
        return Err(CliError::Usage("one of --Q, --p or --moduli is required".into()));
    }
    let system = match (cmd.select, cmd.source.q) {
        (Selection::Natural, _) => build_system(&cmd.source)?,
        (Selection::PowerAugmented, Some(q)) => Arc::new(System::power_augmented(q)?),
        (Selection::PowerAugmentedTop, Some(q)) => {
            let count = match cmd.count {
                Some(c) => c,
                None => {
                    if !(2..=20).contains(&q) {
                        return Err(RnsError::UnsupportedWidth(q).into());
                    }
                    rns_core::primes::primes_below(1 << q)?
                        .iter()
                        .filter(|&&m| m >= 1 << (q - 1))
                        .count()
                }
            };
            Arc::new(System::power_augmented_top(q, count)?)
        }
        (_, None) => return Err(CliError::Usage("power-augmented selections require --Q".into())),
    };
    let m = system.metrics();
    let r = system.range();
    let moduli: Vec<u64> = system.moduli().iter().map(|&d| d as u64).collect();
    let moduli_value = match cmd.format {
        Format::Json => json!(moduli),
        _ => Value::String(join(&moduli)),
    };
    let range = if m.effective_bits <= 128.0 {
        Value::String(r.to_string())
    } else {
        Value::String(format!("{} decimal digits", r.to_string().len()))
    };
    let fields = [
        ("moduli", moduli_value),
        ("p", json!(m.digits)),
        ("P", json!(m.max_modulus)),
        ("Q", json!(m.digit_bits)),
        ("R", range),
        ("n_e", Value::String(format!("{:.3}", m.effective_bits))),
        ("decimal_digits", json!(m.decimal_digits)),
        ("E_R", Value::String(format!("{:.2}%", m.efficiency))),
        ("p_over_n_e", Value::String(format!("{:.4}", m.digits_per_bit))),
        ("binary_digits", json!(m.binary_digits)),
    ];
    Ok(render_fields(&fields, cmd.format))
}

fn render_table(t: &rns_core::Table, format: Format) -> String {
    match format {
        Format::Text => t.to_text(),
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json() + "\n",
    }
}

fn cmd_tables(cmd: &TablesCmd) -> Result<()> {
    let id: u32 = cmd.id.parse().expect("validated by clap");
    let range = cmd.q.clone().unwrap_or(match id {
        2 => 8..=14,
        3 => 4..=14,
        _ => 6..=14,
    });
    let table = emit_table(id, range)?;
    write_out(cmd.output.as_deref(), &render_table(&table, cmd.format))
}

fn cmd_graph(cmd: &GraphCmd) -> Result<()> {
    let id: u32 = cmd.id.parse().expect("validated by clap");
    let range = cmd.range.clone().unwrap_or(match id {
        1 => 1..=32,
        2 => 4..=14,
        _ => 6..=14,
    });
    let table = emit_graph_data(id, range)?;
    write_out(cmd.output.as_deref(), &render_table(&table, cmd.format))
}

fn cmd_convert(cmd: &ConvertCmd) -> Result<String> {
    let system = build_system(&cmd.source)?;
    let mut steps = StepCounter::new();
    let list = |v: Vec<u64>| match cmd.format {
        Format::Json => json!(v),
        _ => Value::String(join(&v)),
    };
    let digits_of = |a: &Int| a.digits().iter().map(|&d| d as u64).collect::<Vec<_>>();
    let mut fields = vec![("moduli", list(system.moduli().iter().map(|&d| d as u64).collect()))];
    if let Some(s) = &cmd.int {
        let x: BigInt = s
            .trim()
            .parse()
            .map_err(|_| RnsError::Parse { position: 0, message: format!("not an integer: {s:?}") })?;
        let a = forward_int(&x, &system, &mut steps)?;
        fields.push(("residues", list(digits_of(&a))));
    } else if let Some(s) = &cmd.frac {
        let split = build_split(&system, &cmd.split)?;
        let x = parse_rational(s)?;
        let a = forward_frac(&x, &split, &mut steps)?;
        let back = reverse_frac(&a, &mut steps);
        let f = split.fractional_range();
        let err = (&back - &x).abs() * BigRational::from_integer(BigInt::from(f.clone()));
        fields.extend([
            ("fractional_moduli", list(split.fractional_moduli().iter().map(|&d| d as u64).collect())),
            ("F", Value::String(f.to_string())),
            ("payload", Value::String(reverse_int(a.payload(), &mut StepCounter::new()).to_string())),
            ("residues", list(digits_of(a.payload()))),
            ("value", Value::String(back.to_string())),
            ("decimal", Value::String(format_decimal(&back, 12))),
            ("error_ulp", Value::String(format_decimal(&err, 4))),
        ]);
    } else {
        let digits = cmd.digits.as_deref().unwrap_or_default();
        if digits.len() != system.len() {
            return Err(RnsError::DigitCount { expected: system.len(), actual: digits.len() }.into());
        }
        let digits: Vec<u32> = digits.iter().map(|&d| d.min(u32::MAX as u64) as u32).collect();
        let a = Int::from_digits(&system, digits)?;
        let mr = to_mixed_radix(&a, &mut steps);
        let unsigned = reverse_unsigned(&a, &mut StepCounter::new());
        let signed = reverse_int(&a, &mut steps);
        fields.extend([
            ("mixed_radix", list(mr.digits().iter().map(|&d| d as u64).collect())),
            ("unsigned", Value::String(unsigned.to_string())),
            ("signed", Value::String(signed.to_string())),
        ]);
    }
    fields.push(("steps", steps_field(&steps, cmd.format)));
    Ok(render_fields(&fields, cmd.format))
}

fn cmd_eval(cmd: &EvalCmd) -> Result<String> {
    let system = build_system(&cmd.source)?;
    let split = build_split(&system, &cmd.split)?;
    let e = expr::parse(&cmd.expression)?;
    let mut steps = StepCounter::new();
    let value: Fixed = expr::eval(&e, &split, &mut steps)?;
    let result = reverse_frac(&value, &mut StepCounter::new());
    let f = BigRational::from_integer(BigInt::from(split.fractional_range().clone()));
    let mut fields = vec![
        ("expression", Value::String(cmd.expression.clone())),
        ("result", Value::String(result.to_string())),
        ("decimal", Value::String(format_decimal(&result, cmd.places))),
    ];
    if let Ok(exact) = expr::eval_exact(&e) {
        let err = (&result - &exact).abs() * &f;
        fields.push(("exact", Value::String(exact.to_string())));
        fields.push(("error_ulp", Value::String(format_decimal(&err, 4))));
    }
    fields.extend([
        ("p", json!(system.len())),
        ("F", Value::String(split.fractional_range().to_string())),
        ("steps", steps_field(&steps, cmd.format)),
        ("model", Value::String(model_check(&system, &steps))),
    ]);
    Ok(render_fields(&fields, cmd.format))
}

fn read_matrix(path: &Path, split: &Arc<Split>, steps: &mut StepCounter) -> Result<(Matrix, Vec<BigRational>)> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => io(source),
            other => CliError::Usage(format!("{}: {other:?}", path.display())),
        })?;
    let (mut rows, mut values) = (0, Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => io(source),
            csv::ErrorKind::UnequalLengths { pos, expected_len, len } => CliError::Usage(format!(
                "{}: row {} has {len} fields, expected {expected_len}",
                path.display(),
                pos.map_or(0, |p| p.line())
            )),
            other => CliError::Usage(format!("{}: {other:?}", path.display())),
        })?;
        for field in &record {
            values.push(parse_rational(field)?);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(CliError::Usage(format!("{}: empty matrix", path.display())));
    }
    let cols = values.len() / rows;
    Ok((Matrix::from_rationals(split, rows, cols, &values, steps)?, values))
}

/// Uniform payloads in `[-cap, cap]`, `cap = min(2F, isqrt(bound / M))`,
/// so every dot product fits the range budget.
fn random_matrix(split: &Arc<Split>, m: usize, rng: &mut ChaCha8Rng) -> Result<(Matrix, Vec<BigRational>)> {
    let f = split.fractional_range();
    let cap = (split.system().signed_bound() / m.max(1)).sqrt().min(f * 2u32);
    let hi = BigInt::from(cap) + 1;
    let lo = -&hi + 1;
    let fr = BigRational::from_integer(BigInt::from(f.clone()));
    let mut steps = StepCounter::new();
    let (mut elems, mut values) = (Vec::new(), Vec::new());
    for _ in 0..m * m {
        let k = rng.gen_bigint_range(&lo, &hi);
        values.push(BigRational::from_integer(k.clone()) / &fr);
        let payload = forward_int(&k, split.system(), &mut steps)?;
        elems.push(Fixed::from_payload(split, payload)?);
    }
    Ok((Matrix::new(m, m, elems)?, values))
}

fn exact_product(a: &[BigRational], b: &[BigRational], n: usize, k: usize, m: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let mut acc = BigRational::zero();
            for t in 0..k {
                acc += &a[i * k + t] * &b[t * m + j];
            }
            out.push(acc);
        }
    }
    out
}

fn cmd_matmul(cmd: &MatmulCmd) -> Result<String> {
    let system = build_system(&cmd.source)?;
    let split = build_split(&system, &cmd.split)?;
    let mut input_steps = StepCounter::new();
    let ((a, av), (b, bv)) = match (&cmd.a, &cmd.b, cmd.random) {
        (Some(pa), Some(pb), _) => (
            read_matrix(pa, &split, &mut input_steps)?,
            read_matrix(pb, &split, &mut input_steps)?,
        ),
        (_, _, Some(m)) => {
            if m == 0 {
                return Err(CliError::Usage("--random needs M >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cmd.seed);
            (random_matrix(&split, m, &mut rng)?, random_matrix(&split, m, &mut rng)?)
        }
        _ => return Err(CliError::Usage("give --a and --b, or --random M".into())),
    };
    // Inputs are compared as stored, so the oracle measures only the product's rounding.
    let mut scratch = StepCounter::new();
    let (av, bv) = if cmd.random.is_some() {
        (av, bv)
    } else {
        (a.to_rationals(&mut scratch), b.to_rationals(&mut scratch))
    };
    let mut steps = StepCounter::new();
    let c = matmul_delayed(&a, &b, &mut steps)?;
    let got = c.to_rationals(&mut scratch);
    let want = exact_product(&av, &bv, a.rows(), a.cols(), b.cols());
    let f = BigRational::from_integer(BigInt::from(split.fractional_range().clone()));
    let max_err = got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs() * &f)
        .max()
        .unwrap_or_else(BigRational::zero);
    let within = max_err <= BigRational::new(BigInt::one(), BigInt::from(2));
    let model = CostReport::for_system(&system).matrix(a.rows().max(b.cols()));
    let cells: Vec<Vec<String>> = got
        .chunks(c.cols())
        .map(|row| row.iter().map(|v| format_decimal(v, cmd.places)).collect())
        .collect();
    let exact_cells: Vec<Vec<String>> = got
        .chunks(c.cols())
        .map(|row| row.iter().map(BigRational::to_string).collect())
        .collect();

    if cmd.format == Format::Csv {
        return Ok(exact_cells.iter().map(|r| r.join(",") + "\n").collect());
    }
    if cmd.format == Format::Json {
        let v = json!({
            "rows": c.rows(),
            "cols": c.cols(),
            "result": exact_cells,
            "decimal": cells,
            "max_error_ulp": format_decimal(&max_err, 6),
            "within_half_ulp": within,
            "normalizations": steps.normalizations(),
            "steps": steps_value(&steps),
            "model": model,
            "model_check": model_check(&system, &steps),
        });
        return Ok(serde_json::to_string_pretty(&v).unwrap() + "\n");
    }
    let mut out = String::new();
    writeln!(
        out,
        "system          p={} Q={} F={} ({} fractional moduli)",
        system.len(),
        system.digit_bits(),
        if split.fractional_range().bits() <= 64 {
            split.fractional_range().to_string()
        } else {
            format!("~2^{}", split.fractional_range().bits() - 1)
        },
        split.fractional_count()
    )
    .unwrap();
    writeln!(out, "product         {}x{} * {}x{}", a.rows(), a.cols(), b.rows(), b.cols()).unwrap();
    writeln!(out, "result").unwrap();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in &cells {
        let line: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
        writeln!(out, "  {}", line.join("  ")).unwrap();
    }
    writeln!(
        out,
        "max_error       {} ulp ({} half-ulp bound)",
        format_decimal(&max_err, 6),
        if within { "within" } else { "exceeds" }
    )
    .unwrap();
    writeln!(out, "normalizations  {}", steps.normalizations()).unwrap();
    writeln!(out, "steps           {}", steps_text(&steps)).unwrap();
    writeln!(out, "model           {}", model_check(&system, &steps)).unwrap();
    writeln!(
        out,
        "clocks M={}     rns_delayed {:.0}, rns_strassen {:.0}, binary_standard {:.0}, binary_strassen {:.0}",
        model.m, model.rns_delayed, model.rns_strassen, model.binary_standard, model.binary_strassen
    )
    .unwrap();
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    let text = match &cli.command {
        Command::System(c) => cmd_system(c)?,
        Command::Tables(c) => return cmd_tables(c),
        Command::Graph(c) => return cmd_graph(c),
        Command::Convert(c) => cmd_convert(c)?,
        Command::Eval(c) => cmd_eval(c)?,
        Command::Matmul(c) => cmd_matmul(c)?,
    };
    write_out(None, &text)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
