use thiserror::Error;

pub type Result<T, E = RnsError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RnsError {
    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("unsupported digit width Q={0}")]
    UnsupportedWidth(u32),

    #[error("invalid modulus {0}: moduli must be at least 2 and fit the digit type")]
    InvalidModulus(u64),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("operands belong to different residue systems")]
    SystemMismatch,

    #[error("operands use different fractional splits")]
    SplitMismatch,

    #[error("digit {digit} at position {index} is not reduced modulo {modulus}")]
    InvalidDigit { index: usize, digit: u64, modulus: u64 },

    #[error("expected {expected} digits, got {actual}")]
    DigitCount { expected: usize, actual: usize },

    #[error("value {value} outside representable range [-{bound}, {bound}]")]
    OutOfRange { value: String, bound: String },

    #[error("modulus {0} is not part of the target system")]
    NotSubset(u64),

    #[error("invalid fractional split: {0}")]
    InvalidSplit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("range budget exceeded{}: needs {required}, limit {limit}", .index.map(|(i, j)| format!(" at element ({i}, {j})")).unwrap_or_default())]
    Budget {
        index: Option<(usize, usize)>,
        required: String,
        limit: String,
    },

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl RnsError {
    pub(crate) fn out_of_range(value: impl ToString, bound: impl ToString) -> Self {
        RnsError::OutOfRange {
            value: value.to_string(),
            bound: bound.to_string(),
        }
    }
}
