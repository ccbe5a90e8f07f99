use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("irreducibility test needs a polynomial of degree at least 1")]
    ConstantInput,
    #[error("enumeration of {requested} monics exceeds the budget of {limit}")]
    BudgetExceeded { requested: u128, limit: u128 },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("semi-characters are evaluated on monic polynomials only")]
    NonMonicInput,
    #[error("unsupported semi-character: {0}")]
    UnsupportedCharacter(String),
    #[error("Bernoulli-Goss tail does not vanish: S_{degree}(-{n}) != 0")]
    TailNotVanishing { n: u64, degree: u32 },
    #[error("closed form disagrees with brute force: {0}")]
    ClosedFormMismatch(String),
    #[error("series is not a unit of the Tate algebra")]
    NotAUnit,
    #[error("precision {available} is below the requested threshold {threshold}")]
    PrecisionInsufficient { available: i64, threshold: i64 },
    #[error("zeta series does not converge: {0}")]
    NonConvergent(String),
    #[error("{0} is not {1}-integral")]
    NonIntegral(String, String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("column weight must be at least 1 (column {0})")]
    WeightZero(usize),
    #[error("bad variable index: {0}")]
    BadIndex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
