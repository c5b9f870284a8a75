//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the field tower, polynomial ring,
/// sequence analysis, code construction, and weight machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("size limit exceeded: {what} needs {needed} which is over the cap {cap}")]
    SizeLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("GF({sub}) is not a subfield of GF({sup})")]
    NotSubfield { sub: u128, sup: u128 },

    #[error("the zero element has no multiplicative order")]
    ZeroElement,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("element does not lie in the requested subfield")]
    NotInSubfield,

    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotOneModFour(u64),

    #[error("sequence length {n} is not coprime to the field characteristic {p}")]
    NotCoprime { n: u64, p: u64 },

    #[error("order {order} does not divide n - 1 for n = {n}")]
    OrderMismatch { n: u64, order: u64 },

    #[error("no closed-form residue criterion is implemented for base {0}")]
    UnsupportedBase(u64),

    #[error("q = {q} is not a biquadratic residue mod {n}, so the class polynomials are not defined over GF(q)")]
    NotBiquadraticResidue { n: u64, q: u128 },

    #[error("message degree {deg} does not fit the dimension {k}")]
    DegreeTooHigh { deg: usize, k: usize },

    #[error("field characteristic {p} divides the period {n}")]
    FieldDividesN { n: u64, p: u64 },

    #[error("no eta normalization with eta_0 + eta_2 = 0 exists for n = {n}, q = {q}")]
    NormalizationUnavailable { n: u64, q: u128 },

    #[error("enumeration of {needed} codewords exceeds the budget of 2^{budget_log2}")]
    BudgetExceeded { needed: u128, budget_log2: u32 },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error("check polynomial does not factor over the expected class polynomials: {0}")]
    NotFactorable(String),

    #[error("parameters fall outside the classified hypotheses: {0}")]
    OutOfHypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
