use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Polynomial division with a zero divisor.
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    /// A rule name that is not one of the built-ins.
    #[error("unknown rule name `{0}` (expected fundamental, rule1, rule2 or linear_example)")]
    UnknownRuleName(String),

    /// An index (m, n) outside the tabulated horizon.
    #[error("index ({m}, {n}) outside horizon {horizon}")]
    IndexOutOfHorizon { m: usize, n: usize, horizon: usize },

    /// Decomposition was asked of tables that do not form a zero identity.
    #[error("not a zero identity: {0}")]
    NotAZeroIdentity(String),

    /// (U, V) extraction was asked of tables that do not form an addition rule.
    #[error("not a quantum addition rule: {0}")]
    NotAQuantumAdditionRule(String),

    /// A closed-form division that is exact by construction left a remainder.
    /// Seeing this error means the implementation is wrong, not the input.
    #[error("internal divisibility violation: {0}")]
    InternalDivisibilityViolation(String),

    /// Text that does not match the polynomial grammar.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Structurally invalid tables (mismatched lengths, bad dimensions).
    #[error("malformed table data: {0}")]
    MalformedTables(String),
}

pub type Result<T> = std::result::Result<T, Error>;
