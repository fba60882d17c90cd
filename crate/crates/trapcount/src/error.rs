use thiserror::Error;

/// Everything that can go wrong across parsing, encoding, and counting.
///
/// The CLI maps these onto exit codes, so the grouping matters: input and
/// syntax problems are distinct from resource caps, which are distinct from
/// solver budget exhaustion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// A brute-force enumeration would exceed a configured cap.
    #[error("exact enumeration infeasible: {0}")]
    CapExceeded(String),

    #[error("DNF expansion exceeds the term cap ({terms} terms > {cap})")]
    DnfCapExceeded { terms: usize, cap: usize },

    /// The SAT solver hit its conflict budget. Distinct from UNSAT.
    #[error("solver conflict budget exhausted")]
    BudgetExhausted,

    /// No trial of the approximate counter produced a usable cell.
    #[error("approximation failed: {0}")]
    ApproxFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A cross-check between two independent routes disagreed. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
