use thiserror::Error;

/// Errors from kernel evaluation, special functions, and sampling.
///
/// Every numerical failure names the operation and the offending input so
/// that CLI output can point at the exact call site.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Evaluation at a non-removable pole.
    #[error("{op}: pole at {msg}")]
    Pole { op: &'static str, msg: String },

    /// Argument pair on the coincidence set where the raw formula is 0/0.
    #[error("{op}: coincident arguments: {msg}")]
    Coincidence { op: &'static str, msg: String },

    /// Branch-cut violation for a non-integer power.
    #[error("{op}: branch cut: {msg}")]
    BranchCut { op: &'static str, msg: String },

    /// A leading minor of the moment matrix vanished.
    #[error("{op}: singular leading minor at index {index}")]
    SingularMinor { op: &'static str, index: usize },

    /// Some f_k vanished along a sum that divides by it.
    #[error("{op}: degenerate point: {msg}")]
    Degenerate { op: &'static str, msg: String },

    /// Iterative scheme failed to converge.
    #[error("{op}: no convergence: {msg}")]
    Convergence { op: &'static str, msg: String },

    /// Matrix decomposition failure in the sampler or eigensolver.
    #[error("{op}: decomposition failed: {msg}")]
    Decomposition { op: &'static str, msg: String },

    /// Invalid configuration (regime/model consistency, CLI input).
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    /// Exit-code class: 2 for validation, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain { .. } => 2,
            _ => 3,
        }
    }
}
