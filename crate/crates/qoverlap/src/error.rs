//! Error type shared by all modules.

/// Errors produced by constructors, predicates and solvers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Operands act on Hilbert spaces of different dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An input value violates a structural invariant (norm, hermiticity,
    /// trace, weights).
    #[error("invalid input: {0}")]
    Structural(String),

    /// The requested computation is outside what the crate supports.
    #[error("unsupported: {0}")]
    Capability(String),

    /// A parameter is outside its admissible range.
    #[error("out of range: {0}")]
    Range(String),

    /// A precondition specific to the operation does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// The solver stopped before reaching the requested gap; the best
    /// feasible bounds found are carried along.
    #[error("solver stalled: primal={primal:.6e}, dual={dual:.6e}, gap={gap:.6e}")]
    Convergence { primal: f64, dual: f64, gap: f64 },

    /// Tuple enumeration would exceed the configured cap.
    #[error("tuple enumeration size {tuples} exceeds cap {cap}")]
    TupleCap { tuples: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
