//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library and mapped to exit codes by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Polynomial text could not be parsed; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A variable index outside `1..=nvars` was used.
    #[error("variable x{index} out of range for {nvars} variable(s)")]
    VarOutOfRange { index: usize, nvars: usize },

    /// Operands live in different ambient dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The input polynomial violates a precondition (degree, variable count, ...).
    #[error("invalid input polynomial: {0}")]
    InvalidInput(String),

    /// The squarefreeness check exhibited a repeated factor.
    #[error("input polynomial is not squarefree: repeated factor {factor}")]
    NotSquarefree { factor: String },

    /// The grid cursor exhausted its step limit without a nondegenerate center.
    #[error("perturbation step limit ({limit}) exhausted without finding a nondegenerate center")]
    StepLimitExhausted { limit: usize },

    /// An operation required a (numerically) critical point but was handed something else.
    #[error("point is not critical: |Q| = {qnorm:.3e} exceeds tolerance {tol:.3e}")]
    NotCritical { qnorm: f64, tol: f64 },

    /// The eigensolver met an eigenvalue too close to zero; upstream certification
    /// should have rejected this configuration, so this indicates a pipeline bug.
    #[error("near-degenerate Hessian at routing point {id}: |lambda|_min = {lambda_min:.3e} below {threshold:.3e}")]
    NearDegenerateHessian { id: usize, lambda_min: f64, threshold: f64 },

    /// A steepest-ascent trace failed to end in a certified capture.
    #[error("trace failed with status `{status}`{detail}")]
    TraceFailed { status: String, detail: String },

    /// A query point lies on the hypersurface `f = 0`.
    #[error("point lies on f = 0: {point}")]
    PointOnZeroSet { point: String },

    /// A query point claims to be critical but matches no certified routing point.
    #[error("critical query point {point} matches no certified routing point")]
    UnmatchedCriticalPoint { point: String },

    /// The solver reported a degenerate configuration where a nondegenerate
    /// one was required.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A cache file failed validation against the current invocation.
    #[error("cache invalid: {0}")]
    CacheInvalid(String),

    /// Malformed rational point text on the command line.
    #[error("invalid point literal `{text}`: {msg}")]
    BadPointLiteral { text: String, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for the JSON error schema.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::VarOutOfRange { .. } => "variable_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidInput(_) => "invalid_input",
            Error::NotSquarefree { .. } => "not_squarefree",
            Error::StepLimitExhausted { .. } => "step_limit_exhausted",
            Error::NotCritical { .. } => "not_critical",
            Error::NearDegenerateHessian { .. } => "near_degenerate_hessian",
            Error::TraceFailed { .. } => "trace_failed",
            Error::PointOnZeroSet { .. } => "point_on_zero_set",
            Error::UnmatchedCriticalPoint { .. } => "unmatched_critical_point",
            Error::Degenerate(_) => "degenerate",
            Error::CacheInvalid(_) => "cache_invalid",
            Error::BadPointLiteral { .. } => "bad_point_literal",
            Error::Io(_) => "io_error",
            Error::Serde(_) => "serde_error",
        }
    }
}
