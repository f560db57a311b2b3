//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// A parameter lies outside the admissible domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An infinite product or series did not reach its tail tolerance.
    #[error("truncation failure: no convergence within {max_terms} terms")]
    Truncation { max_terms: usize },
    /// Series terms grew instead of decaying.
    #[error("divergence detected after {terms} terms")]
    Divergence { terms: usize },
    /// A denominator parameter of a basic hypergeometric series is of the form q^{-m}.
    #[error("inadmissible series: lower parameter {index} produces a zero denominator at k = {k}")]
    Admissibility { index: usize, k: usize },
    /// Coefficient extraction was requested for a non-terminating series.
    #[error("series does not terminate, so it is not a polynomial")]
    NotPolynomial,
    /// The right-hand matrix of the pencil has a zero diagonal entry.
    #[error("pencil is singular: B has a zero pivot at row {index}")]
    PencilSingular { index: usize },
    /// The recurrence is degenerate (all coefficients of a row vanish) at this degree.
    #[error("recurrence is degenerate at n = {n}")]
    Degenerate { n: usize },
    /// The forward recurrence hit a vanishing leading coefficient.
    #[error("recurrence pivot mu4 vanishes at n = {n}")]
    Pivot { n: usize },
    /// An iterative method hit its iteration cap.
    #[error("{method} did not converge after {iterations} iterations")]
    Convergence { method: &'static str, iterations: usize },
    /// A non-real root has no conjugate partner.
    #[error("unpaired complex root {re} + {im}i")]
    Pairing { re: f64, im: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, QError>;
