//! Crate-wide error type.
//!
//! Every fallible operation in the crate reports one of these variants; the
//! CLI maps them onto exit codes (detected mismatches exit 1, usage errors 2).

/// Errors raised by series arithmetic, substitution, and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An exponent violates the series contract: a negative power of `q`, or a
    /// variable that is not part of the series' variable set.
    #[error("invalid exponent {exponent} for variable {var}: {reason}")]
    InvalidExponent {
        /// Variable name.
        var: &'static str,
        /// Offending exponent.
        exponent: i32,
        /// What was violated.
        reason: &'static str,
    },

    /// Two series with different truncation specs were combined.
    #[error("truncation specs differ: {left} vs {right}")]
    SpecMismatch {
        /// Spec of the left operand.
        left: String,
        /// Spec of the right operand.
        right: String,
    },

    /// `invert` was called on a series whose constant term is not a unit, or
    /// whose non-constant terms do not all carry a positive power of `q`.
    #[error("series is not invertible: {reason}")]
    NotInvertible {
        /// Why inversion is impossible in the truncated ring.
        reason: String,
    },

    /// A substitution produced a term whose final `q`-exponent is negative.
    #[error("substitution left a negative q-exponent on surviving term {term}")]
    NegativeFinalExponent {
        /// Text rendering of the offending monomial.
        term: String,
    },

    /// `divide_exact` hit a nonzero remainder.
    #[error("inexact division: first unresolved term is {term} (coefficient {coeff})")]
    InexactDivision {
        /// Text rendering of the first offending monomial.
        term: String,
        /// Its leftover coefficient.
        coeff: String,
    },

    /// Brute-force enumeration was asked for a scale it refuses to attempt.
    #[error("enumeration bounds refused: {0}")]
    RefusedScale(String),

    /// A class id passed to the registry or CLI is not recognised.
    #[error("unknown class id: {0}")]
    UnknownClass(String),

    /// Input data (JSON series, CLI argument) could not be parsed.
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
