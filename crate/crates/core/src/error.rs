//! Crate-wide error type.
//!
//! Every fallible operation in the library returns one of these variants;
//! the CLI maps `Validation`-class errors to exit code 2 and verification
//! failures to exit code 1.

use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("kummer exponent {m} does not divide q - 1 = {qm1}")]
    NotKummerCompatible { m: u32, qm1: u32 },

    #[error("kummer data is not geometrically connected: {0}")]
    NotGeometricallyConnected(String),

    #[error("wild ramification is unsupported (p = {p} divides {n})")]
    WildRamification { p: u32, n: u32 },

    #[error("singular matrix in exact solve")]
    SingularMatrix,

    #[error("no rational function with the requested degree bounds matches the series")]
    NoSolution,

    #[error("reconstruction unstable: {0}")]
    ReconstructionUnstable(String),

    #[error("pole/zero order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: i64, found: i64 },

    #[error("functional equation violated: lhs != rhs at chi = {chi}")]
    FunctionalEquationViolated { chi: i64 },

    #[error("verification failed [{label}]: lhs = {lhs}, rhs = {rhs}")]
    VerificationFailed {
        label: String,
        lhs: BigRational,
        rhs: BigRational,
    },

    #[error("no closed-form class data for this torus family")]
    UnsupportedFamily,

    #[error("conductor degree {0} is odd; Lie-algebra Euler characteristic undefined")]
    OddConductor(i64),

    #[error("cohomology of the weight complex is infinite (non-semisimple fixed part)")]
    InfiniteCohomology,
}

pub type Result<T> = std::result::Result<T, Error>;
