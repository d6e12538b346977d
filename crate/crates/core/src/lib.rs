//! Exact arithmetic for L-functions of Z-constructible sheaves, algebraic tori,
//! and 1-motives over the rational function field K = F_q(t).
//!
//! Everything is computed as an identity of rational numbers: L-functions are
//! rational functions of t = q^(-s) with integer coefficients, special values
//! are Laurent leading coefficients at t = 1 (the point s = 0) or t = 1/q
//! (the point s = 1), and Euler characteristics are orders of finite groups
//! assembled from Smith normal forms.  No floating point, no logarithms.
//!
//! Layout:
//! - [`exact`]: polynomials and truncated power series over Q, big-integer
//!   matrices, Smith normal form, Pade reconstruction, Laurent leading data.
//! - [`function_field`]: the field F_q, places of the projective line,
//!   tame abelian covers and their decomposition data.
//! - [`galois`]: lattices with an action of a finite abelian group, group
//!   cohomology, finitely generated groups with an automorphism.
//! - [`lfun`]: Euler factors, truncated Euler products, certified rational
//!   reconstruction, Artin conductors, functional equations.
//! - [`weil_etale`]: Euler characteristics of the weight complex and the
//!   leading-coefficient verification for constructible sheaves.
//! - [`tori`]: torus L-functions, class data, Tamagawa numbers by two routes.
//! - [`motives`]: 1-motives [X -> T] with X constant and T split, their
//!   corrected character groups, L-functions and leading coefficients.

pub mod error;
pub mod exact;
pub mod function_field;
pub mod galois;
pub mod lfun;
pub mod motives;
pub mod tori;
pub mod weil_etale;

pub use error::{Error, Result};
