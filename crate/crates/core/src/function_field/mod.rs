//! The rational function field F_q(t) and its tame abelian covers:
//! finite-field tables, polynomial arithmetic, place enumeration, and
//! decomposition data.
//!
//! [fq::Fq] [fqpoly::FqPoly] [places::Place] [cover::AbelianCover]

pub mod cover;
pub mod fq;
pub mod fqpoly;
pub mod places;

pub use cover::{AbelianCover, Decomposition, KummerFactor};
pub use fq::{field, Fq};
pub use fqpoly::{FqPoly, FqRatFn};
pub use places::{enumerate_places, irreducible_codes, irreducible_count, Place};
