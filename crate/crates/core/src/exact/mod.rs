//! Exact algebra over Q: dense polynomials, truncated power series,
//! big-integer matrices with Smith normal form, rational-function
//! reconstruction from series, and Laurent leading data.
//!
//! The whole crate reports leading coefficients in "t-form": with
//! t = q^(-s) one has, near s = 0, 1 - t = s log q + O(s^2), and near s = 1,
//! 1 - qt = (s - 1) log q + O((s - 1)^2).  A statement of the shape
//! "lim L(s) * s^r = c * (log q)^(-r)" is therefore equivalent to the exact
//! rational statement "L(t) = c * (1 - t)^(-r) * (1 + O(1 - t))", which is
//! what [`ratfn::laurent_lead`] computes.  No logarithm is ever evaluated.

pub mod fgab;
pub mod matrix;
pub mod pade;
pub mod poly;
pub mod ratfn;
pub mod series;
pub mod snf;

pub use fgab::{column_span_basis, AbMap, FgAb};
pub use matrix::IntMat;
pub use pade::pade_reconstruct;
pub use poly::{PolyQ, Q};
pub use ratfn::{laurent_lead, LaurentLead, LeadBase, RationalFunctionQ};
pub use series::TruncatedSeries;
pub use snf::{smith_normal_form, AbGroup, SmithForm};

use num::BigInt;

/// q^k as a BigInt, for small prime powers q.
pub fn big_pow(q: u32, k: u32) -> BigInt {
    BigInt::from(q).pow(k)
}

/// Rational q^k for k of either sign.
pub fn big_pow_i(q: u32, k: i64) -> Q {
    let b = Q::from_integer(BigInt::from(q));
    let mut acc = Q::from_integer(BigInt::from(1));
    for _ in 0..k.unsigned_abs() {
        acc *= &b;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}
