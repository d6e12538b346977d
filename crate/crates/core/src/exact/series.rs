//! Truncated power series over Q.
//!
//! A series of truncation order D stores the coefficients of t^0 .. t^D and
//! represents its value modulo t^(D+1).  All operations are exact.

use super::poly::{PolyQ, Q};
use num::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>, // length = order + 1
}

impl TruncatedSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Q::zero(); order + 1];
        coeffs[0] = Q::one();
        TruncatedSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        TruncatedSeries::from_coeffs(
            cs.iter()
                .map(|&c| Q::from_integer(num::BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_poly(p: &PolyQ, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        for i in 0..=order {
            coeffs.push(p.coeff(i));
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = vec![Q::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> TruncatedSeries {
        assert!(!self.coeffs[0].is_zero(), "series has no inverse");
        let order = self.order();
        let c0 = self.coeffs[0].clone().recip();
        let mut out = vec![Q::zero(); order + 1];
        out[0] = c0.clone();
        for n in 1..=order {
            let mut acc = Q::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &out[n - k];
            }
            out[n] = -acc * &c0;
        }
        TruncatedSeries { coeffs: out }
    }

    /// Integer power (negative allowed when the constant term is a unit).
    pub fn powi(&self, e: i64) -> TruncatedSeries {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = TruncatedSeries::one(self.order());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Substitute t -> t^k (order is preserved; high terms drop off).
    pub fn subst_pow(&self, k: usize) -> TruncatedSeries {
        assert!(k >= 1);
        let order = self.order();
        let mut out = vec![Q::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(ik) if ik <= order => out[ik] = c.clone(),
                _ => break,
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
