//! Exact Pade reconstruction of a rational function from a truncated series.
//!
//! [`pade_reconstruct`] finds P/Q with deg P <= dnum, deg Q <= dden, Q(0) = 1
//! and P/Q = S mod t^{order+1}, using Gaussian elimination over Q.  Every
//! available series coefficient is checked, not just the dnum + dden + 1 the
//! linear system consumes; a series that merely starts like a rational
//! function of the requested shape is rejected.

use super::poly::{PolyQ, Q};
use super::ratfn::RationalFunctionQ;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use num::{One, Zero};

/// Row-reduce and solve a * x = b over Q; free variables are set to zero.
/// None when the system is inconsistent.
fn solve_linear(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].clone().recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let v = &a[r][j] * &f;
                a[i][j] -= v;
            }
            let v = &b[r] * &f;
            b[i] -= v;
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![Q::zero(); cols];
    for c in 0..cols {
        if let Some(p) = pivot_of_col[c] {
            x[c] = b[p].clone();
        }
    }
    Some(x)
}

pub fn pade_reconstruct(s: &TruncatedSeries, dnum: usize, dden: usize) -> Result<RationalFunctionQ> {
    if s.order() < dnum + dden {
        return Err(Error::Validation(format!(
            "series order {} too small for Pade bounds ({}, {})",
            s.order(),
            dnum,
            dden
        )));
    }
    // q_0 = 1; unknowns q_1..q_dden from sum_j q_j s_{k-j} = 0, dnum < k <= dnum+dden
    let mut a = Vec::with_capacity(dden);
    let mut rhs = Vec::with_capacity(dden);
    for k in dnum + 1..=dnum + dden {
        let row: Vec<Q> = (1..=dden)
            .map(|j| {
                if j <= k {
                    s.coeff(k - j).clone()
                } else {
                    Q::zero()
                }
            })
            .collect();
        a.push(row);
        rhs.push(-s.coeff(k).clone());
    }
    let qs = solve_linear(a, rhs).ok_or_else(|| {
        Error::NoSolution
    })?;
    let mut den_coeffs = vec![Q::one()];
    den_coeffs.extend(qs);
    let den = PolyQ::new(den_coeffs);
    // p_k = sum_j q_j s_{k-j} for k <= dnum
    let num_coeffs: Vec<Q> = (0..=dnum)
        .map(|k| {
            let mut acc = Q::zero();
            for (j, qc) in den.coeffs().iter().enumerate() {
                if j > k {
                    break;
                }
                acc += qc * s.coeff(k - j);
            }
            acc
        })
        .collect();
    let num = PolyQ::new(num_coeffs);
    // full-constraint check: P/Q must reproduce *every* known coefficient
    let expanded = TruncatedSeries::from_poly(&num, s.order())
        .mul(&TruncatedSeries::from_poly(&den, s.order()).inverse());
    if expanded.coeffs() != s.coeffs() {
        return Err(Error::NoSolution);
    }
    Ok(RationalFunctionQ::new(num, den))
}
