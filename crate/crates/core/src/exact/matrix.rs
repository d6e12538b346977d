//! Dense matrices over Z with exact big-integer entries.
//!
//! Matrices act on column vectors; the columns of a "basis matrix" are the
//! basis vectors.  Sizes in this crate stay tiny (group orders and lattice
//! ranks are at most 16), so the algorithms favour clarity: Bareiss for
//! determinants, interpolation for characteristic polynomials, Smith normal
//! form for kernels and exact linear solves.

use super::poly::{PolyQ, Q};
use super::snf::smith_normal_form;
use num::{BigInt, Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>, // row-major
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.a.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut m = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = aik * other.get(k, j);
                    let cur = m.get(i, j) + v;
                    m.set(i, j, cur);
                }
            }
        }
        m
    }

    pub fn pow_u(&self, mut e: u64) -> IntMat {
        assert!(self.is_square());
        let mut acc = IntMat::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Rows of `self` on top of rows of `other`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        IntMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMat {
        IntMat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_col(v: &[BigInt]) -> IntMat {
        IntMat::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| self.a[i * n..(i + 1) * n].to_vec()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// det(I - M*t) as a polynomial in t, via evaluation at t = 0..n and
    /// exact Lagrange interpolation.  Coefficients are integers.
    pub fn reversed_charpoly(&self) -> PolyQ {
        assert!(self.is_square());
        let n = self.rows;
        let mut points = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let kk = BigInt::from(k as i64);
            let m = IntMat::from_fn(n, n, |i, j| {
                let v = -(self.get(i, j) * &kk);
                if i == j {
                    v + BigInt::one()
                } else {
                    v
                }
            });
            points.push(m.det());
        }
        let mut acc = PolyQ::zero();
        for (k, y) in points.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let mut numer = PolyQ::one();
            let mut denom = Q::one();
            for j in 0..=n {
                if j == k {
                    continue;
                }
                numer = numer.mul(&PolyQ::from_ints(&[-(j as i64), 1]));
                denom *= Q::from_integer(BigInt::from(k as i64 - j as i64));
            }
            let w = Q::from_integer(y.clone()) / denom;
            acc = acc.add(&numer.scale(&w));
        }
        assert!(acc.is_integral(), "characteristic polynomial must be integral");
        acc
    }

    /// Basis of {x : Mx = 0} as matrix columns.  The span is saturated
    /// (Z^cols intersected with the rational kernel).
    pub fn kernel_basis(&self) -> IntMat {
        let snf = smith_normal_form(self);
        let d = snf.diag();
        let mut idx = Vec::new();
        for j in 0..self.cols {
            if j >= d.len() || d[j].is_zero() {
                idx.push(j);
            }
        }
        snf.right().select_cols(&idx)
    }

    /// Solve M X = B over the integers.  None when no integral solution exists.
    pub fn solve(&self, b: &IntMat) -> Option<IntMat> {
        assert_eq!(self.rows, b.rows);
        let snf = smith_normal_form(self);
        let ub = snf.left().mul(b);
        let d = snf.diag();
        let mut y = IntMat::zero(self.cols, b.cols);
        for i in 0..self.rows {
            let di = if i < d.len() { d[i].clone() } else { BigInt::zero() };
            for j in 0..b.cols {
                let v = ub.get(i, j);
                if di.is_zero() {
                    if !v.is_zero() {
                        return None;
                    }
                } else {
                    let (q, r) = v.div_rem(&di);
                    if !r.is_zero() {
                        return None;
                    }
                    if i < self.cols {
                        y.set(i, j, q);
                    } else if !q.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(snf.right().mul(&y))
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse_unimodular(&self) -> Option<IntMat> {
        assert!(self.is_square());
        let inv = self.solve(&IntMat::identity(self.rows))?;
        if self.mul(&inv).is_identity() {
            Some(inv)
        } else {
            None
        }
    }

    pub fn abs_max(&self) -> BigInt {
        self.a
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}
