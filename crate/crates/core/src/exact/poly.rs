//! Dense univariate polynomials over Q.

use num::{BigInt, BigRational, One, Zero};

pub type Q = BigRational;

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Polynomial in t with exact rational coefficients, stored least degree
/// first with no trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<Q>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        PolyQ::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| q_int(c)).collect())
    }

    /// 1 - c*t.
    pub fn one_minus_ct(c: Q) -> Self {
        PolyQ::new(vec![Q::one(), -c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        PolyQ::new(out)
    }

    pub fn sub(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        PolyQ::new(out)
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, c: &Q) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute t -> c*t.
    pub fn subst_scale(&self, c: &Q) -> PolyQ {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut ck = Q::one();
        for a in &self.coeffs {
            out.push(a * &ck);
            ck *= c;
        }
        PolyQ::new(out)
    }

    pub fn pow(&self, mut e: u32) -> PolyQ {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
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

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg().unwrap();
        if self.deg().map_or(true, |n| n < dd) {
            return (PolyQ::zero(), self.clone());
        }
        let n = self.deg().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Q::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let factor = c / &lead;
            for i in 0..=dd {
                let v = &d.coeffs[i] * &factor;
                rem[k + i] -= v;
            }
            quo[k] = factor;
        }
        rem.truncate(dd);
        (PolyQ::new(quo), PolyQ::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&lead.recip())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as big integers; None if some coefficient is non-integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Substitute t -> t^k.
    pub fn subst_pow(&self, k: usize) -> PolyQ {
        assert!(k >= 1, "substitution exponent must be positive");
        let mut out = vec![Q::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        PolyQ::new(out)
    }

    /// Largest k such that the polynomial is supported on powers of t^k.
    pub fn power_support(&self) -> usize {
        let mut g = 0usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 && !c.is_zero() {
                g = gcd_usize(g, i);
            }
        }
        if g == 0 {
            1
        } else {
            g
        }
    }

    /// Inverse of subst_pow: coefficients at powers of t^k; None if some
    /// coefficient off the k-grid is nonzero.
    pub fn compress_pow(&self, k: usize) -> Option<PolyQ> {
        assert!(k >= 1);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(PolyQ::new(out))
    }

    /// Reversal with scaling: for P of degree d returns the polynomial
    /// P^(t) = (qt)^d * P(1/(qt)), i.e. coefficient j is p_{d-j} * q^j.
    pub fn rev_scaled(&self, q: &Q) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let d = self.deg().unwrap();
        let mut out = Vec::with_capacity(d + 1);
        let mut qj = Q::one();
        for j in 0..=d {
            out.push(&self.coeffs[d - j] * &qj);
            qj *= q;
        }
        PolyQ::new(out)
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

impl std::fmt::Display for PolyQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}
