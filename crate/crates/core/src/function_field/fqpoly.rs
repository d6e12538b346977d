//! Polynomials and rational functions over F_q.
//!
//! Coefficients are field-element indices, least degree first, always
//! trimmed.  Monic polynomials of degree d are interchangeable with their
//! radix-q code sum c_i q^i over the non-leading coefficients; ascending code
//! = lexicographic order with the top coefficient most significant, which is
//! the canonical place ordering.

use super::fq::Fq;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    c: Vec<u8>,
}

impl FqPoly {
    pub fn new(mut c: Vec<u8>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly { c }
    }

    pub fn zero() -> Self {
        FqPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly { c: vec![1] }
    }

    pub fn constant(a: u8) -> Self {
        FqPoly::new(vec![a])
    }

    /// The polynomial t.
    pub fn t() -> Self {
        FqPoly { c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c
    }

    pub fn leading(&self) -> Option<u8> {
        self.c.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn add(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        let n = self.c.len().max(other.c.len());
        FqPoly::new((0..n).map(|i| fq.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        let n = self.c.len().max(other.c.len());
        FqPoly::new((0..n).map(|i| fq.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, fq: &Fq, a: u8) -> FqPoly {
        FqPoly::new(self.c.iter().map(|&x| fq.mul(x, a)).collect())
    }

    pub fn mul(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![0u8; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(a, b));
            }
        }
        FqPoly::new(out)
    }

    pub fn divrem(&self, fq: &Fq, d: &FqPoly) -> (FqPoly, FqPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg().unwrap();
        if self.deg().map_or(true, |n| n < dd) {
            return (FqPoly::zero(), self.clone());
        }
        let n = self.deg().unwrap();
        let lead_inv = fq.inv(d.leading().unwrap());
        let mut rem = self.c.clone();
        let mut quo = vec![0u8; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd];
            if c == 0 {
                continue;
            }
            let f = fq.mul(c, lead_inv);
            for i in 0..=dd {
                rem[k + i] = fq.sub(rem[k + i], fq.mul(d.coeff(i), f));
            }
            quo[k] = f;
        }
        rem.truncate(dd);
        (FqPoly::new(quo), FqPoly::new(rem))
    }

    pub fn divides(&self, fq: &Fq, other: &FqPoly) -> bool {
        other.divrem(fq, self).1.is_zero()
    }

    /// Largest k with pi^k | self (self nonzero).
    pub fn multiplicity(&self, fq: &Fq, pi: &FqPoly) -> u32 {
        assert!(!self.is_zero());
        assert!(pi.deg().map_or(false, |d| d >= 1));
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(fq, pi);
            if r.is_zero() {
                k += 1;
                cur = q;
            } else {
                return k;
            }
        }
    }

    pub fn eval(&self, fq: &Fq, a: u8) -> u8 {
        self.c.iter().rev().fold(0u8, |acc, &c| fq.add(fq.mul(acc, a), c))
    }

    pub fn derivative(&self, fq: &Fq) -> FqPoly {
        if self.c.len() <= 1 {
            return FqPoly::zero();
        }
        FqPoly::new(
            (1..self.c.len())
                .map(|i| {
                    let mut s = 0u8;
                    for _ in 0..(i as u32 % fq.p()) {
                        s = fq.add(s, self.c[i]);
                    }
                    s
                })
                .collect(),
        )
    }

    pub fn make_monic(&self, fq: &Fq) -> FqPoly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(l) => self.scale(fq, fq.inv(l)),
        }
    }

    pub fn gcd_monic(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(fq, &b).1;
            a = b;
            b = r;
        }
        a.make_monic(fq)
    }

    /// Resultant by the Euclidean reduction
    /// res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} res(B, R).
    pub fn resultant(&self, fq: &Fq, other: &FqPoly) -> u8 {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            return 0;
        }
        let mut acc = 1u8;
        let mut sign_odd = false;
        loop {
            let da = a.deg().unwrap();
            let db = b.deg().unwrap();
            if db == 0 {
                acc = fq.mul(acc, fq.pow(b.coeff(0), da as u64));
                break;
            }
            let r = a.divrem(fq, &b).1;
            if r.is_zero() {
                return 0;
            }
            if da % 2 == 1 && db % 2 == 1 {
                sign_odd = !sign_odd;
            }
            let dr = r.deg().unwrap();
            acc = fq.mul(acc, fq.pow(b.leading().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
        }
        if sign_odd {
            fq.neg(acc)
        } else {
            acc
        }
    }

    /// Monic irreducible factors with multiplicities, by trial division in
    /// place order (smallest factor found first is automatically irreducible).
    pub fn factor_monic(&self, fq: &Fq) -> Vec<(FqPoly, u32)> {
        assert!(!self.is_zero());
        let mut cur = self.make_monic(fq);
        let mut out: Vec<(FqPoly, u32)> = Vec::new();
        'outer: while cur.deg().unwrap() > 0 {
            let n = cur.deg().unwrap();
            for d in 1..=n / 2 {
                for code in 0..(fq.q() as u64).pow(d as u32) {
                    let cand = FqPoly::decode_monic(fq.q(), d, code);
                    if cand.divides(fq, &cur) {
                        let m = cur.multiplicity(fq, &cand);
                        for _ in 0..m {
                            cur = cur.divrem(fq, &cand).0;
                        }
                        out.push((cand, m));
                        continue 'outer;
                    }
                }
            }
            out.push((cur.clone(), 1));
            break;
        }
        out
    }

    /// Radix-q code of the non-leading coefficients of a monic polynomial.
    pub fn encode_monic(&self, q: u32) -> u64 {
        assert!(self.is_monic());
        let d = self.deg().unwrap();
        let mut code = 0u64;
        for i in (0..d).rev() {
            code = code * q as u64 + self.coeff(i) as u64;
        }
        code
    }

    pub fn decode_monic(q: u32, deg: usize, mut code: u64) -> FqPoly {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((code % q as u64) as u8);
            code /= q as u64;
        }
        c.push(1);
        FqPoly { c }
    }
}

impl std::fmt::Display for FqPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}*t", c)?,
                (_, 1) => write!(f, "t^{}", i)?,
                (_, _) => write!(f, "{}*t^{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// f = num/den in F_q(t), num and den nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqRatFn {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl FqRatFn {
    pub fn new(num: FqPoly, den: FqPoly) -> Self {
        assert!(!num.is_zero() && !den.is_zero(), "rational function must be nonzero");
        FqRatFn { num, den }
    }

    pub fn from_poly(p: FqPoly) -> Self {
        FqRatFn::new(p, FqPoly::one())
    }

    /// ord_v for a finite place with monic irreducible pi.
    pub fn ord_finite(&self, fq: &Fq, pi: &FqPoly) -> i64 {
        self.num.multiplicity(fq, pi) as i64 - self.den.multiplicity(fq, pi) as i64
    }

    /// ord_infinity = deg den - deg num.
    pub fn ord_infinity(&self) -> i64 {
        self.den.deg().unwrap() as i64 - self.num.deg().unwrap() as i64
    }

    /// Norm from k(v) to F_q of the image of f * pi^{-ord_v(f)} in k(v)^x,
    /// computed with resultants against the monic uniformizer pi.
    pub fn unit_norm_finite(&self, fq: &Fq, pi: &FqPoly) -> u8 {
        let an = self.num.multiplicity(fq, pi);
        let ad = self.den.multiplicity(fq, pi);
        let mut n1 = self.num.clone();
        for _ in 0..an {
            n1 = n1.divrem(fq, pi).0;
        }
        let mut d1 = self.den.clone();
        for _ in 0..ad {
            d1 = d1.divrem(fq, pi).0;
        }
        let rn = pi.resultant(fq, &n1);
        let rd = pi.resultant(fq, &d1);
        fq.mul(rn, fq.inv(rd))
    }

    /// Residue at infinity of f * u^{-ord_inf(f)} with u = 1/t: the ratio of
    /// leading coefficients.
    pub fn unit_norm_infinity(&self, fq: &Fq) -> u8 {
        fq.mul(self.num.leading().unwrap(), fq.inv(self.den.leading().unwrap()))
    }
}

impl std::fmt::Display for FqRatFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == FqPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
