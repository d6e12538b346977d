//! Rational functions over Q and exact leading coefficients at t = 1, 1/q.
//!
//! [`RationalFunctionQ`] keeps numerator and denominator coprime, with the
//! denominator's lowest-order coefficient scaled to 1 (for the L-functions in
//! this crate both constant terms end up exactly 1).  [`laurent_lead`]
//! extracts the vanishing order and leading value of a rational function
//! along the factor 1 - t or 1 - q t; these are the t-form avatars of
//! special values at s = 0 and s = 1.

use super::poly::{PolyQ, Q};
use num::{BigInt, One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionQ {
    num: PolyQ,
    den: PolyQ,
}

impl RationalFunctionQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RationalFunctionQ { num, den };
        f.normalize();
        f
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RationalFunctionQ::new(p, PolyQ::one())
    }

    pub fn one() -> Self {
        RationalFunctionQ::from_poly(PolyQ::one())
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyQ::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if let Some(d) = g.deg() {
            if d > 0 {
                self.num = self.num.divrem(&g).0;
                self.den = self.den.divrem(&g).0;
            }
        }
        // scale the lowest nonzero denominator coefficient to 1
        let c = self
            .den
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero denominator")
            .clone();
        if !c.is_one() {
            let inv = c.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn mul(&self, other: &RationalFunctionQ) -> RationalFunctionQ {
        RationalFunctionQ::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> RationalFunctionQ {
        assert!(!self.num.is_zero(), "inverse of zero");
        RationalFunctionQ::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RationalFunctionQ {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RationalFunctionQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// t -> c t.
    pub fn subst_scale(&self, c: &Q) -> RationalFunctionQ {
        RationalFunctionQ::new(self.num.subst_scale(c), self.den.subst_scale(c))
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, t: &Q) -> Option<Q> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    /// (deg num, deg den); zero numerator reports (None, 0).
    pub fn degrees(&self) -> (Option<usize>, usize) {
        (self.num.deg(), self.den.deg().unwrap_or(0))
    }
}

impl std::fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Linear factor along which a Laurent expansion is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadBase {
    /// 1 - t, root t = 1 (the s = 0 side).
    OneMinusT,
    /// 1 - q t, root t = 1/q (the s = 1 side).
    OneMinusQT(u32),
}

impl LeadBase {
    fn factor(self) -> PolyQ {
        match self {
            LeadBase::OneMinusT => PolyQ::one_minus_ct(Q::one()),
            LeadBase::OneMinusQT(q) => PolyQ::one_minus_ct(Q::from_integer(BigInt::from(q))),
        }
    }

    fn root(self) -> Q {
        match self {
            LeadBase::OneMinusT => Q::one(),
            LeadBase::OneMinusQT(q) => Q::one() / Q::from_integer(BigInt::from(q)),
        }
    }
}

/// Order and leading value of f along the base factor b:
/// f(t) = value * b(t)^order * (1 + O(b)) near the root of b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentLead {
    pub order: i64,
    pub value: Q,
}

fn strip_factor(p: &PolyQ, b: &PolyQ) -> (u32, PolyQ) {
    let mut mult = 0u32;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.divrem(b);
        if r.is_zero() && !cur.is_zero() {
            cur = q;
            mult += 1;
        } else {
            return (mult, cur);
        }
    }
}

pub fn laurent_lead(f: &RationalFunctionQ, base: LeadBase) -> LaurentLead {
    assert!(!f.is_zero(), "Laurent lead of the zero function");
    let b = base.factor();
    let t0 = base.root();
    let (a, num1) = strip_factor(f.num(), &b);
    let (c, den1) = strip_factor(f.den(), &b);
    let value = num1.eval(&t0) / den1.eval(&t0);
    LaurentLead {
        order: a as i64 - c as i64,
        value,
    }
}
