//! Tame abelian covers of P^1 over F_q.
//!
//! A cover is a constant-field extension of degree n0 together with Kummer
//! factors x_i^{m_i} = f_i, f_i in F_q(t)^x, each m_i dividing q - 1.  The
//! Galois group is Z/n0 x prod Z/m_i, with elements stored as tuples reduced
//! modulo the generator orders (constant component first).
//!
//! [KummerFactor] [AbelianCover] [Decomposition]

use std::collections::BTreeMap;

use super::fq::{field, Fq};
use super::fqpoly::FqRatFn;
use super::places::Place;
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerFactor {
    pub m: u32,
    pub f: FqRatFn,
}

/// Inertia generator and a Frobenius lift at one place, as group tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub inertia_gen: Vec<u32>,
    pub frobenius: Vec<u32>,
}

#[derive(Clone)]
pub struct AbelianCover {
    q: u32,
    n0: u32,
    factors: Vec<KummerFactor>,
    fq: Arc<Fq>,
    /// Per factor: finite places of nonzero order, with the order.
    divisors: Vec<BTreeMap<Place, i64>>,
    ramified: Vec<Place>,
}

impl std::fmt::Debug for AbelianCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AbelianCover")
            .field("q", &self.q)
            .field("n0", &self.n0)
            .field("factors", &self.factors)
            .finish()
    }
}

// Derived data (divisors, ramification) is a function of these three fields.
impl PartialEq for AbelianCover {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n0 == other.n0 && self.factors == other.factors
    }
}

impl Eq for AbelianCover {}

impl AbelianCover {
    pub fn new(q: u32, n0: u32, factors: Vec<KummerFactor>) -> Result<Self> {
        let fq = field(q)?;
        if n0 == 0 {
            return Err(Error::Validation("constant-field degree must be >= 1".into()));
        }
        for kf in &factors {
            if kf.m < 2 {
                return Err(Error::Validation("Kummer exponent must be >= 2".into()));
            }
            if kf.m % fq.p() == 0 {
                return Err(Error::WildRamification { p: fq.p(), n: kf.m });
            }
            if (q - 1) % kf.m != 0 {
                return Err(Error::NotKummerCompatible { m: kf.m, qm1: q - 1 });
            }
        }

        let mut divisors = Vec::with_capacity(factors.len());
        for kf in &factors {
            let mut div: BTreeMap<Place, i64> = BTreeMap::new();
            for (pi, mult) in kf.f.num.make_monic(&fq).factor_monic(&fq) {
                *div.entry(Place::finite(q, &pi)).or_insert(0) += mult as i64;
            }
            for (pi, mult) in kf.f.den.make_monic(&fq).factor_monic(&fq) {
                *div.entry(Place::finite(q, &pi)).or_insert(0) -= mult as i64;
            }
            div.retain(|_, &mut a| a != 0);
            divisors.push(div);
        }

        let cover = AbelianCover { q, n0, factors, fq, divisors, ramified: Vec::new() };
        cover.check_geometric_connectedness()?;

        let mut ramified: Vec<Place> = Vec::new();
        let mut support: Vec<Place> = cover.divisors.iter().flat_map(|d| d.keys().copied()).collect();
        support.sort();
        support.dedup();
        for v in std::iter::once(Place::Infinity).chain(support) {
            if cover.inertia_order_at(&v) > 1 && !ramified.contains(&v) {
                ramified.push(v);
            }
        }
        Ok(AbelianCover { ramified, ..cover })
    }

    /// Constant-field extension only.
    pub fn constant(q: u32, n0: u32) -> Result<Self> {
        AbelianCover::new(q, n0, Vec::new())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn fq(&self) -> &Arc<Fq> {
        &self.fq
    }

    pub fn constant_field_degree(&self) -> u32 {
        self.n0
    }

    pub fn factors(&self) -> &[KummerFactor] {
        &self.factors
    }

    /// Orders of the group generators: constant part first, then one per
    /// Kummer factor.
    pub fn orders(&self) -> Vec<u32> {
        let mut o = vec![self.n0];
        o.extend(self.factors.iter().map(|kf| kf.m));
        o
    }

    pub fn group_order(&self) -> u64 {
        self.orders().iter().map(|&m| m as u64).product()
    }

    /// Order of the full Kummer part; this is the geometric Galois group.
    pub fn geometric_group_order(&self) -> u64 {
        self.factors.iter().map(|kf| kf.m as u64).product()
    }

    pub fn ramified_places(&self) -> &[Place] {
        &self.ramified
    }

    fn ord_at(&self, i: usize, v: &Place) -> i64 {
        match v {
            Place::Infinity => self.factors[i].f.ord_infinity(),
            _ => self.divisors[i].get(v).copied().unwrap_or(0),
        }
    }

    /// For each nonzero character of the Kummer part, some finite place must
    /// see a nonzero combined order mod M; otherwise a twist descends to a
    /// constant-field extension and the cover is geometrically disconnected.
    fn check_geometric_connectedness(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Ok(());
        }
        let ms: Vec<u64> = self.factors.iter().map(|kf| kf.m as u64).collect();
        let big_m = ms.iter().fold(1u64, |acc, &m| acc / gcd(acc, m) * m);
        let support: Vec<Place> = {
            let mut s: Vec<Place> = self.divisors.iter().flat_map(|d| d.keys().copied()).collect();
            s.sort();
            s.dedup();
            s
        };
        let total: u64 = ms.iter().product();
        for idx in 1..total {
            let mut rem = idx;
            let e: Vec<u64> = ms
                .iter()
                .map(|&m| {
                    let c = rem % m;
                    rem /= m;
                    c
                })
                .collect();
            let connected = support.iter().any(|v| {
                let s: i64 = e
                    .iter()
                    .zip(ms.iter())
                    .enumerate()
                    .map(|(i, (&ei, &mi))| ei as i64 * (big_m / mi) as i64 * self.ord_at(i, v))
                    .sum();
                s.rem_euclid(big_m as i64) != 0
            });
            if !connected {
                return Err(Error::NotGeometricallyConnected(format!(
                    "character {:?} of the Kummer part is unramified everywhere",
                    e
                )));
            }
        }
        Ok(())
    }

    /// Inertia and Frobenius tuples at a place.  The inertia generator is the
    /// order vector of the f_i; the Frobenius combines the residue-degree
    /// shift on constants with the Kummer symbols of the unit parts, computed
    /// through norms down to F_q.
    pub fn decomposition_at(&self, v: &Place) -> Decomposition {
        let k = self.factors.len();
        let mut inertia_gen = vec![0u32; k + 1];
        let mut frobenius = vec![0u32; k + 1];
        frobenius[0] = v.deg() % self.n0;
        let pi = v.poly(self.q);
        for i in 0..k {
            let m = self.factors[i].m;
            let a = self.ord_at(i, v);
            inertia_gen[i + 1] = a.rem_euclid(m as i64) as u32;
            let norm = match &pi {
                Some(pi) => self.factors[i].f.unit_norm_finite(&self.fq, pi),
                None => self.factors[i].f.unit_norm_infinity(&self.fq),
            };
            frobenius[i + 1] = self.fq.dlog(norm) % m;
        }
        Decomposition { inertia_gen, frobenius }
    }

    /// Ramification index: order of the inertia generator.
    pub fn inertia_order_at(&self, v: &Place) -> u64 {
        self.factors
            .iter()
            .enumerate()
            .fold(1u64, |acc, (i, kf)| {
                let m = kf.m as u64;
                let a = self.ord_at(i, v).rem_euclid(m as i64) as u64;
                let ord = m / gcd(m, a);
                acc / gcd(acc, ord) * ord
            })
    }

    /// Genus of the (geometrically connected) cover, by Riemann-Hurwitz over
    /// P^1 with tame ramification.
    pub fn genus(&self) -> u64 {
        let n = self.geometric_group_order() as i64;
        let mut twog2 = -2 * n;
        for v in &self.ramified {
            let e = self.inertia_order_at(v) as i64;
            twog2 += v.deg() as i64 * (n / e) * (e - 1);
        }
        assert!(twog2 >= -2 && twog2 % 2 == 0, "Riemann-Hurwitz must yield a genus");
        ((twog2 + 2) / 2) as u64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
