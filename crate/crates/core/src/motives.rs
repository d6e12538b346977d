//! 1-motives [X -> T] over F_q(t) with X a constant lattice and T a split
//! torus: the subsheaf of sections landing in the identity components of the
//! Neron model, the expected vanishing order, the motivic L-function, the
//! Euler characteristic of the mapping fiber, and the end-to-end verifier of
//! the leading-coefficient identity at s = 1.
//!
//! [OneMotive] [XDeltaLocal] [XDeltaData] [MotiveReport] [l_motive]
//! [chi_w_motive] [verify_theorem_main]
//!
//! At each place where some map entry has a zero or pole, the component map
//! is multiplication by the valuation matrix V_v.  Its saturated kernel is
//! the local section lattice, and its image C_v is free with trivial
//! Frobenius, so everything downstream is assembled from the virtual sheaf
//! (constant X) - sum_v (skyscraper C_v) together with the split-torus zeta
//! factor; the substitution t -> qt realizes the shift s -> s - 1.

use std::collections::BTreeSet;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::exact::{big_pow_i, laurent_lead, IntMat, LaurentLead, LeadBase, Q, RationalFunctionQ};
use crate::function_field::{field, AbelianCover, FqRatFn, Place};
use crate::galois::{FrobModule, GaloisLattice};
use crate::lfun::{l_function_opts, zeta_of_cover, LOptions, SheafAtom, VirtualSheaf};
use crate::weil_etale::chi_w_virtual;

/// [X -> T]: a constant lattice Z^k mapping to a split torus G_m^d, given by
/// the k images of the basis of X, each a d-tuple of nonzero elements of
/// F_q(t).
#[derive(Clone, Debug)]
pub struct OneMotive {
    q: u32,
    x_rank: usize,
    torus_rank: usize,
    /// map[i][j] = j-th coordinate of the image of the i-th basis vector.
    map: Vec<Vec<FqRatFn>>,
}

/// Local data at one support place.
#[derive(Clone, Debug, PartialEq)]
pub struct XDeltaLocal {
    pub place: Place,
    /// V_v: torus_rank x x_rank matrix of valuations ord_v(map[i][j]).
    pub valuations: IntMat,
    /// Saturated basis of ker V_v, the sections regular at v.
    pub kernel: IntMat,
    /// rank of C_v = im V_v, the free quotient with trivial Frobenius.
    pub quotient_rank: usize,
}

/// Support and local kernels/quotients of the section subsheaf.
#[derive(Clone, Debug, PartialEq)]
pub struct XDeltaData {
    pub support: Vec<XDeltaLocal>,
}

impl XDeltaData {
    pub fn total_quotient_rank(&self) -> usize {
        self.support.iter().map(|l| l.quotient_rank).sum()
    }
}

impl OneMotive {
    pub fn new(q: u32, x_rank: usize, torus_rank: usize, map: Vec<Vec<FqRatFn>>) -> Result<OneMotive> {
        field(q)?;
        if map.len() != x_rank || map.iter().any(|row| row.len() != torus_rank) {
            return Err(Error::Validation(format!(
                "map must be {} x {} rational functions",
                x_rank, torus_rank
            )));
        }
        for row in &map {
            for f in row {
                if f.num.is_zero() || f.den.is_zero() {
                    return Err(Error::Validation("map entries must be nonzero".into()));
                }
            }
        }
        Ok(OneMotive { q, x_rank, torus_rank, map })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn x_rank(&self) -> usize {
        self.x_rank
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn map(&self) -> &[Vec<FqRatFn>] {
        &self.map
    }

    /// Valuation matrices, kernels, and free quotients at every place where
    /// some entry has a zero or pole.  Places with V_v = 0 are dropped.
    pub fn x_delta(&self) -> XDeltaData {
        let fq = field(self.q).expect("q validated at construction");
        let mut candidates: BTreeSet<Place> = BTreeSet::new();
        for row in &self.map {
            for f in row {
                for poly in [&f.num, &f.den] {
                    for (pi, _) in poly.factor_monic(&fq) {
                        candidates.insert(Place::finite(self.q, &pi));
                    }
                }
                if f.ord_infinity() != 0 {
                    candidates.insert(Place::Infinity);
                }
            }
        }
        let mut support = Vec::new();
        for place in candidates {
            let uniformizer = place.poly(self.q);
            let valuations = IntMat::from_fn(self.torus_rank, self.x_rank, |j, i| {
                let f = &self.map[i][j];
                let ord = match &uniformizer {
                    None => f.ord_infinity(),
                    Some(pi) => f.ord_finite(&fq, pi),
                };
                BigInt::from(ord)
            });
            let quotient_rank = valuations.rank();
            if quotient_rank == 0 {
                continue;
            }
            let kernel = valuations.kernel_basis();
            support.push(XDeltaLocal { place, valuations, kernel, quotient_rank });
        }
        XDeltaData { support }
    }

    /// Expected vanishing order at s = 1:
    /// -rank X - dim T + sum_v rank C_v.
    pub fn r_m(&self) -> i64 {
        self.x_delta().total_quotient_rank() as i64 - self.x_rank as i64 - self.torus_rank as i64
    }

    /// (constant X) - sum_v (skyscraper C_v), the virtual sheaf whose
    /// L-function and Euler characteristic are those of the section subsheaf.
    fn section_sheaf(&self, xd: &XDeltaData) -> Result<VirtualSheaf> {
        let mut terms = Vec::new();
        if self.x_rank > 0 {
            let cover = AbelianCover::constant(self.q, 1)?;
            let lattice = GaloisLattice::split(vec![1], self.x_rank);
            terms.push((1i64, SheafAtom::pushforward(cover, lattice)?));
        }
        for loc in &xd.support {
            let module = FrobModule::free(IntMat::identity(loc.quotient_rank))?;
            terms.push((-1i64, SheafAtom::skyscraper(loc.place, module)?));
        }
        Ok(VirtualSheaf::new(terms))
    }
}

/// L(M) = L_{X^Delta}(qt) * zeta(t)^d.
pub fn l_motive(m: &OneMotive, opts: &LOptions) -> Result<RationalFunctionQ> {
    let xd = m.x_delta();
    let l_sections = l_function_opts(&m.section_sheaf(&xd)?, opts)?;
    let shifted = l_sections.subst_scale(&Q::from_integer(BigInt::from(m.q)));
    let zeta = zeta_of_cover(&AbelianCover::constant(m.q, 1)?)?;
    Ok(shifted.mul(&zeta.pow(m.torus_rank as i64)))
}

/// chi_W(S, M^Delta) = chi_W(S, X^Delta)^{-1} * (q-1)^d, the latter factor
/// being the split-torus Euler characteristic.
pub fn chi_w_motive(m: &OneMotive, opts: &LOptions) -> Result<Q> {
    let xd = m.x_delta();
    let sections = chi_w_virtual(&m.section_sheaf(&xd)?, opts)?;
    let split = num::pow::pow(
        Q::from_integer(BigInt::from(m.q as i64 - 1)),
        m.torus_rank,
    );
    Ok(sections.chi_w.recip() * split)
}

/// The two exact sides of the leading-coefficient identity at t = 1/q.
#[derive(Clone, Debug)]
pub struct MotiveReport {
    pub r_m: i64,
    pub lead: LaurentLead,
    pub chi_w: Q,
    /// chi(S, Lie G^0) = d for a split torus target.
    pub lie_chi: i64,
    /// rank X(K) = k; the identity's sign is (-1) to this exponent.
    pub sign_exponent: i64,
    pub lhs: Q,
    pub rhs: Q,
}

/// Checks laurent_lead(L(M), 1 - qt) = (r_M, (-1)^k * chi_W^{-1} * q^d)
/// as an exact rational identity.
pub fn verify_theorem_main(m: &OneMotive, opts: &LOptions) -> Result<MotiveReport> {
    let r_m = m.r_m();
    let l = l_motive(m, opts)?;
    let lead = laurent_lead(&l, LeadBase::OneMinusQT(m.q));
    if lead.order != r_m {
        return Err(Error::OrderMismatch { expected: r_m, found: lead.order });
    }
    let chi_w = chi_w_motive(m, opts)?;
    let sign = if m.x_rank % 2 == 0 { Q::one() } else { -Q::one() };
    let rhs = sign * chi_w.recip() * big_pow_i(m.q, m.torus_rank as i64);
    if lead.value != rhs {
        return Err(Error::VerificationFailed {
            label: "motive leading value at t = 1/q".into(),
            lhs: lead.value,
            rhs,
        });
    }
    Ok(MotiveReport {
        r_m,
        lhs: lead.value.clone(),
        rhs,
        lead,
        chi_w,
        lie_chi: m.torus_rank as i64,
        sign_exponent: m.x_rank as i64,
    })
}
