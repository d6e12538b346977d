//! Rational reconstruction of L-functions from truncated Euler products,
//! cover zeta functions with Weil checks, and the functional-equation check.
//!
//! [LOptions] [l_function] [l_function_opts] [zeta_of_cover] [cover_zeta]
//! [CoverZeta] [check_functional_equation] [FeReport]
//!
//! Degree bounds: a pushforward atom has at most 2*r_geo denominator degree,
//! where r_geo is the rank of the sublattice fixed by the geometric (Kummer)
//! part of the cover group, and the conductor-degree law then bounds the
//! numerator by f + 2*r_geo - 2*rank.  Certification never trusts the bounds:
//! two reconstructions at different depths must agree, coefficients must be
//! integers, and for a single atom the conductor-degree law must hold.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{big_pow_i, pade_reconstruct, PolyQ, Q, RationalFunctionQ};
use crate::function_field::AbelianCover;
use crate::galois::GaloisLattice;

use super::{
    artin_conductor, chi_lie, euler_factor, geometric_invariant_rank, l_truncated, SheafAtom,
    VirtualSheaf,
};

/// Reconstruction controls: worker threads for place enumeration and the
/// deepening cap (a bound on the truncation depth, hence on sieve work).
#[derive(Clone, Copy, Debug)]
pub struct LOptions {
    pub threads: usize,
    pub max_depth: usize,
}

impl Default for LOptions {
    fn default() -> Self {
        LOptions { threads: 1, max_depth: 24 }
    }
}

pub fn l_function(z: &VirtualSheaf) -> Result<RationalFunctionQ> {
    l_function_opts(z, &LOptions::default())
}

/// Exact L-function of a virtual sheaf.
///
/// Skyscraper atoms multiply in as closed forms.  The pushforward part is
/// reconstructed in one Pade call from the combined truncated product, so
/// multiplicativity of the result is a theorem about the Euler product, not
/// an artifact of assembling the answer factor by factor.
pub fn l_function_opts(z: &VirtualSheaf, opts: &LOptions) -> Result<RationalFunctionQ> {
    let mut closed = RationalFunctionQ::one();
    let mut push: Vec<(i64, &AbelianCover, &GaloisLattice)> = Vec::new();
    for (m, atom) in z.terms() {
        match atom {
            SheafAtom::Skyscraper { place, .. } => {
                let p = euler_factor(atom, place);
                closed = closed.mul(&RationalFunctionQ::new(PolyQ::one(), p).pow(*m));
            }
            SheafAtom::Pushforward { cover, lattice } => push.push((*m, cover, lattice)),
        }
    }
    if push.is_empty() {
        return Ok(closed);
    }

    let mut dnum = 0i64;
    let mut dden = 0i64;
    let mut max_rank = 0usize;
    let mut single_law: Option<i64> = None;
    for (m, cover, lattice) in &push {
        let f = artin_conductor(cover, lattice)?.total as i64;
        let rank = lattice.rank() as i64;
        let r_geo = geometric_invariant_rank(cover, lattice) as i64;
        let n_i = (f + 2 * r_geo - 2 * rank).max(0);
        let d_i = 2 * r_geo;
        if *m >= 0 {
            dnum += m * n_i;
            dden += m * d_i;
        } else {
            // a negated atom swaps numerator and denominator contributions
            dnum += -m * d_i;
            dden += -m * n_i;
        }
        max_rank = max_rank.max(lattice.rank());
        if push.len() == 1 && *m == 1 {
            single_law = Some(f - 2 * rank);
        }
    }
    let bounds = (dnum as usize, dden as usize);

    let push_sheaf = VirtualSheaf::new(
        push.iter()
            .map(|(m, c, l)| {
                (*m, SheafAtom::Pushforward { cover: (*c).clone(), lattice: (*l).clone() })
            })
            .collect(),
    );

    let mut depth = (bounds.0 + bounds.1).max(1);
    let cap = opts.max_depth.max(depth);
    loop {
        let confirm = depth + max_rank + 2;
        if let Some(r) = reconstruct_pair(&push_sheaf, bounds, depth, confirm, opts.threads)? {
            if certified(&r, single_law) {
                return Ok(closed.mul(&r));
            }
        }
        depth *= 2;
        if depth > cap {
            return Err(Error::ReconstructionUnstable(format!(
                "no certified reconstruction with bounds ({}, {}) up to depth {}",
                bounds.0, bounds.1, cap
            )));
        }
    }
}

/// Reconstruct at two depths; None on any failure or disagreement.
fn reconstruct_pair(
    z: &VirtualSheaf,
    bounds: (usize, usize),
    depth: usize,
    confirm: usize,
    threads: usize,
) -> Result<Option<RationalFunctionQ>> {
    let s0 = l_truncated(z, depth, threads)?;
    let r0 = match pade_reconstruct(&s0, bounds.0, bounds.1) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    let s1 = l_truncated(z, confirm, threads)?;
    let r1 = match pade_reconstruct(&s1, bounds.0, bounds.1) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    Ok(if r0 == r1 { Some(r0) } else { None })
}

fn certified(r: &RationalFunctionQ, single_law: Option<i64>) -> bool {
    if !r.num().is_integral() || !r.den().is_integral() {
        return false;
    }
    if r.num().coeff(0) != Q::one() || r.den().coeff(0) != Q::one() {
        return false;
    }
    if let Some(gap) = single_law {
        let (dn, dd) = r.degrees();
        let dn = match dn {
            Some(d) => d as i64,
            None => return false,
        };
        if dn - dd as i64 != gap {
            return false;
        }
    }
    true
}

/// Zeta function of the cover curve as an F_q-scheme, with its Weil data.
#[derive(Clone, Debug)]
pub struct CoverZeta {
    pub zeta: RationalFunctionQ,
    /// Genus of the cover over its own constant field.
    pub genus: u64,
    pub constant_degree: u32,
    /// Weil numerator as a polynomial in u = t^(constant_degree).
    pub numerator_u: PolyQ,
}

pub fn zeta_of_cover(cover: &AbelianCover) -> Result<RationalFunctionQ> {
    cover_zeta(cover, &LOptions::default()).map(|z| z.zeta)
}

/// zeta of the cover = L of the pushed-forward regular representation.
/// Checks: denominator (1-u)(1-q'u) with u = t^(n0) and q' = q^(n0);
/// numerator P(u) with P(0)=1, deg P = 2g', P(1) > 0, the reciprocal-root
/// relation P^(u) = q'^(g') P(u), and the discriminant sign when deg P = 2.
pub fn cover_zeta(cover: &AbelianCover, opts: &LOptions) -> Result<CoverZeta> {
    let lattice = GaloisLattice::induced(cover.orders());
    let atom = SheafAtom::pushforward(cover.clone(), lattice)?;
    let zeta = l_function_opts(&VirtualSheaf::of(atom), opts)?;

    let n0 = cover.constant_field_degree() as usize;
    let genus = cover.genus();
    let qp = big_pow_i(cover.q(), n0 as i64);
    let den_u = PolyQ::new(vec![Q::one(), -(&qp + Q::one()), qp.clone()]);
    if zeta.den() != &den_u.subst_pow(n0) {
        return Err(Error::Validation(format!(
            "cover zeta denominator {} is not (1-u)(1-q'u) in u = t^{}",
            zeta.den(),
            n0
        )));
    }
    let p = zeta
        .num()
        .compress_pow(n0)
        .ok_or_else(|| Error::Validation("cover zeta numerator off the u-grid".into()))?;
    let ok_degree = p.deg().unwrap_or(0) == 2 * genus as usize;
    let ok_start = p.coeff(0).is_one();
    let ok_class_number = p.eval(&Q::one()) > Q::zero();
    let ok_reciprocal = p.rev_scaled(&qp) == p.scale(&big_pow_i(cover.q(), (n0 as u64 * genus) as i64));
    let ok_weil = if p.deg() == Some(2) {
        let a = p.coeff(1);
        &a * &a <= Q::from_integer(4.into()) * &qp
    } else {
        true
    };
    if !(ok_degree && ok_start && ok_class_number && ok_reciprocal && ok_weil) {
        return Err(Error::Validation(format!(
            "cover zeta numerator {} fails Weil checks (degree {}, genus {})",
            p,
            p.deg().unwrap_or(0),
            genus
        )));
    }
    Ok(CoverZeta { zeta, genus, constant_degree: n0 as u32, numerator_u: p })
}

/// Outcome of the functional-equation check: the sign is always +1 here and
/// chi is the Lie-algebra Euler characteristic that balances the degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeReport {
    pub sign: i64,
    pub chi: i64,
}

/// Verifies L_{Y'}(1/(qt)) = (q t^2)^chi * L_Y(t) as an exact identity of
/// rational functions, where Y' is the dual lattice and chi = rank - f/2.
pub fn check_functional_equation(
    cover: &AbelianCover,
    lattice: &GaloisLattice,
    opts: &LOptions,
) -> Result<FeReport> {
    let chi = chi_lie(cover, lattice)?;
    let ly = l_function_opts(
        &VirtualSheaf::of(SheafAtom::pushforward(cover.clone(), lattice.clone())?),
        opts,
    )?;
    let lyd = l_function_opts(
        &VirtualSheaf::of(SheafAtom::pushforward(cover.clone(), lattice.dual())?),
        opts,
    )?;

    // p(1/(qt)) = (qt)^(-deg p) * rev_scaled(p), so the substituted function
    // is a ratio of reversals times a signed power of qt
    let q = big_pow_i(cover.q(), 1);
    let mut num = lyd.num().rev_scaled(&q);
    let mut den = lyd.den().rev_scaled(&q);
    let shift = lyd.den().deg().unwrap_or(0) as i64 - lyd.num().deg().unwrap_or(0) as i64;
    if shift >= 0 {
        num = num.mul(&qt_power(&q, shift as usize));
    } else {
        den = den.mul(&qt_power(&q, (-shift) as usize));
    }
    let lhs = RationalFunctionQ::new(num, den);

    let ratio = lhs.mul(&ly.inv());
    if ratio != qt2_power(&q, chi) {
        return Err(Error::FunctionalEquationViolated { chi });
    }
    Ok(FeReport { sign: 1, chi })
}

/// (q t)^k as a polynomial.
fn qt_power(q: &Q, k: usize) -> PolyQ {
    let mut c = vec![Q::zero(); k + 1];
    c[k] = num::pow::pow(q.clone(), k);
    PolyQ::new(c)
}

/// (q t^2)^k as a rational function, k of either sign.
fn qt2_power(q: &Q, k: i64) -> RationalFunctionQ {
    let mut c = vec![Q::zero(); 2 * k.unsigned_abs() as usize + 1];
    let last = c.len() - 1;
    c[last] = num::pow::pow(q.clone(), k.unsigned_abs() as usize);
    let p = PolyQ::new(c);
    if k >= 0 {
        RationalFunctionQ::from_poly(p)
    } else {
        RationalFunctionQ::new(PolyQ::one(), p)
    }
}
