//! L-functions of Z-constructible sheaves on P^1 over F_q as exact rational
//! functions in t = q^(-s).
//!
//! [SheafAtom] [VirtualSheaf] [ConductorData] [euler_factor] [l_truncated]
//! [l_function] [zeta_of_cover] [artin_conductor] [chi_lie]
//! [check_functional_equation]
//!
//! An atom is either the pushforward of a Galois lattice along an abelian
//! cover, or a skyscraper Frobenius module supported at a single place; a
//! virtual sheaf is a formal Z-combination of atoms.  The truncated Euler
//! product is exact modulo t^(D+1); the full rational function is recovered by
//! Pade reconstruction at two depths and certified by agreement, coefficient
//! integrality, and the conductor-degree law.  Everything stays over the base
//! field F_q; rescaling to a constant-field extension happens elsewhere.

mod product;
mod reconstruct;

pub use product::l_truncated;
pub use reconstruct::{
    check_functional_equation, cover_zeta, l_function, l_function_opts, zeta_of_cover, CoverZeta,
    FeReport, LOptions,
};

use crate::error::{Error, Result};
use crate::exact::PolyQ;
use crate::function_field::{AbelianCover, Decomposition, Place};
use crate::galois::{invariants, FrobModule, GaloisLattice};

/// Upper bound on the order of any finite-order automorphism we accept on a
/// skyscraper's free quotient (far above the true bound for small ranks).
const FROBENIUS_ORDER_CAP: u64 = 10_000;

/// One generator of the verification class: a lattice pushed forward from a
/// cover, or a single-place skyscraper.
#[derive(Clone, Debug, PartialEq)]
pub enum SheafAtom {
    Pushforward { cover: AbelianCover, lattice: GaloisLattice },
    Skyscraper { place: Place, module: FrobModule },
}

impl SheafAtom {
    pub fn pushforward(cover: AbelianCover, lattice: GaloisLattice) -> Result<SheafAtom> {
        if lattice.orders() != cover.orders().as_slice() {
            return Err(Error::Validation(format!(
                "lattice group {:?} does not match cover group {:?}",
                lattice.orders(),
                cover.orders()
            )));
        }
        Ok(SheafAtom::Pushforward { cover, lattice })
    }

    /// The module's Frobenius must have finite order on the free quotient,
    /// otherwise the factor's reciprocal roots are not roots of unity and the
    /// weight bookkeeping downstream breaks.
    pub fn skyscraper(place: Place, module: FrobModule) -> Result<SheafAtom> {
        if module.free_rank() > 0 && module.order_on_free_quotient(FROBENIUS_ORDER_CAP).is_none() {
            return Err(Error::Validation(
                "skyscraper Frobenius has infinite order on the free quotient".into(),
            ));
        }
        Ok(SheafAtom::Skyscraper { place, module })
    }

    /// Rank of the generic stalk over Q.
    pub fn rank(&self) -> usize {
        match self {
            SheafAtom::Pushforward { lattice, .. } => lattice.rank(),
            SheafAtom::Skyscraper { module, .. } => module.free_rank(),
        }
    }
}

/// Formal Z-linear combination of atoms; every identity we verify is
/// multiplicative in short exact sequences, so this Grothendieck-group
/// representation is lossless for our purposes.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualSheaf {
    terms: Vec<(i64, SheafAtom)>,
}

impl VirtualSheaf {
    /// Merges duplicate atoms and drops zero multiplicities.
    pub fn new(terms: Vec<(i64, SheafAtom)>) -> VirtualSheaf {
        let mut merged: Vec<(i64, SheafAtom)> = Vec::new();
        for (m, atom) in terms {
            if let Some(slot) = merged.iter_mut().find(|(_, a)| *a == atom) {
                slot.0 += m;
            } else {
                merged.push((m, atom));
            }
        }
        merged.retain(|(m, _)| *m != 0);
        VirtualSheaf { terms: merged }
    }

    pub fn of(atom: SheafAtom) -> VirtualSheaf {
        VirtualSheaf { terms: vec![(1, atom)] }
    }

    pub fn empty() -> VirtualSheaf {
        VirtualSheaf { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(i64, SheafAtom)] {
        &self.terms
    }

    pub fn concat(&self, other: &VirtualSheaf) -> VirtualSheaf {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        VirtualSheaf::new(terms)
    }
}

/// Local Artin conductor exponents at the ramified places, and their
/// degree-weighted total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorData {
    pub local: Vec<(Place, u32)>,
    pub total: u64,
}

/// det(1 - Frob_v * u | stalk ⊗ Q) with u = t^(deg v), geometric Frobenius.
///
/// For a pushforward the stalk at v is the inertia-invariant sublattice; the
/// stored decomposition data is the arithmetic Frobenius, so its restriction
/// gets inverted here.  A skyscraper contributes only at its own place, where
/// the stored Frobenius is already the geometric one.
pub fn euler_factor(atom: &SheafAtom, v: &Place) -> PolyQ {
    match atom {
        SheafAtom::Pushforward { cover, lattice } => {
            let dec = cover.decomposition_at(v);
            pushforward_factor(lattice, &dec, v.deg())
        }
        SheafAtom::Skyscraper { place, module } => {
            if place != v || module.free_rank() == 0 {
                return PolyQ::one();
            }
            let f = module.frob_on_free_quotient();
            f.reversed_charpoly().subst_pow(place.deg() as usize)
        }
    }
}

/// Factor for a pushforward atom computed directly from decomposition data.
/// Shared with the truncated product, which buckets places by this data.
pub(crate) fn pushforward_factor(lattice: &GaloisLattice, dec: &Decomposition, deg: u32) -> PolyQ {
    let basis = if dec.inertia_gen.iter().all(|&e| e == 0) {
        crate::exact::IntMat::identity(lattice.rank())
    } else {
        invariants(lattice, &[dec.inertia_gen.clone()])
    };
    if basis.cols() == 0 {
        return PolyQ::one();
    }
    let arith = lattice.act(&dec.frobenius).mul(&basis);
    // the basis is saturated, so the restriction is integral and unimodular
    let restricted = basis.solve(&arith).expect("Frobenius preserves inertia invariants");
    let geometric = restricted.inverse_unimodular().expect("finite-order restriction");
    geometric.reversed_charpoly().subst_pow(deg as usize)
}

/// Tame conductor: the exponent at a ramified place is the rank drop of the
/// inertia invariants, and wild terms vanish because covers are tame by
/// construction.
pub fn artin_conductor(cover: &AbelianCover, lattice: &GaloisLattice) -> Result<ConductorData> {
    if lattice.orders() != cover.orders().as_slice() {
        return Err(Error::Validation(
            "conductor requires the lattice group to match the cover group".into(),
        ));
    }
    let mut local = Vec::new();
    let mut total = 0u64;
    for v in cover.ramified_places() {
        let dec = cover.decomposition_at(v);
        let inv = invariants(lattice, &[dec.inertia_gen]);
        let drop = (lattice.rank() - inv.cols()) as u32;
        local.push((v.clone(), drop));
        total += v.deg() as u64 * drop as u64;
    }
    Ok(ConductorData { local, total })
}

/// Euler characteristic of the Lie algebra of the Neron model's identity
/// component: chi = d - f/2 on a genus-zero base, d = rank of the character
/// lattice.  An odd conductor signals an upstream bug.
pub fn chi_lie(cover: &AbelianCover, lattice: &GaloisLattice) -> Result<i64> {
    let f = artin_conductor(cover, lattice)?.total;
    if f % 2 != 0 {
        return Err(Error::OddConductor(f as i64));
    }
    Ok(lattice.rank() as i64 - (f / 2) as i64)
}

/// Rank of the sublattice fixed by the full Kummer (geometric) part of the
/// cover group; this counts the zeta-type pole pairs of the L-function.
pub(crate) fn geometric_invariant_rank(cover: &AbelianCover, lattice: &GaloisLattice) -> usize {
    let k = cover.factors().len();
    let gens: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut g = vec![0u32; k + 1];
            g[i + 1] = 1;
            g
        })
        .collect();
    invariants(lattice, &gens).cols()
}

/// True when every Kummer generator acts trivially, so the Euler factor at v
/// depends only on deg v and places can be counted instead of enumerated.
pub(crate) fn factor_depends_only_on_degree(lattice: &GaloisLattice) -> bool {
    lattice.generators().iter().skip(1).all(|m| m.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::{FqPoly, FqRatFn, KummerFactor};
    use crate::galois::frob::FrobModule;
    use crate::exact::IntMat;

    fn sign_cover_t(q: u32) -> AbelianCover {
        let f = FqRatFn::from_poly(FqPoly::t());
        AbelianCover::new(q, 1, vec![KummerFactor { m: 2, f }]).unwrap()
    }

    fn sign_lattice() -> GaloisLattice {
        GaloisLattice::new(vec![1, 2], 1, vec![IntMat::identity(1), IntMat::from_rows(&[vec![-1]])])
            .unwrap()
    }

    fn one_minus_t_pow(d: usize) -> PolyQ {
        let mut c = vec![0i64; d + 1];
        c[0] = 1;
        c[d] = -1;
        PolyQ::from_ints(&c)
    }

    #[test]
    fn trivial_lattice_factor_is_one_minus_t_to_the_degree() {
        let cover = AbelianCover::constant(3, 1).unwrap();
        let atom = SheafAtom::pushforward(cover, GaloisLattice::split(vec![1], 1)).unwrap();
        for v in crate::function_field::enumerate_places(3, 3, 1).unwrap() {
            assert_eq!(euler_factor(&atom, &v), one_minus_t_pow(v.deg() as usize));
        }
    }

    #[test]
    fn sign_lattice_factors_over_f3() {
        let atom = SheafAtom::pushforward(sign_cover_t(3), sign_lattice()).unwrap();
        let t = 3u32;
        let vt = Place::finite(t, &FqPoly::t());
        let vm1 = Place::finite(t, &FqPoly::new(vec![2, 1])); // t - 1 = t + 2
        let vp1 = Place::finite(t, &FqPoly::new(vec![1, 1])); // t + 1
        assert_eq!(euler_factor(&atom, &vt), PolyQ::one());
        assert_eq!(euler_factor(&atom, &vm1), PolyQ::from_ints(&[1, -1]));
        assert_eq!(euler_factor(&atom, &vp1), PolyQ::from_ints(&[1, 1]));
        assert_eq!(euler_factor(&atom, &Place::Infinity), PolyQ::one());
    }

    #[test]
    fn skyscraper_factor_only_at_its_place() {
        let module = FrobModule::free(IntMat::from_rows(&[vec![-1]])).unwrap();
        let w = Place::Finite { deg: 2, code: crate::function_field::irreducible_codes(3, 2, 1).unwrap()[0] };
        let atom = SheafAtom::skyscraper(w.clone(), module).unwrap();
        assert_eq!(euler_factor(&atom, &w), PolyQ::from_ints(&[1, 0, 1]));
        assert_eq!(euler_factor(&atom, &Place::Infinity), PolyQ::one());
    }

    #[test]
    fn skyscraper_rejects_infinite_order_frobenius() {
        let module = FrobModule::free(IntMat::from_rows(&[vec![2, 1], vec![1, 1]])).unwrap();
        let err = SheafAtom::skyscraper(Place::Infinity, module).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn sign_lattice_conductor_is_two() {
        let cover = sign_cover_t(3);
        let data = artin_conductor(&cover, &sign_lattice()).unwrap();
        assert_eq!(data.total, 2);
        assert_eq!(data.local.len(), 2);
        for (v, e) in &data.local {
            assert_eq!(*e, 1, "exponent 1 expected at {v}");
        }
        assert_eq!(chi_lie(&cover, &sign_lattice()).unwrap(), 1 - 1);
    }

    #[test]
    fn constant_cover_conductor_vanishes() {
        let cover = AbelianCover::constant(3, 4).unwrap();
        let lat = GaloisLattice::induced(vec![4]);
        let data = artin_conductor(&cover, &lat).unwrap();
        assert_eq!(data.total, 0);
        assert!(data.local.is_empty());
        assert_eq!(chi_lie(&cover, &lat).unwrap(), 4);
    }

    #[test]
    fn biquadratic_involution_has_conductor_exponent_two() {
        // norm-one lattice of the Klein cover: each ramified involution drops
        // the invariant rank from 3 to 1
        let f1 = FqRatFn::from_poly(FqPoly::t());
        let f2 = FqRatFn::from_poly(FqPoly::new(vec![4, 1])); // t - 1 over F_5
        let cover = AbelianCover::new(
            5,
            1,
            vec![KummerFactor { m: 2, f: f1 }, KummerFactor { m: 2, f: f2 }],
        )
        .unwrap();
        let lat = GaloisLattice::norm_one(vec![1, 2, 2]);
        let data = artin_conductor(&cover, &lat).unwrap();
        assert_eq!(data.total, 6);
        for (_, e) in &data.local {
            assert_eq!(*e, 2);
        }
        assert_eq!(chi_lie(&cover, &lat).unwrap(), 0);
    }

    #[test]
    fn virtual_sheaf_merges_duplicates() {
        let cover = AbelianCover::constant(2, 1).unwrap();
        let atom = SheafAtom::pushforward(cover, GaloisLattice::split(vec![1], 1)).unwrap();
        let z = VirtualSheaf::new(vec![(2, atom.clone()), (-1, atom.clone()), (-1, atom)]);
        assert!(z.terms().is_empty());
    }

    #[test]
    fn pushforward_requires_matching_group() {
        let cover = AbelianCover::constant(3, 2).unwrap();
        let lat = GaloisLattice::split(vec![3], 1);
        assert!(matches!(SheafAtom::pushforward(cover, lat), Err(Error::Validation(_))));
    }
}
