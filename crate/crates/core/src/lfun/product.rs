//! Exact truncated Euler products.
//!
//! [l_truncated] expands the product of inverse Euler factors over all places
//! of degree at most D, exactly modulo t^(D+1); a factor at a place of degree
//! d starts at 1 + O(t^d), so omitted places cannot affect the result.
//!
//! Pushforward atoms whose Kummer generators act trivially have factors that
//! depend only on deg v; those degrees are counted, never enumerated.  All
//! other atoms bucket the places of each degree by decomposition data and
//! raise one factor per bucket to the bucket count, in canonical key order,
//! so the output is identical for every thread count.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::TruncatedSeries;
use crate::function_field::{
    irreducible_codes, irreducible_count, AbelianCover, Decomposition, Place,
};
use crate::galois::GaloisLattice;

use super::{
    euler_factor, factor_depends_only_on_degree, pushforward_factor, SheafAtom, VirtualSheaf,
};

/// Product over deg v <= depth of euler_factor^(-multiplicity), mod t^(depth+1).
pub fn l_truncated(z: &VirtualSheaf, depth: usize, threads: usize) -> Result<TruncatedSeries> {
    assert!(depth >= 1, "truncation depth must be at least 1");
    let mut acc = TruncatedSeries::one(depth);
    for (mult, atom) in z.terms() {
        match atom {
            SheafAtom::Skyscraper { place, .. } => {
                if place.deg() as usize <= depth {
                    let p = euler_factor(atom, place);
                    acc = acc.mul(&TruncatedSeries::from_poly(&p, depth).powi(-mult));
                }
            }
            SheafAtom::Pushforward { cover, lattice } => {
                acc = acc.mul(&pushforward_product(cover, lattice, *mult, depth, threads)?);
            }
        }
    }
    Ok(acc)
}

fn pushforward_product(
    cover: &AbelianCover,
    lattice: &GaloisLattice,
    mult: i64,
    depth: usize,
    threads: usize,
) -> Result<TruncatedSeries> {
    let q = cover.q();
    let k = cover.factors().len();
    let mut acc = TruncatedSeries::one(depth);
    for d in 1..=depth as u32 {
        if factor_depends_only_on_degree(lattice) {
            // unramified-looking everywhere on this lattice: one factor per degree
            let mut count = irreducible_count(q, d)? as i64;
            if d == 1 {
                count += 1; // the place at infinity
            }
            let mut frobenius = vec![0u32; k + 1];
            frobenius[0] = d % cover.constant_field_degree();
            let dec = Decomposition { inertia_gen: vec![0; k + 1], frobenius };
            mul_factor(&mut acc, lattice, &dec, d, -(mult * count), depth);
        } else {
            let mut buckets: BTreeMap<(Vec<u32>, Vec<u32>), i64> = BTreeMap::new();
            if d == 1 {
                let dec = cover.decomposition_at(&Place::Infinity);
                *buckets.entry((dec.inertia_gen, dec.frobenius)).or_insert(0) += 1;
            }
            let codes = irreducible_codes(q, d, threads)?;
            // workers bucket disjoint code ranges; merging commutes, so the
            // canonical key order of the final map is thread-independent
            let workers = threads.max(1).min(codes.len().max(1));
            let chunk = codes.len().div_ceil(workers);
            let partials: Vec<BTreeMap<(Vec<u32>, Vec<u32>), i64>> = std::thread::scope(|s| {
                codes
                    .chunks(chunk.max(1))
                    .map(|part| {
                        s.spawn(move || {
                            let mut local: BTreeMap<(Vec<u32>, Vec<u32>), i64> = BTreeMap::new();
                            for &code in part {
                                let dec = cover.decomposition_at(&Place::Finite { deg: d, code });
                                *local.entry((dec.inertia_gen, dec.frobenius)).or_insert(0) += 1;
                            }
                            local
                        })
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .map(|h| h.join().expect("decomposition worker panicked"))
                    .collect()
            });
            for local in partials {
                for (key, count) in local {
                    *buckets.entry(key).or_insert(0) += count;
                }
            }
            for ((inertia_gen, frobenius), count) in buckets {
                let dec = Decomposition { inertia_gen, frobenius };
                mul_factor(&mut acc, lattice, &dec, d, -(mult * count), depth);
            }
        }
    }
    Ok(acc)
}

fn mul_factor(
    acc: &mut TruncatedSeries,
    lattice: &GaloisLattice,
    dec: &Decomposition,
    deg: u32,
    exponent: i64,
    depth: usize,
) {
    let p = pushforward_factor(lattice, dec, deg);
    if p.is_one() || exponent == 0 {
        return;
    }
    *acc = acc.mul(&TruncatedSeries::from_poly(&p, depth).powi(exponent));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMat;
    use crate::function_field::{FqPoly, FqRatFn, KummerFactor};
    use crate::galois::FrobModule;

    fn sign_atom(q: u32, f: FqPoly) -> SheafAtom {
        let cover =
            AbelianCover::new(q, 1, vec![KummerFactor { m: 2, f: FqRatFn::from_poly(f) }]).unwrap();
        let lat = GaloisLattice::new(
            vec![1, 2],
            1,
            vec![IntMat::identity(1), IntMat::from_rows(&[vec![-1]])],
        )
        .unwrap();
        SheafAtom::pushforward(cover, lat).unwrap()
    }

    #[test]
    fn zeta_series_of_the_projective_line_over_f2() {
        let cover = AbelianCover::constant(2, 1).unwrap();
        let atom = SheafAtom::pushforward(cover, GaloisLattice::split(vec![1], 1)).unwrap();
        let s = l_truncated(&VirtualSheaf::of(atom), 4, 1).unwrap();
        // 1/((1-t)(1-2t)) = sum (2^{k+1}-1) t^k
        assert_eq!(s, TruncatedSeries::from_int_coeffs(&[1, 3, 7, 15, 31]));
    }

    #[test]
    fn sign_product_is_constant_one() {
        let z = VirtualSheaf::of(sign_atom(3, FqPoly::t()));
        let s = l_truncated(&z, 4, 1).unwrap();
        assert_eq!(s, TruncatedSeries::one(4));
    }

    #[test]
    fn sign_product_of_the_elliptic_branch_locus() {
        // y^2 = t^3 - t over F_3 has L = 1 + 3t^2, already exact at depth 4
        let f = FqPoly::new(vec![0, 2, 0, 1]); // t^3 - t = t^3 + 2t
        let z = VirtualSheaf::of(sign_atom(3, f));
        let s = l_truncated(&z, 4, 1).unwrap();
        assert_eq!(s, TruncatedSeries::from_int_coeffs(&[1, 0, 3, 0, 0]));
    }

    #[test]
    fn empty_virtual_sheaf_gives_one() {
        let s = l_truncated(&VirtualSheaf::empty(), 3, 1).unwrap();
        assert_eq!(s, TruncatedSeries::one(3));
    }

    #[test]
    fn skyscraper_series_inverts_its_factor() {
        let module = FrobModule::free(IntMat::from_rows(&[vec![-1]])).unwrap();
        let w = Place::Finite { deg: 2, code: irreducible_codes(3, 2, 1).unwrap()[0] };
        let z = VirtualSheaf::of(SheafAtom::skyscraper(w, module).unwrap());
        let s = l_truncated(&z, 4, 1).unwrap();
        // 1/(1 + t^2) = 1 - t^2 + t^4 - ...
        assert_eq!(s, TruncatedSeries::from_int_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn negative_multiplicity_inverts_the_series() {
        let cover = AbelianCover::constant(2, 1).unwrap();
        let atom = SheafAtom::pushforward(cover, GaloisLattice::split(vec![1], 1)).unwrap();
        let z = VirtualSheaf::new(vec![(-1, atom)]);
        let s = l_truncated(&z, 4, 1).unwrap();
        // (1-t)(1-2t) = 1 - 3t + 2t^2 exactly
        assert_eq!(s, TruncatedSeries::from_int_coeffs(&[1, -3, 2, 0, 0]));
    }

    #[test]
    fn thread_count_does_not_change_the_series() {
        let f = FqPoly::new(vec![0, 2, 0, 1]);
        let z = VirtualSheaf::of(sign_atom(3, f));
        let a = l_truncated(&z, 6, 1).unwrap();
        let b = l_truncated(&z, 6, 8).unwrap();
        assert_eq!(a, b);
    }
}
