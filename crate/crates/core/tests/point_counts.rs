//! Zeta functions of superelliptic covers against brute-force point counts.
//!
//! The oracle never touches the L-function machinery: it counts solutions of
//! y^m = f(t) over F_{q^k} directly with field arithmetic and compares the
//! totals with the point counts the reconstructed zeta function predicts
//! through Newton's identities on its Weil numerator.

use num::integer::gcd;
use num::{BigInt, One};

use weilq_core::exact::{PolyQ, Q};
use weilq_core::function_field::{field, AbelianCover, FqPoly, FqRatFn, KummerFactor};
use weilq_core::lfun::{cover_zeta, LOptions};

/// Build f from integer coefficients inside F_{q^k}; entries live in the
/// prime field, so reduction mod p lands on the same curve in any extension.
fn poly_in(qk: u32, coeffs: &[i64]) -> FqPoly {
    let fq = field(qk).unwrap();
    FqPoly::new(coeffs.iter().map(|&c| fq.from_int(c)).collect())
}

/// #{(a, y) in F_{qk}^2 : y^m = f(a)} plus the single point at infinity.
///
/// Requires gcd(m, deg f) = 1 so infinity is totally ramified: exactly one
/// rational point sits above it in every extension.
fn count_points(qk: u32, m: u32, coeffs: &[i64]) -> u64 {
    let fq = field(qk).unwrap();
    let f = poly_in(qk, coeffs);
    assert_eq!(gcd(m as u64, f.deg().unwrap() as u64), 1);
    let me = gcd(m as u64, (qk - 1) as u64);
    let mut affine = 0u64;
    for a in 0..qk as u8 {
        let c = f.eval(&fq, a);
        if c == 0 {
            affine += 1;
        } else if fq.dlog(c) as u64 % me == 0 {
            affine += me;
        }
    }
    affine + 1
}

/// Power sums p_k of the reciprocal roots of P(u) = prod (1 - alpha_i u),
/// via Newton's identities on the elementary symmetric functions.
fn power_sums(p: &PolyQ, upto: usize) -> Vec<Q> {
    let deg = p.deg().unwrap_or(0);
    let e = |j: usize| -> Q {
        if j > deg {
            Q::from_integer(0.into())
        } else {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            p.coeffs()[j].clone() * Q::from_integer(sign.into())
        }
    };
    let mut sums: Vec<Q> = Vec::new();
    for k in 1..=upto {
        let mut pk = Q::from_integer(0.into());
        for j in 1..k {
            let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
            pk += e(j) * &sums[k - j - 1] * Q::from_integer(sign.into());
        }
        let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
        pk += e(k) * Q::from_integer((sign * k as i64).into());
        sums.push(pk);
    }
    sums
}

fn kummer_cover(q: u32, m: u32, coeffs: &[i64]) -> AbelianCover {
    let f = FqRatFn::from_poly(poly_in(q, coeffs));
    AbelianCover::new(q, 1, vec![KummerFactor { m, f }]).unwrap()
}

/// Predicted #X(F_{q^k}) = q^k + 1 - p_k, checked against the brute force.
fn check_cover(q: u32, m: u32, coeffs: &[i64], extensions: u32) {
    let opts = LOptions { threads: 8, ..LOptions::default() };
    let z = cover_zeta(&kummer_cover(q, m, coeffs), &opts).unwrap();
    assert_eq!(z.constant_degree, 1, "cover must be geometrically connected");
    let sums = power_sums(&z.numerator_u, extensions as usize);
    for k in 1..=extensions {
        let qk = q.pow(k);
        let expected = Q::from_integer(BigInt::from(qk as u64 + 1)) - &sums[k as usize - 1];
        let counted = Q::from_integer(BigInt::from(count_points(qk, m, coeffs)));
        assert_eq!(
            expected, counted,
            "q={} m={} f={:?} over F_{}: zeta predicts {}, brute force finds {}",
            q, m, coeffs, qk, expected, counted
        );
    }
}

#[test]
fn newton_power_sums_on_a_known_quadratic() {
    // P = (1 - 2u)(1 - 3u) = 1 - 5u + 6u^2: p_1 = 5, p_2 = 13, p_3 = 35.
    let p = PolyQ::from_ints(&[1, -5, 6]);
    let sums = power_sums(&p, 3);
    let want: Vec<Q> = [5, 13, 35].iter().map(|&n| Q::from_integer(n.into())).collect();
    assert_eq!(sums, want);
}

#[test]
fn supersingular_elliptic_curve_over_f3() {
    // y^2 = t^3 - t: numerator 1 + 3u^2, so 4, 16, 28 points over
    // F_3, F_9, F_27.
    let z = cover_zeta(&kummer_cover(3, 2, &[0, -1, 0, 1]), &LOptions::default()).unwrap();
    assert_eq!(z.numerator_u, PolyQ::from_ints(&[1, 0, 3]));
    assert_eq!(count_points(3, 2, &[0, -1, 0, 1]), 4);
    assert_eq!(count_points(9, 2, &[0, -1, 0, 1]), 16);
    check_cover(3, 2, &[0, -1, 0, 1], 3);
}

#[test]
fn elliptic_double_covers_match_their_counts() {
    check_cover(5, 2, &[0, -1, 0, 1], 2);
    check_cover(5, 2, &[1, 1, 0, 1], 2);
    check_cover(7, 2, &[1, 1, 0, 1], 2);
}

#[test]
fn genus_two_double_cover_matches_its_counts() {
    // y^2 = t^5 - t over F_5: genus 2, numerator of degree 4.
    let z = cover_zeta(&kummer_cover(5, 2, &[0, -1, 0, 0, 0, 1]), &LOptions::default()).unwrap();
    assert_eq!(z.genus, 2);
    check_cover(5, 2, &[0, -1, 0, 0, 0, 1], 2);
}

#[test]
fn cubic_kummer_cover_over_f4() {
    // y^3 = t^2 + t over F_4 (3 | q - 1): three tame branch points, genus 1.
    let z = cover_zeta(&kummer_cover(4, 3, &[0, 1, 1]), &LOptions::default()).unwrap();
    assert_eq!(z.genus, 1);
    check_cover(4, 3, &[0, 1, 1], 2);
}

#[test]
fn quartic_kummer_cover_over_f5() {
    // y^4 = t over F_5 (4 | q - 1): a rational curve, but the brute-force
    // side still sums quartic-residue fibre sizes place by place.
    check_cover(5, 4, &[0, 1], 2);
}

#[test]
fn class_numbers_are_positive_integers() {
    // P(1) is the divisor class number of the cover; the Weil bounds force
    // it positive, and for these covers it is a plain integer.
    for (q, m, coeffs) in [(3u32, 2u32, vec![0i64, -1, 0, 1]), (5, 2, vec![0, -1, 0, 0, 0, 1])] {
        let z = cover_zeta(&kummer_cover(q, m, &coeffs), &LOptions::default()).unwrap();
        let h = z.numerator_u.eval(&Q::one());
        assert!(h > Q::from_integer(0.into()));
        assert!(h.is_integer());
    }
}
