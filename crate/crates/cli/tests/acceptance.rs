//! Acceptance suite: one test per shipped guarantee, each printing a single
//! PASS/FAIL line (visible under --nocapture) and failing hard when its
//! guarantee breaks.
//!
//! Every identity is checked in exact rational arithmetic, and every value
//! that can be produced two ways is produced two ways here: sieve versus
//! divisor-sum count, L-function lead versus weight-complex chi, zeta
//! reconstruction versus brute-force point counts, class-data route versus
//! lattice-kernel route, and a rerun of the table binary on 1 and 8 threads
//! compared byte for byte.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use num::{BigInt, One, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use weilq_core::exact::{IntMat, PolyQ, Q, RationalFunctionQ};
use weilq_core::function_field::{
    field, irreducible_codes, irreducible_count, AbelianCover, FqPoly, FqRatFn, KummerFactor,
    Place,
};
use weilq_core::galois::{FrobModule, GaloisLattice};
use weilq_core::lfun::{
    check_functional_equation, cover_zeta, l_function_opts, LOptions, SheafAtom, VirtualSheaf,
};
use weilq_core::motives::{verify_theorem_main, OneMotive};
use weilq_core::tori::{
    sha_group, tamagawa_ono, verify_ono, verify_torus_theorem, Torus, SHA_ROUTE,
};
use weilq_core::weil_etale::{verify_theorem_constructible, Grounding};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

/// Runs one criterion, prints its verdict line, and panics on failure so the
/// harness records the test as red.
fn check(n: u32, desc: &str, body: impl FnOnce() -> Result<(), String>) {
    let verdict = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => Ok(()),
        Ok(Err(msg)) => Err(msg),
        Err(payload) => Err(panic_text(payload.as_ref())),
    };
    match verdict {
        Ok(()) => println!("acceptance {:02} PASS - {}", n, desc),
        Err(msg) => {
            println!("acceptance {:02} FAIL - {}: {}", n, desc, msg);
            panic!("acceptance criterion {} failed: {}", n, msg);
        }
    }
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panicked".into())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts() -> LOptions {
    let threads = std::thread::available_parallelism().map(|n| n.get().min(8)).unwrap_or(1);
    LOptions { threads, ..LOptions::default() }
}

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q_rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn q_powi(base: &Q, e: i64) -> Q {
    let mut out = Q::one();
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    if e < 0 {
        out = out.recip();
    }
    out
}

/// Integer coefficients reduced into F_q, least degree first; entries stay in
/// the prime field, so the same slice names the same polynomial in every
/// extension.
fn poly_in(q: u32, coeffs: &[i64]) -> FqPoly {
    let fq = field(q).unwrap();
    FqPoly::new(coeffs.iter().map(|&c| fq.from_int(c)).collect())
}

fn kummer_cover(q: u32, m: u32, f: &[i64]) -> AbelianCover {
    let factors = vec![KummerFactor { m, f: FqRatFn::from_poly(poly_in(q, f)) }];
    AbelianCover::new(q, 1, factors).unwrap()
}

fn constant_sheaf(q: u32) -> SheafAtom {
    SheafAtom::pushforward(AbelianCover::constant(q, 1).unwrap(), GaloisLattice::split(vec![1], 1))
        .unwrap()
}

fn zeta_of_line(q: u32) -> RationalFunctionQ {
    let den = PolyQ::from_ints(&[1, -1]).mul(&PolyQ::from_ints(&[1, -(q as i64)]));
    RationalFunctionQ::new(PolyQ::one(), den)
}

#[test]
fn criterion_01_place_enumeration() {
    check(1, "sieved place counts match the divisor-sum formula", || {
        for q in [2u32, 3, 4, 5] {
            for n in 1..=8u32 {
                let sieved = irreducible_codes(q, n, opts().threads).map_err(err)?.len() as u64;
                let counted = irreducible_count(q, n).map_err(err)?;
                ensure!(
                    sieved == counted,
                    "q = {} deg = {}: sieve found {} monic irreducibles, formula predicts {}",
                    q,
                    n,
                    sieved,
                    counted
                );
            }
        }
        // frozen table for q = 2, degrees 1..8
        for (i, want) in [2u64, 1, 2, 3, 6, 9, 18, 30].iter().enumerate() {
            let got = irreducible_count(2, i as u32 + 1).map_err(err)?;
            ensure!(got == *want, "q = 2 deg = {}: counted {}, table says {}", i + 1, got, want);
        }
        Ok(())
    });
}

#[test]
fn criterion_02_zeta_reconstruction() {
    check(2, "constant sheaf rebuilds 1/((1-t)(1-qt)) from degree-6 data", || {
        let o = LOptions { max_depth: 6, ..opts() };
        for q in [2u32, 3, 4, 5] {
            let l = l_function_opts(&VirtualSheaf::of(constant_sheaf(q)), &o).map_err(err)?;
            ensure!(
                l == zeta_of_line(q),
                "q = {}: reconstructed {:?} instead of 1/((1-t)(1-{}t))",
                q,
                l,
                q
            );
        }
        Ok(())
    });
}

fn random_place(rng: &mut ChaCha8Rng, q: u32) -> Result<Place, String> {
    let deg = rng.gen_range(1..=3u32);
    if deg == 1 && rng.gen_bool(0.5) {
        return Ok(Place::Infinity);
    }
    let codes = irreducible_codes(q, deg, 1).map_err(err)?;
    Ok(Place::Finite { deg, code: codes[rng.gen_range(0..codes.len())] })
}

/// Frobenius modules of rank <= 3 with entries in [-2, 2]; draws that are not
/// automorphisms of finite order come back None and are redrawn.
fn random_module(rng: &mut ChaCha8Rng) -> Option<FrobModule> {
    if rng.gen_bool(0.75) {
        let n = rng.gen_range(1..=3usize);
        let rows: Vec<Vec<i64>> =
            (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2i64)).collect()).collect();
        let module = FrobModule::free(IntMat::from_rows(&rows)).ok()?;
        module.order_on_free_quotient(64)?;
        Some(module)
    } else {
        let d = *[2i64, 3, 4, 9].choose(rng).unwrap();
        let u = *[1i64, -1, 2].choose(rng).unwrap();
        FrobModule::finite(vec![BigInt::from(d)], IntMat::from_rows(&[vec![u]])).ok()
    }
}

#[test]
fn criterion_03_two_route_theorem_suite() {
    check(3, "leading coefficient at t = 1 matches the two-route chi on 200 skyscrapers plus all constant cases", || {
        let o = opts();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut found = 0usize;
        while found < 200 {
            let q = *[2u32, 3, 5].choose(&mut rng).unwrap();
            let place = random_place(&mut rng, q)?;
            let module = match random_module(&mut rng) {
                Some(m) => m,
                None => continue,
            };
            let atom = match SheafAtom::skyscraper(place, module) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let rep = verify_theorem_constructible(&VirtualSheaf::of(atom), &o)
                .map_err(|e| format!("skyscraper case {} (q = {}, v = {}): {}", found, q, place, e))?;
            ensure!(
                rep.lead.order == -rep.r,
                "skyscraper case {}: pole order {} but rank invariant {}",
                found,
                rep.lead.order,
                rep.r
            );
            ensure!(
                rep.terms.iter().all(|(_, g)| *g == Grounding::Independent),
                "skyscraper case {}: chi term was not grounded independently of the lead",
                found
            );
            found += 1;
        }
        // constant sheaves: chi_W = 1/(q - 1) by hand, lead = -chi_W at a
        // simple pole
        for q in [2u32, 3, 4, 5] {
            let rep = verify_theorem_constructible(&VirtualSheaf::of(constant_sheaf(q)), &o)
                .map_err(err)?;
            let hand = q_rat(1, q as i64 - 1);
            ensure!(
                rep.r == 1 && rep.chi_w == hand && rep.lead.value == -hand.clone(),
                "constant sheaf over F_{}: got r = {}, chi = {}, lead value {}",
                q,
                rep.r,
                rep.chi_w,
                rep.lead.value
            );
        }
        // constant-field pushforwards: chi_W = 1/(n (q^n - 1)) by hand
        for q in [2u32, 3, 5] {
            for n in [2u32, 3, 4] {
                let atom = SheafAtom::pushforward(
                    AbelianCover::constant(q, n).map_err(err)?,
                    GaloisLattice::induced(vec![n]),
                )
                .map_err(err)?;
                let rep = verify_theorem_constructible(&VirtualSheaf::of(atom), &o)
                    .map_err(|e| format!("pushforward q = {} n = {}: {}", q, n, e))?;
                let hand = q_rat(1, n as i64 * ((q as i64).pow(n) - 1));
                ensure!(
                    rep.r == 1 && rep.chi_w == hand,
                    "pushforward q = {} n = {}: got r = {}, chi = {}, expected chi = {}",
                    q,
                    n,
                    rep.r,
                    rep.chi_w,
                    hand
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_constant_field_scaling() {
    check(4, "chi of a constant-field pushforward is the base-change chi times n^(-r)", || {
        let o = opts();
        // the base-change side rebuilds zeta over F_{q^n} from degree-5
        // counts, so q^n stays at or below 81 to respect the q^deg
        // enumeration envelope
        for (q, n) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3)] {
            let push = SheafAtom::pushforward(
                AbelianCover::constant(q, n).map_err(err)?,
                GaloisLattice::induced(vec![n]),
            )
            .map_err(err)?;
            let small = verify_theorem_constructible(&VirtualSheaf::of(push), &o).map_err(err)?;
            let big = verify_theorem_constructible(&VirtualSheaf::of(constant_sheaf(q.pow(n))), &o)
                .map_err(err)?;
            ensure!(
                small.r == big.r,
                "q = {} n = {}: rank invariant {} differs from base-change rank {}",
                q,
                n,
                small.r,
                big.r
            );
            let scaled = big.chi_w.clone() * q_powi(&q_int(n as i64), -big.r);
            ensure!(
                small.chi_w == scaled,
                "q = {} n = {}: chi {} differs from scaled base-change chi {}",
                q,
                n,
                small.chi_w,
                scaled
            );
        }
        Ok(())
    });
}

/// #{(a, y) in F_qk^2 : y^2 = f(a)} plus the single point at infinity; valid
/// when deg f is odd so infinity is totally ramified.
fn brute_double_cover_points(qk: u32, f: &[i64]) -> u64 {
    let fq = field(qk).unwrap();
    let poly = poly_in(qk, f);
    let mut total = 1u64;
    for a in 0..qk {
        let fa = poly.eval(&fq, a as u8);
        for y in 0..qk {
            if fq.mul(y as u8, y as u8) == fa {
                total += 1;
            }
        }
    }
    total
}

/// Power sums of the reciprocal roots of num via Newton's identities with
/// e_j = (-1)^j c_j.
fn power_sums(num: &PolyQ, upto: usize) -> Vec<Q> {
    let deg = num.deg().unwrap_or(0);
    let e = |j: usize| -> Q {
        if j > deg {
            return Q::zero();
        }
        let c = num.coeffs()[j].clone();
        if j % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let mut p: Vec<Q> = Vec::new();
    for k in 1..=upto {
        let mut acc = q_int(k as i64) * e(k);
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = e(i) * p[k - 1 - i].clone();
            if i % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        p.push(acc);
    }
    p
}

#[test]
fn criterion_05_superelliptic_zeta() {
    check(5, "zeta of y^2 = t^3 - t over F_3 matches its brute-force point counts", || {
        let o = opts();
        let f = [0i64, -1, 0, 1];
        let z = cover_zeta(&kummer_cover(3, 2, &f), &o).map_err(err)?;
        let want = RationalFunctionQ::new(
            PolyQ::from_ints(&[1, 0, 3]),
            PolyQ::from_ints(&[1, -1]).mul(&PolyQ::from_ints(&[1, -3])),
        );
        ensure!(z.zeta == want, "zeta came out as {:?}", z.zeta);
        ensure!(z.genus == 1, "genus came out as {}", z.genus);
        let p = power_sums(&z.numerator_u, 2);
        for (k, frozen) in [(1u32, 4u64), (2, 16)] {
            let brute = brute_double_cover_points(3u32.pow(k), &f);
            ensure!(brute == frozen, "F_{}: brute count {} != frozen {}", 3u32.pow(k), brute, frozen);
            let predicted = q_int(3i64.pow(k) + 1) - p[k as usize - 1].clone();
            ensure!(
                predicted == q_int(brute as i64),
                "F_{}: numerator predicts {} points, brute force counts {}",
                3u32.pow(k),
                predicted,
                brute
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_06_functional_equation_signs() {
    check(6, "functional equation holds with sign +1 across the cover/lattice matrix", || {
        let o = opts();
        for q in [3u32, 5] {
            let mut covers: Vec<(String, AbelianCover)> = (2..=4u32)
                .map(|n| (format!("constant degree {}", n), AbelianCover::constant(q, n).unwrap()))
                .collect();
            covers.push(("square root of t".into(), kummer_cover(q, 2, &[0, 1])));
            covers.push(("square root of t^3 - t".into(), kummer_cover(q, 2, &[0, -1, 0, 1])));
            for (cname, cover) in covers {
                let orders = cover.orders();
                let lattices = [
                    ("split", GaloisLattice::split(orders.clone(), 1)),
                    ("induced", GaloisLattice::induced(orders.clone())),
                    ("norm-one", GaloisLattice::norm_one(orders.clone())),
                ];
                for (lname, lat) in lattices {
                    let fe = check_functional_equation(&cover, &lat, &o)
                        .map_err(|e| format!("q = {}, {} cover, {} lattice: {}", q, cname, lname, e))?;
                    ensure!(
                        fe.sign == 1,
                        "q = {}, {} cover, {} lattice: sign {}",
                        q,
                        cname,
                        lname,
                        fe.sign
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_torus_leading_value_cross_route() {
    check(7, "torus leading values match the class-data route and closed forms", || {
        let o = opts();
        for q in [2i64, 3, 5] {
            for d in 1..=3usize {
                let t = Torus::split(q as u32, d).map_err(err)?;
                let rep = verify_torus_theorem(&t, None, &o)
                    .map_err(|e| format!("split rank {} over F_{}: {}", d, q, e))?;
                let want = q_powi(&q_rat(q, q - 1), d as i64);
                ensure!(
                    rep.rho_t == want,
                    "split rank {} over F_{}: leading value {} != (q/(q-1))^d = {}",
                    d,
                    q,
                    rep.rho_t,
                    want
                );
                ensure!(rep.sha_route == SHA_ROUTE, "split rank {} over F_{}: wrong route", d, q);
            }
            for n in [2u32, 3, 4] {
                let t = Torus::norm_one_constant(q as u32, n).map_err(err)?;
                let rep = verify_torus_theorem(&t, None, &o)
                    .map_err(|e| format!("norm-one degree {} over F_{}: {}", n, q, e))?;
                let want =
                    q_rat((q - 1) * q.pow(n - 1), n as i64 * (q.pow(n) - 1));
                ensure!(
                    rep.rho_t == want,
                    "norm-one degree {} over F_{}: leading value {} != (q-1)q^(n-1)/(n(q^n-1)) = {}",
                    n,
                    q,
                    rep.rho_t,
                    want
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_tamagawa_numbers() {
    check(8, "both Tamagawa routes give n for norm-one tori and 1 for induced and split", || {
        let o = opts();
        for q in [2u32, 3, 5] {
            for n in [2u32, 3, 4] {
                let t = Torus::norm_one_constant(q, n).map_err(err)?;
                let rep = verify_ono(&t, None, &o)
                    .map_err(|e| format!("norm-one degree {} over F_{}: {}", n, q, e))?;
                ensure!(
                    rep.tau_ono == q_int(n as i64) && rep.tau_modern == q_int(n as i64),
                    "norm-one degree {} over F_{}: tau = ({}, {})",
                    n,
                    q,
                    rep.tau_ono,
                    rep.tau_modern
                );
                let ind = Torus::induced_constant(q, n).map_err(err)?;
                let rep = verify_ono(&ind, None, &o)
                    .map_err(|e| format!("induced degree {} over F_{}: {}", n, q, e))?;
                ensure!(
                    rep.tau_ono == Q::one() && rep.tau_modern == Q::one(),
                    "induced degree {} over F_{}: tau = ({}, {})",
                    n,
                    q,
                    rep.tau_ono,
                    rep.tau_modern
                );
            }
            let gm = Torus::split(q, 1).map_err(err)?;
            let rep = verify_ono(&gm, None, &o).map_err(err)?;
            ensure!(
                rep.tau_ono == Q::one() && rep.tau_modern == Q::one(),
                "G_m over F_{}: tau = ({}, {})",
                q,
                rep.tau_ono,
                rep.tau_modern
            );
        }
        // biquadratic Kummer cover: the Tate-Shafarevich kernel is Z/2 and
        // doubles the naive count
        let fq = field(5).map_err(err)?;
        let factors = vec![
            KummerFactor { m: 2, f: FqRatFn::from_poly(FqPoly::t()) },
            KummerFactor {
                m: 2,
                f: FqRatFn::from_poly(FqPoly::new(vec![fq.from_int(-1), 1])),
            },
        ];
        let cover = AbelianCover::new(5, 1, factors).map_err(err)?;
        let t = Torus::norm_one_of(cover).map_err(err)?;
        let tau = tamagawa_ono(&t);
        ensure!(tau == q_int(2), "biquadratic norm-one torus: tau = {}", tau);
        let sha = sha_group(&t);
        ensure!(
            sha.orders == vec![BigInt::from(2)],
            "biquadratic norm-one torus: Sha has orders {:?}",
            sha.orders
        );
        Ok(())
    });
}

#[test]
fn criterion_09_reference_motives() {
    check(9, "the three reference motives verify with the frozen leads", || {
        let o = opts();
        let entry = |p: FqPoly| FqRatFn::from_poly(p);
        let cases: Vec<(&str, usize, Vec<Vec<FqRatFn>>, i64, Q)> = vec![
            ("[Z -t-> G_m]", 1, vec![vec![entry(FqPoly::t())]], 0, q_rat(-3, 4)),
            ("[Z -c-> G_m]", 1, vec![vec![entry(FqPoly::constant(2))]], -2, q_rat(-3, 4)),
            (
                "[Z^2 -(t, t-1)-> G_m]",
                2,
                vec![vec![entry(FqPoly::t())], vec![entry(FqPoly::new(vec![2, 1]))]],
                0,
                q_rat(3, 8),
            ),
        ];
        for (name, k, map, order, value) in cases {
            let m = OneMotive::new(3, k, 1, map).map_err(err)?;
            let rep = verify_theorem_main(&m, &o).map_err(|e| format!("{}: {}", name, e))?;
            ensure!(
                rep.lead.order == order && rep.lead.value == value,
                "{}: lead ({}, {}) != frozen ({}, {})",
                name,
                rep.lead.order,
                rep.lead.value,
                order,
                value
            );
            // the rank-2 case separates the sign conventions: an exponent of
            // opposite parity would predict the negated value
            if k == 2 {
                ensure!(
                    rep.sign_exponent % 2 == 0 && rep.lhs == rep.rhs && -rep.rhs.clone() != rep.lhs,
                    "{}: sign convention not discriminated (lhs {}, rhs {})",
                    name,
                    rep.lhs,
                    rep.rhs
                );
            }
        }
        Ok(())
    });
}

/// Nonzero constant times a signed product of linear factors, mirroring the
/// maps a rank-(k, d) motive admits with small support.
fn random_map_entry(rng: &mut ChaCha8Rng, q: u32) -> FqRatFn {
    let fq = field(q).unwrap();
    let mut num = FqPoly::constant(rng.gen_range(1..q) as u8);
    let mut den = FqPoly::one();
    for a in 0..q.min(3) {
        let e: i32 = rng.gen_range(-2..=2);
        let linear = FqPoly::new(vec![fq.neg(a as u8), 1]);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                num = num.mul(&fq, &linear);
            } else {
                den = den.mul(&fq, &linear);
            }
        }
    }
    FqRatFn::new(num, den)
}

#[test]
fn criterion_10_random_motive_suite() {
    check(10, "100 random motives have order r_M and satisfy the identity exactly", || {
        let o = opts();
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for trial in 0..100 {
            let q = *[2u32, 3, 5].choose(&mut rng).unwrap();
            let k = rng.gen_range(1..=3usize);
            let d = rng.gen_range(1..=3usize);
            let map: Vec<Vec<FqRatFn>> = (0..k)
                .map(|_| (0..d).map(|_| random_map_entry(&mut rng, q)).collect())
                .collect();
            let m = OneMotive::new(q, k, d, map).map_err(err)?;
            let rep = verify_theorem_main(&m, &o)
                .map_err(|e| format!("trial {} (q = {}, k = {}, d = {}): {}", trial, q, k, d, e))?;
            ensure!(
                rep.lead.order == m.r_m(),
                "trial {} (q = {}, k = {}, d = {}): order {} != r_M = {}",
                trial,
                q,
                k,
                d,
                rep.lead.order,
                m.r_m()
            );
            ensure!(
                rep.lhs == rep.rhs,
                "trial {} (q = {}, k = {}, d = {}): lhs {} != rhs {}",
                trial,
                q,
                k,
                d,
                rep.lhs,
                rep.rhs
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_11_deterministic_tables() {
    check(11, "the Tamagawa table binary emits identical bytes on 1 and 8 threads", || {
        let mut outputs = Vec::new();
        for threads in ["1", "8"] {
            let out = Command::new(env!("CARGO_BIN_EXE_weilq"))
                .args([
                    "ono-table", "--qs", "2,3,5", "--ns", "2,3,4", "--threads", threads,
                    "--format", "json",
                ])
                .output()
                .map_err(err)?;
            ensure!(
                out.status.success(),
                "--threads {} exited with {:?}: {}",
                threads,
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(out.stdout);
        }
        ensure!(
            outputs[0] == outputs[1],
            "outputs differ: {} vs {} bytes",
            outputs[0].len(),
            outputs[1].len()
        );
        Ok(())
    });
}
