//! Places of P^1 over F_q: the infinite place plus monic irreducible
//! polynomials, indexed by radix-q codes.
//!
//! Counting and enumeration are deliberately separate routes.  Counts come
//! from the divisor-sum formula (1/n) sum_{d|n} mu(d) q^{n/d}.  Enumeration
//! is a product sieve over the contiguous code space: every reducible monic
//! of degree n is g*h for some irreducible g with deg g <= n/2, so marking
//! those products leaves exactly the irreducibles.  Marking uses a shared
//! atomic bitset, which is order-independent, so code lists are identical
//! for any thread count.  The two routes are checked against each other in
//! the tests.  Code lists are retained across calls only while they stay
//! small and are rebuilt on demand otherwise.
//!
//! [Place] [irreducible_count] [irreducible_codes] [enumerate_places]

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use super::fq::{field, Fq};
use super::fqpoly::FqPoly;
use crate::error::{Error, Result};

/// Hard ceiling on the sieve bitset: q^deg codes must fit in 2^33 bits (1 GiB).
const MAX_CODES: u64 = 1 << 33;
/// Code lists are cached across calls only below this size.
const LIST_KEEP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// The degree-1 place at infinity (uniformizer 1/t).
    Infinity,
    /// Finite place given by a monic irreducible of the stated degree.
    Finite { deg: u32, code: u64 },
}

impl Place {
    pub fn deg(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite { deg, .. } => *deg,
        }
    }

    /// The monic irreducible uniformizer for a finite place.
    pub fn poly(&self, q: u32) -> Option<FqPoly> {
        match self {
            Place::Infinity => None,
            Place::Finite { deg, code } => Some(FqPoly::decode_monic(q, *deg as usize, *code)),
        }
    }

    pub fn finite(q: u32, pi: &FqPoly) -> Place {
        assert!(pi.is_monic());
        Place::Finite { deg: pi.deg().unwrap() as u32, code: pi.encode_monic(q) }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => write!(f, "infinity"),
            Place::Finite { deg, code } => write!(f, "deg{}#{}", deg, code),
        }
    }
}

#[derive(Default)]
struct SieveState {
    /// counts[n] = number of monic irreducibles of degree n (index 0 unused).
    counts: Vec<Option<u64>>,
    lists: Vec<Option<Arc<Vec<u64>>>>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Mutex<SieveState>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Mutex<SieveState>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn state_for(q: u32) -> Arc<Mutex<SieveState>> {
    cache().lock().unwrap().entry(q).or_default().clone()
}

fn code_count(q: u32, deg: u32) -> Result<u64> {
    let mut n: u64 = 1;
    for _ in 0..deg {
        n = n
            .checked_mul(q as u64)
            .filter(|&x| x <= MAX_CODES)
            .ok_or_else(|| Error::Validation(format!("place degree {} over F_{} exceeds the sieve limit", deg, q)))?;
    }
    Ok(n)
}

/// Multiply g*h into buf (both monic, coefficient-index vectors) and return
/// the radix-q code of the product.
fn mul_code(fq: &Fq, g: &[u8], h: &[u8], buf: &mut [u8]) -> u64 {
    let n = g.len() + h.len() - 2;
    buf[..=n].fill(0);
    for (i, &a) in g.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in h.iter().enumerate() {
            if b != 0 {
                buf[i + j] = fq.add(buf[i + j], fq.mul(a, b));
            }
        }
    }
    let q = fq.q() as u64;
    let mut code = 0u64;
    for i in (0..n).rev() {
        code = code * q + buf[i] as u64;
    }
    code
}

fn decode_into(q: u32, deg: usize, mut code: u64, buf: &mut Vec<u8>) {
    buf.clear();
    for _ in 0..deg {
        buf.push((code % q as u64) as u8);
        code /= q as u64;
    }
    buf.push(1);
}

/// Sieve degree n, given cached lists for every degree <= n/2.
fn sieve(fq: &Fq, state: &SieveState, n: u32, want_list: bool, threads: usize) -> (u64, Option<Vec<u64>>) {
    let q = fq.q();
    let total = code_count(q, n).expect("guard checked by caller");
    let words = ((total + 63) / 64) as usize;
    let marked: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();

    for a in 1..=n / 2 {
        let glist = state.lists[a as usize]
            .as_ref()
            .expect("half-degree lists are always retained");
        let gpolys: Vec<Vec<u8>> = glist
            .iter()
            .map(|&c| FqPoly::decode_monic(q, a as usize, c).coeffs().to_vec())
            .collect();
        let hdeg = (n - a) as usize;
        let hcount = code_count(q, n - a).unwrap();
        let nthreads = threads.max(1).min(hcount as usize).max(1);
        let chunk = (hcount + nthreads as u64 - 1) / nthreads as u64;
        std::thread::scope(|s| {
            for tid in 0..nthreads {
                let lo = chunk * tid as u64;
                let hi = (lo + chunk).min(hcount);
                let gpolys = &gpolys;
                let marked = &marked;
                s.spawn(move || {
                    let mut hbuf = Vec::with_capacity(hdeg + 1);
                    let mut buf = vec![0u8; n as usize + 1];
                    for hcode in lo..hi {
                        decode_into(q, hdeg, hcode, &mut hbuf);
                        for g in gpolys {
                            let code = mul_code(fq, g, &hbuf, &mut buf);
                            marked[(code / 64) as usize].fetch_or(1 << (code % 64), Ordering::Relaxed);
                        }
                    }
                });
            }
        });
    }

    let marked_bits: u64 = marked.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u64).sum();
    let count = total - marked_bits;
    let list = want_list.then(|| {
        let mut out = Vec::with_capacity(count as usize);
        for code in 0..total {
            if marked[(code / 64) as usize].load(Ordering::Relaxed) & (1 << (code % 64)) == 0 {
                out.push(code);
            }
        }
        out
    });
    (count, list)
}

fn ensure(q: u32, deg: u32, want_list: bool, threads: usize) -> Result<(u64, Option<Arc<Vec<u64>>>)> {
    if deg == 0 {
        return Err(Error::Validation("places have degree >= 1".into()));
    }
    code_count(q, deg)?;
    let fq = field(q)?;
    let state = state_for(q);
    let mut st = state.lock().unwrap();
    if st.counts.len() <= deg as usize {
        st.counts.resize(deg as usize + 1, None);
        st.lists.resize(deg as usize + 1, None);
    }
    for m in 1..=deg {
        let need_list = (m <= deg / 2 && st.lists[m as usize].is_none())
            || (m == deg && want_list && st.lists[m as usize].is_none());
        if st.counts[m as usize].is_some() && !need_list {
            continue;
        }
        let keep = code_count(q, m).unwrap() <= LIST_KEEP;
        let (count, list) = sieve(&fq, &st, m, need_list || keep, threads);
        st.counts[m as usize] = Some(count);
        if let Some(l) = list {
            let arc = Arc::new(l);
            if keep || m <= deg / 2 {
                st.lists[m as usize] = Some(arc.clone());
            }
            if m == deg {
                return Ok((count, Some(arc)));
            }
        }
    }
    let count = st.counts[deg as usize].unwrap();
    Ok((count, st.lists[deg as usize].clone()))
}

fn moebius(mut m: u64) -> i64 {
    let mut r = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}

/// Number of monic irreducibles of the given degree over F_q, by the
/// divisor-sum formula (1/n) sum_{d|n} mu(d) q^{n/d}.
pub fn irreducible_count(q: u32, deg: u32) -> Result<u64> {
    // same degree ceiling as enumeration, so every countable degree is
    // also listable
    code_count(q, deg)?;
    let n = deg as u64;
    let mut s = 0i64;
    for d in 1..=n {
        if n % d == 0 {
            s += moebius(d) * (q as u64).pow((n / d) as u32) as i64;
        }
    }
    Ok((s / n as i64) as u64)
}

/// Radix-q codes of all monic irreducibles of the given degree, ascending.
pub fn irreducible_codes(q: u32, deg: u32, threads: usize) -> Result<Arc<Vec<u64>>> {
    let (_, list) = ensure(q, deg, true, threads)?;
    Ok(list.expect("list was requested"))
}

/// All places of degree <= max_deg: infinity first, then finite places by
/// (degree, code).
pub fn enumerate_places(q: u32, max_deg: u32, threads: usize) -> Result<Vec<Place>> {
    let mut out = vec![Place::Infinity];
    for deg in 1..=max_deg {
        for &code in irreducible_codes(q, deg, threads)?.iter() {
            out.push(Place::Finite { deg, code });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_enumeration_matches_the_formula_counts() {
        for q in [2u32, 3, 4, 5] {
            for n in 1..=7u32 {
                assert_eq!(
                    irreducible_codes(q, n, 2).unwrap().len() as u64,
                    irreducible_count(q, n).unwrap(),
                    "q={} n={}",
                    q,
                    n
                );
            }
        }
    }

    #[test]
    fn binary_counts_match_the_frozen_table() {
        let expect = [2u64, 1, 2, 3, 6, 9, 18, 30];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(irreducible_count(2, i as u32 + 1).unwrap(), e);
        }
    }

    #[test]
    fn listed_codes_decode_to_irreducibles() {
        let fq = field(3).unwrap();
        let codes = irreducible_codes(3, 3, 1).unwrap();
        assert_eq!(codes.len(), 8);
        for &c in codes.iter() {
            let p = FqPoly::decode_monic(3, 3, c);
            assert_eq!(p.factor_monic(&fq), vec![(p.clone(), 1)]);
        }
    }

    #[test]
    fn thread_count_does_not_change_the_list() {
        let a = irreducible_codes(2, 6, 1).unwrap();
        let b = irreducible_codes(2, 6, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_starts_at_infinity_and_is_sorted() {
        let places = enumerate_places(2, 3, 2).unwrap();
        assert_eq!(places[0], Place::Infinity);
        // F_2: 2 linear, 1 quadratic, 2 cubic
        assert_eq!(places.len(), 1 + 2 + 1 + 2);
        let finite = &places[1..];
        let mut sorted = finite.to_vec();
        sorted.sort();
        assert_eq!(finite, &sorted[..]);
    }

    #[test]
    fn oversized_degrees_are_rejected() {
        assert!(matches!(irreducible_count(251, 8), Err(Error::Validation(_))));
        assert!(matches!(irreducible_codes(251, 8, 1), Err(Error::Validation(_))));
    }
}
