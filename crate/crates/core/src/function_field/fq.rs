//! Finite fields F_q with full operation tables.
//!
//! Elements are indices 0..q.  For q = p^e the index is read base p: index
//! sum c_i p^i represents the residue of sum c_i x^i modulo the lowest
//! lexicographic monic irreducible of degree e over F_p (no Conway-polynomial
//! dependency; the modulus is recorded for reproducibility).  Multiplicative
//! structure is exposed through a fixed generator g0 (the smallest-index
//! generator of F_q^x) and its discrete-log table: power-residue symbols
//! reduce to dlog arithmetic mod m.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct Fq {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u8>, // degree-e monic over F_p (length e+1); [0, 1] for prime q
    add_t: Vec<u8>,
    mul_t: Vec<u8>,
    inv_t: Vec<u8>,
    neg_t: Vec<u8>,
    dlog_t: Vec<u8>,
    g0: u8,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Some((p, e))
    } else {
        None
    }
}

// polynomial arithmetic over F_p on digit vectors, used only to build tables
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u32) -> Vec<u8> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u32 * bj as u32) % p;
        }
    }
    // reduce: x^e = -(modulus - x^e)
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (k, &mk) in modulus.iter().enumerate().take(e) {
            let idx = i - e + k;
            prod[idx] = (prod[idx] + c * (p - mk as u32)) % p;
        }
    }
    prod.truncate(e.max(1));
    prod.iter().map(|&v| v as u8).collect()
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u8> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push((n % p) as u8);
        n /= p;
    }
    d
}

fn undigits(d: &[u8], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c as u32)
}

/// Trial-division irreducibility over F_p for the tiny moduli needed here.
fn irreducible_over_fp(f: &[u8], p: u32) -> bool {
    let deg = f.len() - 1;
    // divisor candidates: monic of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem_fp(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_fp(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    let db = b.len() - 1;
    let mut r: Vec<u32> = a.iter().map(|&c| c as u32).collect();
    while r.len() > db {
        let lead = *r.last().unwrap();
        let k = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + lead * (p - bi as u32)) % p;
            }
        }
        r.pop();
    }
    r.iter().map(|&v| v as u8).collect()
}

impl Fq {
    fn build(q: u32) -> Result<Fq> {
        let (p, e) = prime_power(q).ok_or_else(|| {
            Error::Validation(format!("q = {} is not a prime power >= 2", q))
        })?;
        if q > 256 {
            return Err(Error::Validation(format!(
                "q = {} exceeds the supported table size (q <= 256)",
                q
            )));
        }
        let modulus: Vec<u8> = if e == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(e))
                .map(|code| {
                    let mut f = digits(code, p, e as usize);
                    f.push(1);
                    f
                })
                .find(|f| irreducible_over_fp(f, p))
                .expect("an irreducible of every degree exists")
        };
        let qs = q as usize;
        let mut add_t = vec![0u8; qs * qs];
        let mut mul_t = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, e as usize);
            for b in 0..q {
                let db = digits(b, p, e as usize);
                let sum: Vec<u8> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
                    .collect();
                add_t[(a * q + b) as usize] = undigits(&sum, p) as u8;
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                mul_t[(a * q + b) as usize] = undigits(&prod, p) as u8;
            }
        }
        let mut neg_t = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a, p, e as usize);
            let n: Vec<u8> = da.iter().map(|&x| ((p - x as u32) % p) as u8).collect();
            neg_t[a as usize] = undigits(&n, p) as u8;
        }
        let mut inv_t = vec![0u8; qs];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul_t[(a * q + b) as usize] == 1)
                .expect("field element has an inverse");
            inv_t[a as usize] = b as u8;
        }
        let order = |a: u32| -> u32 {
            let mut x = a;
            let mut k = 1;
            while x != 1 {
                x = mul_t[(x * q + a) as usize] as u32;
                k += 1;
            }
            k
        };
        let g0 = (1..q).find(|&a| order(a) == q - 1).expect("F_q^x is cyclic") as u8;
        let mut dlog_t = vec![0u8; qs];
        let mut x = 1u32;
        for k in 0..q - 1 {
            dlog_t[x as usize] = k as u8;
            x = mul_t[(x * q + g0 as u32) as usize] as u32;
        }
        Ok(Fq {
            q,
            p,
            e,
            modulus,
            add_t,
            mul_t,
            inv_t,
            neg_t,
            dlog_t,
            g0,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ext_degree(&self) -> u32 {
        self.e
    }

    /// The modulus defining F_q over F_p, least-degree-first (for reports).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Smallest-index generator of F_q^x.
    pub fn g0(&self) -> u8 {
        self.g0
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add_t[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg_t[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg_t[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv_t[a as usize]
    }

    /// Discrete log base g0; defined for a != 0.
    #[inline]
    pub fn dlog(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        self.dlog_t[a as usize] as u32
    }

    pub fn pow(&self, a: u8, k: u64) -> u8 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let d = self.dlog(a) as u64;
        let m = (self.q - 1) as u64;
        let e = (d % m * (k % m)) % m;
        let mut x = 1u8;
        for _ in 0..e {
            x = self.mul(x, self.g0);
        }
        x
    }

    /// Integer c mod p embedded into F_q (the prime field).
    pub fn from_int(&self, c: i64) -> u8 {
        let r = c.rem_euclid(self.p as i64) as u32;
        r as u8
    }
}

static FQ_CACHE: OnceLock<Mutex<HashMap<u32, Arc<Fq>>>> = OnceLock::new();

/// Shared field tables; built once per q, process-wide.
pub fn field(q: u32) -> Result<Arc<Fq>> {
    let cache = FQ_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(f) = map.get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(Fq::build(q)?);
    map.insert(q, f.clone());
    Ok(f)
}
