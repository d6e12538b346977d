//! Finitely generated abelian groups carrying an automorphism: the stalk
//! data of a sheaf supported at a single closed point, with its geometric
//! Frobenius.
//!
//! [FrobModule]

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::exact::{AbGroup, AbMap, FgAb, IntMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobModule {
    free_rank: usize,
    /// Invariant factors >= 2 in divisibility order.
    torsion: Vec<BigInt>,
    /// Automorphism on the free_rank + torsion generators.
    frob: IntMat,
}

impl FrobModule {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>, frob: IntMat) -> Result<Self> {
        let n = free_rank + torsion.len();
        if frob.rows() != n || frob.cols() != n {
            return Err(Error::Validation("frobenius shape does not match the presentation".into()));
        }
        for w in torsion.windows(2) {
            if (&w[1] % &w[0]) != BigInt::zero() {
                return Err(Error::Validation("torsion invariants must divide in order".into()));
            }
        }
        if torsion.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::Validation("torsion invariants must be >= 2".into()));
        }
        // relations d_j e_{r+j} must map into the relation span
        for (j, d) in torsion.iter().enumerate() {
            for i in 0..free_rank {
                if !frob.get(i, free_rank + j).is_zero() {
                    return Err(Error::Validation(
                        "frobenius sends torsion into the free part".into(),
                    ));
                }
            }
            for (l, dl) in torsion.iter().enumerate() {
                let image = d * frob.get(free_rank + l, free_rank + j);
                if (&image % dl) != BigInt::zero() {
                    return Err(Error::Validation("frobenius does not respect the torsion orders".into()));
                }
            }
        }
        let m = FrobModule { free_rank, torsion, frob };
        // surjective endomorphisms of finitely generated groups are bijective
        if !m.endomorphism(&m.frob).cokernel().is_trivial() {
            return Err(Error::Validation("frobenius is not an automorphism".into()));
        }
        Ok(m)
    }

    /// Free module with the given automorphism.
    pub fn free(frob: IntMat) -> Result<Self> {
        let n = frob.rows();
        FrobModule::new(n, Vec::new(), frob)
    }

    /// Finite module.
    pub fn finite(torsion: Vec<BigInt>, frob: IntMat) -> Result<Self> {
        FrobModule::new(0, torsion, frob)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn frob(&self) -> &IntMat {
        &self.frob
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn as_fgab(&self) -> FgAb {
        FgAb::with_torsion(self.free_rank, &self.torsion)
    }

    fn endomorphism(&self, mat: &IntMat) -> AbMap {
        AbMap::new(self.as_fgab(), self.as_fgab(), mat.clone())
    }

    /// Induced action on the free quotient M / M_tors.
    pub fn frob_on_free_quotient(&self) -> IntMat {
        IntMat::from_fn(self.free_rank, self.free_rank, |i, j| self.frob.get(i, j).clone())
    }

    /// Smallest k <= cap with F^k = 1 on the free quotient.
    pub fn order_on_free_quotient(&self, cap: u64) -> Option<u64> {
        let f = self.frob_on_free_quotient();
        let mut p = f.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(&f);
        }
        None
    }

    /// Fixed subgroup M^F with its ambient generator basis.
    pub fn fixed(&self) -> (FgAb, IntMat) {
        let delta = self.frob.sub(&IntMat::identity(self.generators()));
        self.endomorphism(&delta).kernel()
    }

    /// Coinvariants M_F presented on the same generators as M.
    pub fn cofixed(&self) -> FgAb {
        let delta = self.frob.sub(&IntMat::identity(self.generators()));
        FgAb { n: self.generators(), rels: delta.hstack(&self.as_fgab().rels) }
    }

    pub fn fixed_group(&self) -> AbGroup {
        self.fixed().0.group()
    }

    pub fn cofixed_group(&self) -> AbGroup {
        self.cofixed().group()
    }
}
