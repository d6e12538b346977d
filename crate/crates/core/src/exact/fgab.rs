//! Finitely generated abelian groups given by presentations, and maps
//! between them.
//!
//! A group is Z^n modulo the column span of a relation matrix; a map is an
//! integer matrix on generators that carries relations into relations.
//! Kernels come with an ambient basis so they can be composed further;
//! cokernels reduce to invariant factors.
//!
//! [FgAb] [AbMap] [column_span_basis]

use num::BigInt;
use num::Zero;

use super::matrix::IntMat;
use super::snf::{smith_normal_form, AbGroup};

/// A basis (independent columns) for the column span of m, from the Smith
/// decomposition m = L^-1 D R^-1: the nonzero d_i scale the columns of L^-1.
pub fn column_span_basis(m: &IntMat) -> IntMat {
    let s = smith_normal_form(m);
    let left_inv = s.left().inverse_unimodular().expect("Smith left factor is unimodular");
    let cols: Vec<usize> = (0..s.diag().len()).filter(|&i| !s.diag()[i].is_zero()).collect();
    let mut out = IntMat::zero(m.rows(), cols.len());
    for (j, &i) in cols.iter().enumerate() {
        for r in 0..m.rows() {
            out.set(r, j, left_inv.get(r, i) * &s.diag()[i]);
        }
    }
    out
}

/// Z^n modulo the column span of rels (an n x k matrix).
#[derive(Clone, Debug)]
pub struct FgAb {
    pub n: usize,
    pub rels: IntMat,
}

impl FgAb {
    pub fn free(n: usize) -> Self {
        FgAb { n, rels: IntMat::zero(n, 0) }
    }

    /// Z^r plus one cyclic factor per listed order.
    pub fn with_torsion(free_rank: usize, orders: &[BigInt]) -> Self {
        let n = free_rank + orders.len();
        let mut rels = IntMat::zero(n, orders.len());
        for (j, d) in orders.iter().enumerate() {
            rels.set(free_rank + j, j, d.clone());
        }
        FgAb { n, rels }
    }

    pub fn group(&self) -> AbGroup {
        AbGroup::cokernel(&self.rels)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.group().order()
    }
}

/// A homomorphism src -> dst: mat is dst.n x src.n and maps src relations
/// into the span of dst relations.
#[derive(Clone, Debug)]
pub struct AbMap {
    pub src: FgAb,
    pub dst: FgAb,
    pub mat: IntMat,
}

impl AbMap {
    pub fn new(src: FgAb, dst: FgAb, mat: IntMat) -> Self {
        assert_eq!(mat.rows(), dst.n);
        assert_eq!(mat.cols(), src.n);
        debug_assert!(
            src.rels.cols() == 0 || {
                let image = mat.mul(&src.rels);
                image.is_zero_matrix() || IntMat::solve(&dst.rels, &image).is_some()
            },
            "map does not respect relations"
        );
        AbMap { src, dst, mat }
    }

    /// The kernel, together with an src-ambient basis for its generators
    /// (src.n x rank, one column per kernel generator).
    pub fn kernel(&self) -> (FgAb, IntMat) {
        // x is in the kernel iff mat*x lies in the span of dst.rels, i.e.
        // (x, y) solves [mat | dst.rels] = 0 for some y.
        let stacked = self.mat.hstack(&self.dst.rels);
        let kb = IntMat::kernel_basis(&stacked);
        let mut proj = IntMat::zero(self.src.n, kb.cols());
        for i in 0..self.src.n {
            for j in 0..kb.cols() {
                proj.set(i, j, kb.get(i, j).clone());
            }
        }
        let basis = column_span_basis(&proj);
        let rels = if self.src.rels.cols() == 0 {
            IntMat::zero(basis.cols(), 0)
        } else {
            IntMat::solve(&basis, &self.src.rels).expect("relations lie inside the kernel lattice")
        };
        (FgAb { n: basis.cols(), rels }, basis)
    }

    pub fn cokernel(&self) -> AbGroup {
        AbGroup::cokernel(&self.mat.hstack(&self.dst.rels))
    }

    /// Cyclic decomposition of the cokernel: (invariant factor, representative
    /// in Z^{dst.n}), omitting trivial factors.  Factor 0 means a free summand.
    pub fn cokernel_generators(&self) -> Vec<(BigInt, Vec<BigInt>)> {
        let stacked = self.mat.hstack(&self.dst.rels);
        let s = smith_normal_form(&stacked);
        let left_inv = s.left().inverse_unimodular().expect("Smith left factor is unimodular");
        let one = BigInt::from(1);
        let mut out = Vec::new();
        for i in 0..self.dst.n {
            let d = s.diag().get(i).cloned().unwrap_or_else(BigInt::zero);
            if d != one {
                out.push((d, left_inv.col(i)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    #[test]
    fn span_basis_of_dependent_columns() {
        use num::Signed;
        let a = m(&[vec![2, 4], vec![0, 0]]);
        let b = column_span_basis(&a);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.get(0, 0).abs(), BigInt::from(2));
        assert!(b.get(1, 0).is_zero());
    }

    #[test]
    fn kernel_of_doubling_on_z_mod_4() {
        // x -> 2x on Z/4 has kernel Z/2 generated by 2
        let g = FgAb::with_torsion(0, &[BigInt::from(4)]);
        let f = AbMap::new(g.clone(), g, m(&[vec![2]]));
        let (ker, basis) = f.kernel();
        assert_eq!(ker.group().to_string(), "Z/2");
        assert_eq!(num::Signed::abs(basis.get(0, 0)), BigInt::from(2));
        assert_eq!(f.cokernel().to_string(), "Z/2");
    }

    #[test]
    fn kernel_and_cokernel_of_free_map() {
        // Z^2 -> Z^2 by diag(1, 3): kernel 0, cokernel Z/3
        let f = AbMap::new(FgAb::free(2), FgAb::free(2), m(&[vec![1, 0], vec![0, 3]]));
        let (ker, _) = f.kernel();
        assert!(ker.group().is_trivial());
        let coker = f.cokernel();
        assert_eq!(coker.to_string(), "Z/3");
        let gens = f.cokernel_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, BigInt::from(3));
    }

    #[test]
    fn cokernel_generators_really_generate() {
        // Z^2 / <(2,0),(0,2)> via the zero map from 0
        let dst = FgAb::with_torsion(0, &[BigInt::from(2), BigInt::from(2)]);
        let f = AbMap::new(FgAb::free(0), dst, IntMat::zero(2, 0));
        let gens = f.cokernel_generators();
        assert_eq!(gens.len(), 2);
        for (d, _) in &gens {
            assert_eq!(d, &BigInt::from(2));
        }
    }

    #[test]
    fn projection_to_quotient_has_full_kernel() {
        // Z -> Z/5, x -> x mod 5: kernel is 5Z, free of rank 1
        let f = AbMap::new(FgAb::free(1), FgAb::with_torsion(0, &[BigInt::from(5)]), m(&[vec![1]]));
        let (ker, basis) = f.kernel();
        assert_eq!(ker.group().to_string(), "Z");
        assert_eq!(num::Signed::abs(basis.get(0, 0)), BigInt::from(5));
    }
}
