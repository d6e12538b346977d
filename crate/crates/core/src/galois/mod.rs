//! Lattices with an action of a finite abelian group, given as one
//! unimodular integer matrix per generator.
//!
//! The group is always a product of cyclics ordered as in
//! [`crate::function_field::AbelianCover::orders`]: constant-field generator
//! first, then one generator per Kummer factor.  Elements are exponent
//! tuples reduced mod the orders.
//!
//! [GaloisLattice] [invariants] [coinvariants] [group_elements]

pub mod cohomology;
pub mod frob;

pub use cohomology::{cocycle_value, group_h1, restriction_is_trivial, sha_kernel, tate_cohomology_cyclic, FiniteGroupData, TateData};
pub use frob::FrobModule;

use crate::error::{Error, Result};
use crate::exact::{AbGroup, IntMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisLattice {
    orders: Vec<u32>,
    rank: usize,
    action: Vec<IntMat>,
}

impl GaloisLattice {
    /// Validates commutativity, unimodularity, and generator orders.
    pub fn new(orders: Vec<u32>, rank: usize, action: Vec<IntMat>) -> Result<Self> {
        if orders.len() != action.len() {
            return Err(Error::Validation(format!(
                "{} generator orders but {} action matrices",
                orders.len(),
                action.len()
            )));
        }
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::Validation("generator orders must be >= 1".into()));
        }
        for a in &action {
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::Validation("action matrix shape does not match rank".into()));
            }
            if a.inverse_unimodular().is_none() {
                return Err(Error::Validation("action matrix is not invertible over Z".into()));
            }
        }
        for (i, a) in action.iter().enumerate() {
            if !a.pow_u(orders[i] as u64).is_identity() {
                return Err(Error::Validation(format!(
                    "generator {} does not have order dividing {}",
                    i, orders[i]
                )));
            }
            for b in action.iter().skip(i + 1) {
                if a.mul(b) != b.mul(a) {
                    return Err(Error::Validation("action matrices do not commute".into()));
                }
            }
        }
        Ok(GaloisLattice { orders, rank, action })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn generators(&self) -> &[IntMat] {
        &self.action
    }

    /// Action of the element with the given exponent tuple.
    pub fn act(&self, g: &[u32]) -> IntMat {
        assert_eq!(g.len(), self.orders.len());
        let mut m = IntMat::identity(self.rank);
        for (i, &e) in g.iter().enumerate() {
            m = m.mul(&self.action[i].pow_u((e % self.orders[i]) as u64));
        }
        m
    }

    /// Z^d with trivial action.
    pub fn split(orders: Vec<u32>, d: usize) -> Self {
        let action = orders.iter().map(|_| IntMat::identity(d)).collect();
        GaloisLattice { orders, rank: d, action }
    }

    /// Z[G] with the regular permutation action.
    pub fn induced(orders: Vec<u32>) -> Self {
        let elements = group_elements(&orders);
        let n = elements.len();
        let idx = |g: &[u32]| -> usize { element_index(&orders, g) };
        let mut action = Vec::with_capacity(orders.len());
        for i in 0..orders.len() {
            let mut m = IntMat::zero(n, n);
            for h in &elements {
                let mut gh = h.clone();
                gh[i] = (gh[i] + 1) % orders[i];
                m.set(idx(&gh), idx(h), 1.into());
            }
            action.push(m);
        }
        GaloisLattice { orders, rank: n, action }
    }

    /// Z[G]/(sum of all g), on the basis of nonidentity classes.  This is the
    /// character lattice of the norm-one torus of the cover.
    pub fn norm_one(orders: Vec<u32>) -> Self {
        let elements = group_elements(&orders);
        let n = elements.len();
        assert!(n >= 2, "norm-one lattice needs a nontrivial group");
        let rank = n - 1;
        let mut action = Vec::with_capacity(orders.len());
        for i in 0..orders.len() {
            let mut m = IntMat::zero(rank, rank);
            for h in elements.iter().skip(1) {
                let col = element_index(&orders, h) - 1;
                let mut gh = h.clone();
                gh[i] = (gh[i] + 1) % orders[i];
                let j = element_index(&orders, &gh);
                if j == 0 {
                    // the identity class is minus the sum of the others
                    for r in 0..rank {
                        m.set(r, col, (-1).into());
                    }
                } else {
                    m.set(j - 1, col, 1.into());
                }
            }
            action.push(m);
        }
        GaloisLattice { orders, rank, action }
    }

    /// The dual lattice: inverse-transpose action.
    pub fn dual(&self) -> Self {
        let action = self
            .action
            .iter()
            .map(|a| a.inverse_unimodular().expect("action is unimodular").transpose())
            .collect();
        GaloisLattice { orders: self.orders.clone(), rank: self.rank, action }
    }

    /// Direct sum over the same group.
    pub fn product(a: &GaloisLattice, b: &GaloisLattice) -> Result<Self> {
        if a.orders != b.orders {
            return Err(Error::Validation("direct sum requires the same group".into()));
        }
        let rank = a.rank + b.rank;
        let action = a
            .action
            .iter()
            .zip(&b.action)
            .map(|(ma, mb)| {
                IntMat::from_fn(rank, rank, |i, j| {
                    if i < a.rank && j < a.rank {
                        ma.get(i, j).clone()
                    } else if i >= a.rank && j >= a.rank {
                        mb.get(i - a.rank, j - a.rank).clone()
                    } else {
                        0.into()
                    }
                })
            })
            .collect();
        Ok(GaloisLattice { orders: a.orders.clone(), rank, action })
    }
}

/// All exponent tuples, first coordinate varying fastest.
pub fn group_elements(orders: &[u32]) -> Vec<Vec<u32>> {
    let total: u64 = orders.iter().map(|&n| n as u64).product();
    (0..total)
        .map(|mut idx| {
            orders
                .iter()
                .map(|&n| {
                    let c = (idx % n as u64) as u32;
                    idx /= n as u64;
                    c
                })
                .collect()
        })
        .collect()
}

fn element_index(orders: &[u32], g: &[u32]) -> usize {
    let mut idx = 0u64;
    let mut stride = 1u64;
    for (i, &n) in orders.iter().enumerate() {
        idx += (g[i] % n) as u64 * stride;
        stride *= n as u64;
    }
    idx as usize
}

/// The subgroup generated by the given tuples, as a sorted element list.
pub fn subgroup_elements(orders: &[u32], gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier = vec![vec![0u32; orders.len()]];
    seen.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for g in gens {
            let next: Vec<u32> = h
                .iter()
                .zip(g.iter())
                .zip(orders.iter())
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Saturated basis of the common fixed sublattice of the subgroup generated
/// by the given tuples (columns are the basis vectors).
pub fn invariants(lat: &GaloisLattice, hgens: &[Vec<u32>]) -> IntMat {
    if hgens.is_empty() {
        return IntMat::identity(lat.rank());
    }
    let blocks: Vec<IntMat> = hgens
        .iter()
        .map(|g| lat.act(g).sub(&IntMat::identity(lat.rank())))
        .collect();
    let mut stacked = blocks[0].clone();
    for b in &blocks[1..] {
        stacked = stacked.vstack(b);
    }
    stacked.kernel_basis()
}

/// Structure of the coinvariants L / sum (g - 1)L over the subgroup
/// generated by the given tuples.
pub fn coinvariants(lat: &GaloisLattice, hgens: &[Vec<u32>]) -> AbGroup {
    if hgens.is_empty() {
        return AbGroup { free_rank: lat.rank(), torsion: Vec::new() };
    }
    let mut stacked: Option<IntMat> = None;
    for g in hgens {
        let b = lat.act(g).sub(&IntMat::identity(lat.rank()));
        stacked = Some(match stacked {
            None => b,
            Some(s) => s.hstack(&b),
        });
    }
    AbGroup::cokernel(&stacked.unwrap())
}
