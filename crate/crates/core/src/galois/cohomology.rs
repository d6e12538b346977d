//! Group cohomology of abelian groups acting on lattices, by integer linear
//! algebra on the generator cochain complex.
//!
//! A 1-cocycle is determined by its values on the generators; the cocycle
//! conditions are the generator norms and the pairwise commutation rules.
//! Everything reduces to kernels, solves, and Smith forms over Z.
//!
//! [FiniteGroupData] [group_h1] [tate_cohomology_cyclic] [sha_kernel]

use num::{BigInt, One, Zero};

use super::{group_elements, GaloisLattice};
use crate::exact::{smith_normal_form, AbGroup, AbMap, FgAb, IntMat};
use crate::function_field::AbelianCover;

/// A finite abelian group with chosen generators in whatever ambient
/// coordinates the producing operation documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupData {
    /// Cyclic orders >= 2, one per generator.
    pub orders: Vec<BigInt>,
    pub generators: Vec<Vec<BigInt>>,
}

impl FiniteGroupData {
    pub fn trivial() -> Self {
        FiniteGroupData { orders: Vec::new(), generators: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().fold(BigInt::one(), |a, d| a * d)
    }
}

impl std::fmt::Display for FiniteGroupData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Both Tate groups of a cyclic action in degrees 0 and -1.
#[derive(Clone, Debug)]
pub struct TateData {
    /// Fixed points modulo norms.
    pub h0: AbGroup,
    /// Norm kernel modulo the augmentation image.
    pub h_minus_one: AbGroup,
}

fn place_block(dst: &mut IntMat, row0: usize, col0: usize, m: &IntMat) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            dst.set(row0 + i, col0 + j, m.get(i, j).clone());
        }
    }
}

fn norm_operator(a: &IntMat, order: u32) -> IntMat {
    let n = a.rows();
    let mut acc = IntMat::zero(n, n);
    let mut p = IntMat::identity(n);
    for _ in 0..order {
        acc = acc.add(&p);
        p = p.mul(a);
    }
    acc
}

/// H^1(G, L) with explicit cocycle generators.  Generators are the stacked
/// values (c(g_1); ...; c(g_k)) in Z^{k * rank}.
pub fn group_h1(lat: &GaloisLattice) -> FiniteGroupData {
    let k = lat.orders().len();
    let r = lat.rank();
    if k == 0 || r == 0 {
        return FiniteGroupData::trivial();
    }
    let id = IntMat::identity(r);
    let deltas: Vec<IntMat> = lat.generators().iter().map(|a| a.sub(&id)).collect();

    // cocycle conditions: one norm row block per generator, one commutation
    // block per pair
    let pairs = k * (k - 1) / 2;
    let mut rel = IntMat::zero((k + pairs) * r, k * r);
    for (i, a) in lat.generators().iter().enumerate() {
        place_block(&mut rel, i * r, i * r, &norm_operator(a, lat.orders()[i]));
    }
    let mut row = k * r;
    for i in 0..k {
        for j in i + 1..k {
            // (g_i - 1) c(g_j) - (g_j - 1) c(g_i) = 0
            place_block(&mut rel, row, j * r, &deltas[i]);
            place_block(&mut rel, row, i * r, &deltas[j].neg());
            row += r;
        }
    }
    let cocycles = rel.kernel_basis();

    let mut coboundary = deltas[0].clone();
    for d in &deltas[1..] {
        coboundary = coboundary.vstack(d);
    }
    let expressed = cocycles
        .solve(&coboundary)
        .expect("coboundaries are cocycles");

    let quot = AbMap::new(FgAb::free(r), FgAb::free(cocycles.cols()), expressed);
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for (d, rep) in quot.cokernel_generators() {
        assert!(!d.is_zero(), "H^1 of a lattice is finite");
        let amb = cocycles.mul(&IntMat::from_col(&rep));
        orders.push(d);
        generators.push(amb.col(0));
    }
    FiniteGroupData { orders, generators }
}

/// Value of the cocycle with generator values x (stacked) on an arbitrary
/// element, by the expansion c(uv) = c(u) + u c(v).
pub fn cocycle_value(lat: &GaloisLattice, x: &[BigInt], g: &[u32]) -> Vec<BigInt> {
    let r = lat.rank();
    assert_eq!(x.len(), lat.orders().len() * r);
    let mut val = IntMat::zero(r, 1);
    let mut prefix = IntMat::identity(r);
    for (i, a) in lat.generators().iter().enumerate() {
        let e = g[i] % lat.orders()[i];
        if e > 0 {
            let xi = IntMat::from_col(&x[i * r..(i + 1) * r]);
            let part = norm_operator(a, e).mul(&xi);
            val = val.add(&prefix.mul(&part));
        }
        prefix = prefix.mul(&a.pow_u(e as u64));
    }
    val.col(0)
}

/// Whether the class of the cocycle restricts to zero on the subgroup
/// generated by the given tuples: an exact integer solve for a single
/// coboundary witness.
pub fn restriction_is_trivial(lat: &GaloisLattice, x: &[BigInt], dgens: &[Vec<u32>]) -> bool {
    let r = lat.rank();
    let id = IntMat::identity(r);
    let mut lhs: Option<IntMat> = None;
    let mut rhs: Vec<BigInt> = Vec::new();
    for h in dgens {
        let block = lat.act(h).sub(&id);
        lhs = Some(match lhs {
            None => block,
            Some(m) => m.vstack(&block),
        });
        rhs.extend(cocycle_value(lat, x, h));
    }
    match lhs {
        None => true,
        Some(m) => m.solve(&IntMat::from_col(&rhs)).is_some(),
    }
}

/// Tate cohomology of a cyclic group acting through a single matrix.
pub fn tate_cohomology_cyclic(order: u32, a: &IntMat) -> TateData {
    let id = IntMat::identity(a.rows());
    let delta = a.sub(&id);
    let norm = norm_operator(a, order);

    let fixed = delta.kernel_basis();
    let h0 = AbGroup::cokernel(&fixed.solve(&norm).expect("norms are fixed"));

    let norm_kernel = norm.kernel_basis();
    let h_minus_one = AbGroup::cokernel(&norm_kernel.solve(&delta).expect("augmentation lands in the norm kernel"));
    TateData { h0, h_minus_one }
}

/// Kernel of H^1(G, L) -> prod_D H^1(D, L), D running over all cyclic
/// subgroups (unramified decomposition groups, by density) plus the full
/// decomposition group at each ramified place of the cover.
pub fn sha_kernel(cover: &AbelianCover, lat: &GaloisLattice) -> FiniteGroupData {
    assert_eq!(cover.orders(), lat.orders(), "lattice group must match the cover group");
    let h1 = group_h1(lat);
    if h1.is_trivial() {
        return FiniteGroupData::trivial();
    }

    let mut tests: Vec<Vec<Vec<u32>>> = group_elements(lat.orders())
        .into_iter()
        .skip(1)
        .map(|g| vec![g])
        .collect();
    for v in cover.ramified_places() {
        let d = cover.decomposition_at(v);
        tests.push(vec![d.inertia_gen, d.frobenius]);
    }

    // enumerate classes as exponent tuples against the h1 generators
    let s = h1.orders.len();
    let mut passing: Vec<Vec<BigInt>> = Vec::new();
    let mut tuple = vec![BigInt::zero(); s];
    loop {
        let class: Vec<BigInt> = (0..h1.generators[0].len())
            .map(|c| {
                (0..s)
                    .map(|i| &tuple[i] * &h1.generators[i][c])
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect();
        if tests.iter().all(|d| restriction_is_trivial(lat, &class, d)) {
            passing.push(tuple.clone());
        }
        // odometer over prod Z/d_i
        let mut i = 0;
        loop {
            if i == s {
                // full sweep done: present the passing subgroup of prod Z/d_i
                return subgroup_in_quotient(&passing, &h1);
            }
            tuple[i] += 1;
            if tuple[i] < h1.orders[i] {
                break;
            }
            tuple[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Structure and cocycle generators of the subgroup of prod Z/d_i generated
/// by the given exponent tuples.
fn subgroup_in_quotient(tuples: &[Vec<BigInt>], h1: &FiniteGroupData) -> FiniteGroupData {
    let s = h1.orders.len();
    let mut diag = IntMat::zero(s, s);
    for i in 0..s {
        diag.set(i, i, h1.orders[i].clone());
    }
    let mut span = diag.clone();
    for t in tuples {
        span = span.hstack(&IntMat::from_col(t));
    }
    let basis = crate::exact::column_span_basis(&span);
    let rels = basis.solve(&diag).expect("orders lie in the span");

    let s_form = smith_normal_form(&rels);
    let left_inv = s_form.left().inverse_unimodular().expect("Smith left factor is unimodular");
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for i in 0..basis.cols() {
        let d = s_form.diag().get(i).cloned().unwrap_or_else(BigInt::zero);
        assert!(!d.is_zero(), "subgroup of a finite group is finite");
        if d.is_one() {
            continue;
        }
        let tup = basis.mul(&IntMat::from_col(&left_inv.col(i))).col(0);
        let class: Vec<BigInt> = (0..h1.generators[0].len())
            .map(|c| {
                (0..s)
                    .map(|j| &tup[j] * &h1.generators[j][c])
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect();
        orders.push(d);
        generators.push(class);
    }
    FiniteGroupData { orders, generators }
}
