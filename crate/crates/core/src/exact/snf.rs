//! Smith normal form over Z and finitely generated abelian group shapes.
//!
//! [`smith_normal_form`] returns unimodular `left`, `right` with
//! `left * m * right` diagonal, the diagonal nonnegative and each entry
//! dividing the next.  [`AbGroup`] records the isomorphism type of a
//! cokernel: free rank plus the nontrivial invariant factors.

use super::matrix::IntMat;
use num::{BigInt, Integer, One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct SmithForm {
    diag: Vec<BigInt>,
    left: IntMat,
    right: IntMat,
}

impl SmithForm {
    /// Diagonal entries d_1 | d_2 | ... (length = min(rows, cols)).
    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn left(&self) -> &IntMat {
        &self.left
    }

    pub fn right(&self) -> &IntMat {
        &self.right
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn swap_rows(a: &mut IntMat, i: usize, j: usize) {
    for c in 0..a.cols() {
        let vi = a.get(i, c).clone();
        let vj = a.get(j, c).clone();
        a.set(i, c, vj);
        a.set(j, c, vi);
    }
}

fn swap_cols(a: &mut IntMat, i: usize, j: usize) {
    for r in 0..a.rows() {
        let vi = a.get(r, i).clone();
        let vj = a.get(r, j).clone();
        a.set(r, i, vj);
        a.set(r, j, vi);
    }
}

// row_i -= q * row_j
fn row_sub(a: &mut IntMat, i: usize, j: usize, q: &BigInt) {
    for c in 0..a.cols() {
        let v = a.get(i, c) - q * a.get(j, c);
        a.set(i, c, v);
    }
}

// col_i -= q * col_j
fn col_sub(a: &mut IntMat, i: usize, j: usize, q: &BigInt) {
    for r in 0..a.rows() {
        let v = a.get(r, i) - q * a.get(r, j);
        a.set(r, i, v);
    }
}

fn negate_row(a: &mut IntMat, i: usize) {
    for c in 0..a.cols() {
        let v = -a.get(i, c);
        a.set(i, c, v);
    }
}

pub fn smith_normal_form(m: &IntMat) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = IntMat::identity(rows);
    let mut right = IntMat::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a.get(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    Some((pi, pj)) if a.get(*pi, *pj).abs() <= a.get(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            swap_rows(&mut a, t, pi);
            swap_rows(&mut left, t, pi);
        }
        if pj != t {
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if !a.get(i, t).is_zero() {
                let q = a.get(i, t).div_floor(a.get(t, t));
                row_sub(&mut a, i, t, &q);
                row_sub(&mut left, i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..cols {
            if !a.get(t, j).is_zero() {
                let q = a.get(t, j).div_floor(a.get(t, t));
                col_sub(&mut a, j, t, &q);
                col_sub(&mut right, j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // remainder smaller than the pivot exists; re-pivot
        }
        // pivot must divide every entry of the trailing block
        let mut bad_row = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !a.get(i, j).mod_floor(a.get(t, t)).is_zero() {
                    bad_row = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad_row {
            let minus_one = -BigInt::one();
            row_sub(&mut a, t, i, &minus_one);
            row_sub(&mut left, t, i, &minus_one);
            continue;
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..n).map(|i| a.get(i, i).clone()).collect();
    debug_assert!({
        let prod = left.mul(m).mul(&right);
        (0..rows).all(|i| (0..cols).all(|j| if i == j && i < n {
            prod.get(i, j) == &diag[i]
        } else {
            prod.get(i, j).is_zero()
        }))
    });
    SmithForm { diag, left, right }
}

/// Isomorphism type of a finitely generated abelian group:
/// Z^free_rank x prod Z/torsion[i], with torsion[i] | torsion[i+1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// None when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.torsion {
            o *= d;
        }
        Some(o)
    }

    /// Z^rows / (column span of m).
    pub fn cokernel(m: &IntMat) -> AbGroup {
        let snf = smith_normal_form(m);
        let rank = snf.rank();
        let torsion: Vec<BigInt> = snf
            .diag()
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        AbGroup {
            free_rank: m.rows() - rank,
            torsion,
        }
    }
}

impl std::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat) {
        let snf = smith_normal_form(m);
        let prod = snf.left().mul(m).mul(snf.right());
        let n = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i == j && i < n {
                    assert_eq!(prod.get(i, j), &snf.diag()[i]);
                } else {
                    assert!(prod.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(snf.left().det().abs(), BigInt::one());
        assert_eq!(snf.right().det().abs(), BigInt::one());
        for w in snf.diag().windows(2) {
            assert!(!w[0].is_negative());
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!(w[1].mod_floor(&w[0]).is_zero());
            }
        }
    }

    #[test]
    fn classic_example() {
        let m = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.diag(),
            &[BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        check(&m);
    }

    #[test]
    fn rectangular_and_zero() {
        check(&IntMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]));
        check(&IntMat::zero(3, 2));
    }

    #[test]
    fn cokernel_shapes() {
        // Z^2 / <(2,0),(0,3)> = Z/6 in invariant-factor form (1 | 6? no: 2,3 -> 1 x 6)
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let g = AbGroup::cokernel(&m);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.order(), Some(BigInt::from(6)));
        let m2 = IntMat::from_rows(&[vec![2, 0], vec![0, 0]]);
        let g2 = AbGroup::cokernel(&m2);
        assert_eq!(g2.free_rank, 1);
        assert_eq!(g2.torsion, vec![BigInt::from(2)]);
    }
}
