//! Subquotients of coordinate groups: the one primitive behind kernels,
//! cokernels, homology, Hom/Ext groups and the Ψ groups.
//!
//! An *ambient* group is ℤ^n with a per-coordinate order list (0 = free
//! coordinate, d ≥ 1 = torsion ℤ/d). A [`Subquotient`] is (L + R)/(D + R)
//! where L and D are integer lattices given by generator columns and R is the
//! ambient relation lattice. The result is put in invariant-factor normal
//! form, with a witness vector per generator and an `express` map sending an
//! ambient vector to its coordinates in the normal form.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::FgAbGroup;
use crate::matrix::{reduce_mod, Matrix};
use crate::snf::{snf, Solver};

/// Relation columns of an ambient order list: one column `d_i · e_i` per
/// torsion coordinate.
pub fn relation_columns(orders: &[BigInt]) -> Matrix {
    let idx: Vec<usize> = (0..orders.len()).filter(|&i| !orders[i].is_zero()).collect();
    let mut r = Matrix::zeros(orders.len(), idx.len());
    for (j, &i) in idx.iter().enumerate() {
        r.set(i, j, orders[i].clone());
    }
    r
}

/// Is the order list already an invariant-factor normal form (free
/// coordinates first, then a divisor chain of orders ≥ 2)?
fn is_normal_form(orders: &[BigInt]) -> bool {
    let mut seen_torsion = false;
    let mut prev: Option<&BigInt> = None;
    for o in orders {
        if o.is_zero() {
            if seen_torsion {
                return false;
            }
        } else {
            if o.is_one() || *o < BigInt::from(2) {
                return false;
            }
            if let Some(p) = prev {
                if !(o % p).is_zero() {
                    return false;
                }
            }
            prev = Some(o);
            seen_torsion = true;
        }
    }
    true
}

#[derive(Clone)]
enum Inner {
    /// The whole ambient group, already in normal form: everything is the
    /// identity. Covers the common powers-of-a-cyclic-group ambients.
    Identity,
    General {
        witnesses: Matrix,
        numerator: Solver,
        u_small: Matrix,
        kept: Vec<usize>,
    },
}

#[derive(Clone)]
pub struct Subquotient {
    ambient_orders: Vec<BigInt>,
    group: FgAbGroup,
    inner: Inner,
}

impl Subquotient {
    /// `num = None` means the whole ambient group. `den` may have zero columns.
    pub fn new(ambient_orders: &[BigInt], num: Option<&Matrix>, den: &Matrix) -> Subquotient {
        let n = ambient_orders.len();
        if num.is_none() && den.is_zero() && is_normal_form(ambient_orders) {
            let free_rank = ambient_orders.iter().filter(|o| o.is_zero()).count();
            let torsion: Vec<BigInt> = ambient_orders
                .iter()
                .filter(|o| !o.is_zero())
                .cloned()
                .collect();
            return Subquotient {
                ambient_orders: ambient_orders.to_vec(),
                group: FgAbGroup::from_invariants(free_rank, torsion)
                    .expect("normal form checked"),
                inner: Inner::Identity,
            };
        }
        let rel = relation_columns(ambient_orders);
        let num_mat = match num {
            Some(m) => {
                assert_eq!(m.rows(), n);
                m.hstack(&rel)
            }
            None => Matrix::identity(n).hstack(&rel),
        };
        assert_eq!(den.rows(), n);
        let solver = Solver::new(&num_mat);
        let den_full = den.hstack(&rel);
        let c = solver
            .solve(&den_full)
            .expect("subquotient: denominator not contained in numerator lattice");
        // Quotient of Z^m by the denominator expressed in numerator coordinates
        // plus the ambiguity lattice ker(num), so `express` is well defined.
        let c_full = c.hstack(&solver.kernel_basis());
        let dec = snf(&c_full);
        let m = num_mat.cols();
        let diag = dec.diagonal();
        let order_at = |j: usize| -> BigInt {
            if j < diag.len() {
                diag[j].clone()
            } else {
                BigInt::zero()
            }
        };
        let mut kept_free: Vec<usize> = Vec::new();
        let mut kept_tors: Vec<(usize, BigInt)> = Vec::new();
        for j in 0..m {
            let d = order_at(j);
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                kept_free.push(j);
            } else {
                kept_tors.push((j, d));
            }
        }
        let torsion: Vec<BigInt> = kept_tors.iter().map(|(_, d)| d.clone()).collect();
        let group = FgAbGroup::from_invariants(kept_free.len(), torsion)
            .expect("SNF diagonal is a divisor chain");
        let kept: Vec<usize> = kept_free
            .into_iter()
            .chain(kept_tors.into_iter().map(|(j, _)| j))
            .collect();
        let mut witnesses = Matrix::zeros(n, kept.len());
        for (g, &j) in kept.iter().enumerate() {
            let w = &num_mat * &dec.u_inv.col(j);
            for i in 0..n {
                witnesses.set(i, g, reduce_mod(w.get(i, 0), &ambient_orders[i]));
            }
        }
        Subquotient {
            ambient_orders: ambient_orders.to_vec(),
            group,
            inner: Inner::General {
                witnesses,
                numerator: solver,
                u_small: dec.u,
                kept,
            },
        }
    }

    /// Normalize a raw order list into invariant-factor form; the subquotient
    /// is the identity map seen as a change of presentation.
    pub fn normalize(orders: &[BigInt]) -> Subquotient {
        let n = orders.len();
        Subquotient::new(orders, None, &Matrix::zeros(n, 0))
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient_orders(&self) -> &[BigInt] {
        &self.ambient_orders
    }

    /// Ambient representative of generator `i` (column vector).
    pub fn witness(&self, i: usize) -> Matrix {
        match &self.inner {
            Inner::Identity => {
                let n = self.ambient_orders.len();
                Matrix::from_fn(n, 1, |r, _| BigInt::from((r == i) as i64))
            }
            Inner::General { witnesses, .. } => witnesses.col(i),
        }
    }

    pub fn witnesses(&self) -> Matrix {
        match &self.inner {
            Inner::Identity => Matrix::identity(self.ambient_orders.len()),
            Inner::General { witnesses, .. } => witnesses.clone(),
        }
    }

    /// Coordinates of an ambient vector in the normal form, or `None` when the
    /// vector does not lie in the numerator subgroup.
    pub fn express(&self, v: &Matrix) -> Option<Matrix> {
        assert_eq!(v.rows(), self.ambient_orders.len());
        assert_eq!(v.cols(), 1);
        match &self.inner {
            Inner::Identity => Some(Matrix::from_fn(v.rows(), 1, |r, _| {
                reduce_mod(v.get(r, 0), &self.ambient_orders[r])
            })),
            Inner::General {
                numerator,
                u_small,
                kept,
                ..
            } => {
                let z = numerator.solve(v)?;
                let y = u_small * &z;
                let orders = self.group.orders();
                let mut out = Matrix::zeros(kept.len(), 1);
                for (g, &j) in kept.iter().enumerate() {
                    out.set(g, 0, reduce_mod(y.get(j, 0), &orders[g]));
                }
                Some(out)
            }
        }
    }

    /// `express` for several columns at once.
    pub fn express_cols(&self, v: &Matrix) -> Option<Matrix> {
        let mut out = Matrix::zeros(self.group.ngens(), v.cols());
        for c in 0..v.cols() {
            let e = self.express(&v.col(c))?;
            out.paste(0, c, &e);
        }
        Some(out)
    }
}

/// Kernel of a raw map between coordinate groups (matrix columns = images of
/// the source coordinates), as a subquotient of the source. All-zero
/// constraint rows are dropped before the lattice computation.
pub fn raw_kernel(m: &Matrix, src_orders: &[BigInt], tgt_orders: &[BigInt]) -> Subquotient {
    assert_eq!(m.rows(), tgt_orders.len());
    assert_eq!(m.cols(), src_orders.len());
    if m.is_zero() {
        return Subquotient::normalize(src_orders);
    }
    let keep: Vec<usize> = (0..m.rows())
        .filter(|&i| (0..m.cols()).any(|j| !m.get(i, j).is_zero()))
        .collect();
    let trimmed = Matrix::from_fn(keep.len(), m.cols(), |i, j| m.get(keep[i], j).clone());
    let kept_orders: Vec<BigInt> = keep.iter().map(|&i| tgt_orders[i].clone()).collect();
    let stacked = trimmed.hstack(&relation_columns(&kept_orders));
    let k = crate::snf::kernel_basis(&stacked);
    let proj = k.submatrix(0, 0, src_orders.len(), k.cols()).drop_zero_cols();
    Subquotient::new(src_orders, Some(&proj), &Matrix::zeros(src_orders.len(), 0))
}

/// Cokernel of a raw map, as a quotient of the target coordinate group.
pub fn raw_cokernel(m: &Matrix, tgt_orders: &[BigInt]) -> Subquotient {
    assert_eq!(m.rows(), tgt_orders.len());
    if m.is_zero() {
        return Subquotient::normalize(tgt_orders);
    }
    Subquotient::new(tgt_orders, None, &m.drop_zero_cols())
}

/// Homology at a node `prev <-d1- mid <-d2- next` of raw maps: ker d1 / im d2.
pub fn raw_homology(
    d1: &Matrix,
    d2: &Matrix,
    prev_orders: &[BigInt],
    mid_orders: &[BigInt],
) -> Subquotient {
    assert_eq!(d1.cols(), mid_orders.len());
    assert_eq!(d2.rows(), mid_orders.len());
    let den = d2.drop_zero_cols();
    if d1.is_zero() {
        return Subquotient::new(mid_orders, None, &den);
    }
    let keep: Vec<usize> = (0..d1.rows())
        .filter(|&i| (0..d1.cols()).any(|j| !d1.get(i, j).is_zero()))
        .collect();
    let trimmed = Matrix::from_fn(keep.len(), d1.cols(), |i, j| d1.get(keep[i], j).clone());
    let kept_orders: Vec<BigInt> = keep.iter().map(|&i| prev_orders[i].clone()).collect();
    let stacked = trimmed.hstack(&relation_columns(&kept_orders));
    let k = crate::snf::kernel_basis(&stacked);
    let proj = k.submatrix(0, 0, mid_orders.len(), k.cols()).drop_zero_cols();
    Subquotient::new(mid_orders, Some(&proj), &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalize_crt() {
        // Z/6 + Z/4 = Z/2 + Z/12
        let sq = Subquotient::normalize(&big(&[6, 4]));
        assert_eq!(sq.group().free_rank(), 0);
        assert_eq!(sq.group().torsion(), &big(&[2, 12]));
        // Witness round trip: every generator expresses to a unit vector.
        for i in 0..2 {
            let w = sq.witness(i);
            let e = sq.express(&w).unwrap();
            for g in 0..2 {
                assert_eq!(
                    e.get(g, 0),
                    &BigInt::from((g == i) as i64),
                    "witness {i} expressed wrong"
                );
            }
        }
        // fast identity path: already-normal orders
        let sq = Subquotient::normalize(&big(&[0, 2, 4]));
        assert_eq!(sq.group().free_rank(), 1);
        assert_eq!(sq.group().torsion(), &big(&[2, 4]));
        let v = Matrix::from_rows(&[&[5], &[3], &[-1]]);
        let e = sq.express(&v).unwrap();
        assert_eq!(e, Matrix::from_rows(&[&[5], &[1], &[3]]));
    }

    #[test]
    fn quotient_of_z_by_2z() {
        let den = Matrix::from_rows(&[&[2]]);
        let sq = Subquotient::new(&big(&[0]), None, &den);
        assert_eq!(sq.group().torsion(), &big(&[2]));
        assert_eq!(sq.group().free_rank(), 0);
        let one = Matrix::from_rows(&[&[1]]);
        let two = Matrix::from_rows(&[&[2]]);
        assert!(!sq.express(&one).unwrap().is_zero());
        assert!(sq.express(&two).unwrap().is_zero());
    }

    #[test]
    fn sublattice_of_rank_two() {
        // Lattice spanned by (2,0) and (0,3) inside Z^2.
        let num = Matrix::from_rows(&[&[2, 0], &[0, 3]]);
        let sq = Subquotient::new(&big(&[0, 0]), Some(&num), &Matrix::zeros(2, 0));
        assert_eq!(sq.group().free_rank(), 2);
        assert!(sq.express(&Matrix::from_rows(&[&[1], &[0]])).is_none());
        assert!(sq.express(&Matrix::from_rows(&[&[2], &[3]])).is_some());
    }
}
