//! Tensor product and Tor₁ of f.g. abelian groups.
//!
//! A ⊗ B is presented by the pairs of generators with cyclic orders
//! gcd-combined; Tor₁ keeps the torsion pairs only. The presentation is kept
//! around so the universal bilinear map and induced maps f ⊗ g stay available.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::matrix::{reduce_mod, Matrix};
use crate::subquotient::Subquotient;

use super::{FgAbGroup, GroupElement, GroupHom};

/// Order of ℤ/x ⊗ ℤ/y as a cyclic group (0 encodes ℤ).
fn pair_order(x: &BigInt, y: &BigInt) -> BigInt {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else {
        x.gcd(y)
    }
}

#[derive(Clone)]
pub struct TensorGroup {
    left: FgAbGroup,
    right: FgAbGroup,
    raw_orders: Vec<BigInt>,
    sq: Subquotient,
}

/// A ⊗ B with its presentation (generator pairs in left-major order).
pub fn tensor_group(a: &FgAbGroup, b: &FgAbGroup) -> TensorGroup {
    let ao = a.orders();
    let bo = b.orders();
    let mut raw = Vec::with_capacity(ao.len() * bo.len());
    for x in &ao {
        for y in &bo {
            raw.push(pair_order(x, y));
        }
    }
    let sq = Subquotient::normalize(&raw);
    TensorGroup {
        left: a.clone(),
        right: b.clone(),
        raw_orders: raw,
        sq,
    }
}

/// Tor₁(A,B): gcds of the torsion pairs, normalized.
pub fn tor_group(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut raw = Vec::new();
    for x in a.torsion() {
        for y in b.torsion() {
            raw.push(x.gcd(y));
        }
    }
    FgAbGroup::from_orders(&raw).0
}

impl TensorGroup {
    pub fn group(&self) -> &FgAbGroup {
        self.sq.group()
    }

    pub fn left(&self) -> &FgAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FgAbGroup {
        &self.right
    }

    fn raw_len(&self) -> usize {
        self.raw_orders.len()
    }

    /// The universal bilinear map: coordinates of a ⊗ b in the normal form.
    pub fn pure(&self, a: &GroupElement, b: &GroupElement) -> Matrix {
        assert_eq!(a.group(), &self.left);
        assert_eq!(b.group(), &self.right);
        let nb = self.right.ngens();
        let mut raw = Matrix::zeros(self.raw_len(), 1);
        for (i, ca) in a.coords().iter().enumerate() {
            for (j, cb) in b.coords().iter().enumerate() {
                let idx = i * nb + j;
                raw.set(idx, 0, reduce_mod(&(ca * cb), &self.raw_orders[idx]));
            }
        }
        self.sq.express(&raw).expect("presentation is total")
    }

    /// Normal-form coordinates of a raw presentation vector.
    pub fn express_raw(&self, raw: &Matrix) -> Matrix {
        self.sq.express(raw).expect("presentation is total")
    }

    /// Raw presentation vector of generator `i` of the normal form.
    pub fn witness_raw(&self, i: usize) -> Matrix {
        self.sq.witness(i)
    }
}

/// f ⊗ g : A ⊗ B → A′ ⊗ B′ between normalized tensor groups.
pub fn tensor_hom(
    f: &GroupHom,
    g: &GroupHom,
    src: &TensorGroup,
    dst: &TensorGroup,
) -> GroupHom {
    assert_eq!(f.source(), &src.left);
    assert_eq!(g.source(), &src.right);
    assert_eq!(f.target(), &dst.left);
    assert_eq!(g.target(), &dst.right);
    let nb_src = src.right.ngens();
    let nb_dst = dst.right.ngens();
    let na_dst = dst.left.ngens();
    let n = src.group().ngens();
    let mut m = Matrix::zeros(dst.group().ngens(), n);
    for gen in 0..n {
        let w = src.witness_raw(gen);
        let mut raw = Matrix::zeros(dst.raw_len(), 1);
        for i in 0..src.left.ngens() {
            for j in 0..nb_src {
                let c = w.get(i * nb_src + j, 0);
                if c.is_zero() {
                    continue;
                }
                for i2 in 0..na_dst {
                    let fi = f.matrix().get(i2, i);
                    if fi.is_zero() {
                        continue;
                    }
                    for j2 in 0..nb_dst {
                        let gj = g.matrix().get(j2, j);
                        if gj.is_zero() {
                            continue;
                        }
                        let idx = i2 * nb_dst + j2;
                        let v = raw.get(idx, 0) + c * fi * gj;
                        raw.set(idx, 0, reduce_mod(&v, &dst.raw_orders[idx]));
                    }
                }
            }
        }
        m.paste(0, gen, &dst.express_raw(&raw));
    }
    GroupHom::new(src.group().clone(), dst.group().clone(), m)
        .expect("f ⊗ g is well defined")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::direct_sum;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn flat_unit_and_gcd() {
        let a = direct_sum(&[z(2), z(12)]).group;
        // Z ⊗ A = A, Tor(Z, A) = 0
        assert_eq!(tensor_group(&FgAbGroup::z(), &a).group(), &a);
        assert!(tor_group(&FgAbGroup::z(), &a).is_zero());
        // Z/4 ⊗ Z/6 = Z/2 = Tor(Z/4, Z/6), oracle gcd(4,6) = 2
        assert_eq!(tensor_group(&z(4), &z(6)).group(), &z(2));
        assert_eq!(tor_group(&z(4), &z(6)), z(2));
    }

    #[test]
    fn pure_tensor_is_bilinear() {
        let t = tensor_group(&z(4), &z(6));
        let a1 = z(4).element(&[1]);
        let a2 = z(4).element(&[2]);
        let b = z(6).element(&[1]);
        let lhs = t.pure(&a1.add(&a2), &b);
        let o = t.group().orders();
        let rhs = (&t.pure(&a1, &b) + &t.pure(&a2, &b)).reduce_rows_mod(&o);
        assert_eq!(lhs, rhs);
        // surjectivity of the universal map on generators
        let mut hit_nonzero = false;
        for e in z(4).enumerate_elements().unwrap() {
            for f in z(6).enumerate_elements().unwrap() {
                if !t.pure(&e, &f).is_zero() {
                    hit_nonzero = true;
                }
            }
        }
        assert!(hit_nonzero);
    }

    #[test]
    fn additivity_both_arguments() {
        let parts = [z(2), z(4)];
        let sum = direct_sum(&parts).group;
        let probe = z(6);
        let lhs = tensor_group(&sum, &probe).group().clone();
        let rhs = direct_sum(&[
            tensor_group(&parts[0], &probe).group().clone(),
            tensor_group(&parts[1], &probe).group().clone(),
        ])
        .group;
        assert_eq!(lhs, rhs);
        let lhs = tor_group(&probe, &sum);
        let rhs = direct_sum(&[tor_group(&probe, &parts[0]), tor_group(&probe, &parts[1])]).group;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_hom_functorial() {
        let src = tensor_group(&z(4), &z(4));
        let dst = tensor_group(&z(2), &z(4));
        let proj = GroupHom::new(z(4), z(2), Matrix::from_rows(&[&[1]])).unwrap();
        let t = tensor_hom(&proj, &GroupHom::identity(&z(4)), &src, &dst);
        // (proj ⊗ id)(a ⊗ b) = proj(a) ⊗ b on pure tensors
        let a = z(4).element(&[1]);
        let b = z(4).element(&[3]);
        let lhs = (t.matrix() * &src.pure(&a, &b)).reduce_rows_mod(&dst.group().orders());
        let rhs = dst.pure(&proj.apply(&a), &b);
        assert_eq!(lhs, rhs);
    }
}
