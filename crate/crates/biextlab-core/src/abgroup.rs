//! Finitely generated abelian groups in invariant-factor normal form, their
//! elements and homomorphisms, and the kernel/cokernel machinery.
//!
//! A group is ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k with d₁ | d₂ | … and every dᵢ ≥ 2.
//! Coordinates list free generators first, then torsion generators in
//! invariant-factor order; torsion coordinates are kept reduced to [0, dᵢ).

pub mod hom_ext;
pub mod tensor;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
#[cfg(test)]
use num_traits::Signed;

use crate::matrix::{reduce_mod, Matrix};
use crate::snf::kernel_basis;
use crate::subquotient::{relation_columns, Subquotient};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, Error> {
        for i in 0..torsion.len() {
            if torsion[i] < BigInt::from(2) {
                return Err(Error::IllDefinedHom(format!(
                    "invariant factor {} < 2",
                    torsion[i]
                )));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % &torsion[i]).is_zero() {
                return Err(Error::IllDefinedHom("broken divisor chain".to_string()));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    /// Normalize an arbitrary list of cyclic orders (0 = ℤ, n ≥ 1 = ℤ/n) into
    /// invariant factors, together with the change of presentation.
    pub fn from_orders(orders: &[BigInt]) -> (FgAbGroup, Subquotient) {
        let sq = Subquotient::normalize(orders);
        (sq.group().clone(), sq)
    }

    pub fn zero() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    pub fn z() -> Self {
        Self::free(1)
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::z(),
            1 => Self::zero(),
            _ => FgAbGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Per-coordinate orders: zeros for the free part, then the chain.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = vec![BigInt::zero(); self.free_rank];
        o.extend(self.torsion.iter().cloned());
        o
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `None` for infinite groups.
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

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ngens()],
        }
    }

    pub fn element(&self, coords: &[i64]) -> GroupElement {
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        GroupElement::new(self.clone(), v)
    }

    /// All elements in lexicographic order of normal-form coordinates.
    pub fn enumerate_elements(&self) -> Result<Vec<GroupElement>, Error> {
        if self.free_rank > 0 {
            return Err(Error::InfiniteGroup);
        }
        let radices: Vec<u64> = self
            .torsion
            .iter()
            .map(|d| d.to_u64().expect("torsion order fits in u64 for enumeration"))
            .collect();
        let total: u64 = radices.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut rem = idx;
            let mut coords = vec![BigInt::zero(); radices.len()];
            for pos in (0..radices.len()).rev() {
                coords[pos] = BigInt::from(rem % radices[pos]);
                rem /= radices[pos];
            }
            out.push(GroupElement {
                group: self.clone(),
                coords,
            });
        }
        Ok(out)
    }

    /// Index of an element in `enumerate_elements` order.
    pub fn element_index(&self, e: &GroupElement) -> u64 {
        debug_assert_eq!(&e.group, self);
        let mut idx: u64 = 0;
        for (pos, d) in self.torsion.iter().enumerate() {
            let radix = d.to_u64().expect("order fits u64");
            idx = idx * radix + e.coords[self.free_rank + pos].to_u64().unwrap();
        }
        idx
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for _ in 0..self.free_rank {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z")?;
            first = false;
        }
        for d in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: FgAbGroup, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), group.ngens());
        let orders = group.orders();
        let coords = coords
            .iter()
            .zip(orders.iter())
            .map(|(c, o)| reduce_mod(c, o))
            .collect();
        GroupElement { group, coords }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn as_column(&self) -> Matrix {
        Matrix::from_col(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group);
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a + b)
            .collect();
        GroupElement::new(self.group.clone(), coords)
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement::new(self.group.clone(), self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A homomorphism of f.g. abelian groups: an integer matrix with one column
/// per source generator and one row per target generator, well defined with
/// respect to the torsion relations on both sides.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: Matrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> Result<Self, Error> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::IllDefinedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let src_orders = source.orders();
        let tgt_orders = target.orders();
        for j in 0..source.ngens() {
            if src_orders[j].is_zero() {
                continue;
            }
            for i in 0..target.ngens() {
                let v = &src_orders[j] * matrix.get(i, j);
                if tgt_orders[i].is_zero() {
                    if !v.is_zero() {
                        return Err(Error::IllDefinedHom(format!(
                            "entry ({i},{j}) = {} against a free target generator: {} * {} != 0",
                            matrix.get(i, j),
                            src_orders[j],
                            matrix.get(i, j)
                        )));
                    }
                } else if !(&v % &tgt_orders[i]).is_zero() {
                    return Err(Error::IllDefinedHom(format!(
                        "entry ({i},{j}) = {} violates {} | {} * {}",
                        matrix.get(i, j),
                        tgt_orders[i],
                        src_orders[j],
                        matrix.get(i, j)
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: matrix.reduce_rows_mod(&tgt_orders),
        })
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let m = Matrix::zeros(target.ngens(), source.ngens());
        GroupHom {
            source,
            target,
            matrix: m,
        }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::identity(g.ngens()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero_hom(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        assert_eq!(e.group(), &self.source);
        let v = &self.matrix * &e.as_column();
        GroupElement::new(self.target.clone(), v.col_vec(0))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> GroupHom {
        assert_eq!(inner.target, self.source, "composition mismatch");
        let m = (&self.matrix * &inner.matrix).reduce_rows_mod(&self.target.orders());
        GroupHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: m,
        }
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let m = (&self.matrix + &other.matrix).reduce_rows_mod(&self.target.orders());
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: m,
        }
    }

    pub fn neg(&self) -> GroupHom {
        let m = (-&self.matrix).reduce_rows_mod(&self.target.orders());
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: m,
        }
    }

    pub fn scale(&self, k: &BigInt) -> GroupHom {
        let m = Matrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            self.matrix.get(i, j) * k
        })
        .reduce_rows_mod(&self.target.orders());
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: m,
        }
    }

    /// Kernel subgroup with its inclusion witness.
    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        let sq = self.kernel_subquotient();
        let group = sq.group().clone();
        let incl = GroupHom {
            source: group.clone(),
            target: self.source.clone(),
            matrix: sq.witnesses(),
        };
        (group, incl)
    }

    pub(crate) fn kernel_subquotient(&self) -> Subquotient {
        let src_orders = self.source.orders();
        let tgt_rel = relation_columns(&self.target.orders());
        let stacked = self.matrix.hstack(&tgt_rel);
        let k = kernel_basis(&stacked);
        let proj = k.submatrix(0, 0, self.source.ngens(), k.cols());
        Subquotient::new(&src_orders, Some(&proj.drop_zero_cols()), &Matrix::zeros(
            self.source.ngens(),
            0,
        ))
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (FgAbGroup, GroupHom) {
        let sq = self.cokernel_subquotient();
        let group = sq.group().clone();
        let n = self.target.ngens();
        let mut m = Matrix::zeros(group.ngens(), n);
        for i in 0..n {
            let e = Matrix::from_fn(n, 1, |r, _| BigInt::from((r == i) as i64));
            let c = sq.express(&e).expect("projection is total");
            m.paste(0, i, &c);
        }
        let proj = GroupHom {
            source: self.target.clone(),
            target: group.clone(),
            matrix: m,
        };
        (group, proj)
    }

    pub(crate) fn cokernel_subquotient(&self) -> Subquotient {
        Subquotient::new(&self.target.orders(), None, &self.matrix)
    }

    /// Image of this hom as a subgroup of the target (with inclusion).
    pub fn image(&self) -> (FgAbGroup, GroupHom) {
        let sq = Subquotient::new(
            &self.target.orders(),
            Some(&self.matrix.drop_zero_cols()),
            &Matrix::zeros(self.target.ngens(), 0),
        );
        let group = sq.group().clone();
        let incl = GroupHom {
            source: group.clone(),
            target: self.target.clone(),
            matrix: sq.witnesses(),
        };
        (group, incl)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} -> {:?} via {:?}",
            self.source, self.target, self.matrix
        )
    }
}

/// Direct sum with injection and projection witnesses. The result is in
/// invariant-factor normal form, so the witnesses carry the CRT scrambling.
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

pub fn direct_sum(parts: &[FgAbGroup]) -> DirectSum {
    let mut orders: Vec<BigInt> = Vec::new();
    let mut offsets = Vec::new();
    for p in parts {
        offsets.push(orders.len());
        orders.extend(p.orders());
    }
    let n = orders.len();
    let sq = Subquotient::normalize(&orders);
    let group = sq.group().clone();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (pi, p) in parts.iter().enumerate() {
        let off = offsets[pi];
        let mut inj = Matrix::zeros(group.ngens(), p.ngens());
        for j in 0..p.ngens() {
            let mut amb = Matrix::zeros(n, 1);
            amb.set(off + j, 0, BigInt::one());
            let c = sq.express(&amb).expect("total");
            inj.paste(0, j, &c);
        }
        injections.push(GroupHom {
            source: p.clone(),
            target: group.clone(),
            matrix: inj,
        });
        let mut proj = Matrix::zeros(p.ngens(), group.ngens());
        for g in 0..group.ngens() {
            let w = sq.witness(g);
            for j in 0..p.ngens() {
                proj.set(j, g, w.get(off + j, 0).clone());
            }
        }
        projections.push(GroupHom {
            source: group.clone(),
            target: p.clone(),
            matrix: proj.reduce_rows_mod(&p.orders()),
        });
    }
    DirectSum {
        group,
        injections,
        projections,
    }
}

/// All homomorphisms A → B, enumerated (A and B finite and small). Used for
/// corpus construction and brute-force oracles.
pub fn all_homs(a: &FgAbGroup, b: &FgAbGroup) -> Vec<GroupHom> {
    assert!(a.is_finite() && b.is_finite());
    let elements = b.enumerate_elements().expect("finite");
    let a_orders = a.orders();
    // Candidate images per source generator: elements killed by the generator order.
    let mut candidates: Vec<Vec<&GroupElement>> = Vec::new();
    for d in &a_orders {
        let c: Vec<&GroupElement> = elements
            .iter()
            .filter(|e| {
                let mut s = e.group().zero_element();
                let mut k = BigInt::zero();
                while &k < d {
                    s = s.add(e);
                    k += 1;
                }
                s.is_zero()
            })
            .collect();
        candidates.push(c);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; a_orders.len()];
    loop {
        let mut m = Matrix::zeros(b.ngens(), a.ngens());
        for (j, &i) in idx.iter().enumerate() {
            for r in 0..b.ngens() {
                m.set(r, j, candidates[j][i].coords()[r].clone());
            }
        }
        out.push(GroupHom::new(a.clone(), b.clone(), m).expect("constructed well defined"));
        // odometer
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
