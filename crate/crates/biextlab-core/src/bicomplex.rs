//! Bicomplexes with anticommuting squares, their total complexes (with block
//! bookkeeping for the Ψ machinery), and the tensor product of two chain
//! complexes as a bicomplex.
//!
//! Convention: cell (i, j) has a horizontal differential D to (i−1, j) and a
//! vertical one d to (i, j−1); every square anticommutes (D∘d + d∘D = 0), so
//! the total differential is the plain block sum with no extra signs.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;

use crate::abgroup::tensor::{tensor_group, tensor_hom, TensorGroup};
use crate::abgroup::{direct_sum, FgAbGroup, GroupHom};
use crate::complex::ChainComplex;
use crate::subquotient::raw_homology;
use crate::Error;

/// Semantic label of a summand of a bicomplex cell; drives the decoding of
/// Ψ witnesses into cocycle tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockTag {
    /// ℤ̃[X^arity] in the bar column of a canonical resolution.
    Bar(u8),
    /// The generator cell attached to the degree-1 term (ℤ̃[A] or ℤ̃[A×A]).
    Gen(u8),
    /// Tensor of two labeled summands.
    Pair(Box<BlockTag>, Box<BlockTag>),
    /// No particular structure.
    Plain,
}

/// One tensor factor of a summand basis: the free module on the product of
/// `sets`, reduced (basis = nonzero tuples) or not. An empty `sets` list with
/// `reduced = false` is the rank-one module ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFactor {
    pub sets: Vec<FgAbGroup>,
    pub reduced: bool,
}

impl BasisFactor {
    pub fn reduced(sets: Vec<FgAbGroup>) -> Self {
        BasisFactor {
            sets,
            reduced: true,
        }
    }

    pub fn unit() -> Self {
        BasisFactor {
            sets: vec![],
            reduced: false,
        }
    }

    pub fn rank(&self) -> usize {
        let mut total: usize = 1;
        for s in &self.sets {
            let o = s.order().expect("basis sets are finite");
            total *= u64::try_from(o.clone()).expect("basis set order fits u64") as usize;
        }
        total - usize::from(self.reduced)
    }

    /// Basis index of a tuple, or `None` when the tuple is the excluded zero
    /// tuple of a reduced factor.
    pub fn index_of(&self, tuple: &[crate::abgroup::GroupElement]) -> Option<usize> {
        assert_eq!(tuple.len(), self.sets.len());
        let mut idx: usize = 0;
        for (e, s) in tuple.iter().zip(self.sets.iter()) {
            let radix = u64::try_from(s.order().expect("finite")).unwrap() as usize;
            idx = idx * radix + s.element_index(e) as usize;
        }
        if self.reduced {
            idx.checked_sub(1)
        } else {
            Some(idx)
        }
    }

    pub fn tuple_at(&self, idx: usize) -> Vec<crate::abgroup::GroupElement> {
        let mut rem = idx + usize::from(self.reduced);
        let mut radices = Vec::new();
        for s in &self.sets {
            radices.push(u64::try_from(s.order().expect("finite")).unwrap() as usize);
        }
        let mut out = vec![crate::abgroup::FgAbGroup::zero().zero_element(); self.sets.len()];
        for pos in (0..self.sets.len()).rev() {
            let r = radices[pos];
            let e = self.sets[pos]
                .enumerate_elements()
                .expect("finite")[rem % r]
                .clone();
            out[pos] = e;
            rem /= r;
        }
        debug_assert_eq!(rem, 0);
        out
    }
}

/// A labeled summand of one cell: its slice of the cell coordinates and the
/// tensor factors whose basis products index it (left factor major).
#[derive(Clone, Debug)]
pub struct Summand {
    pub offset: usize,
    pub ngens: usize,
    pub factors: Vec<BasisFactor>,
    pub tag: BlockTag,
}

impl Summand {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).product()
    }
}

#[derive(Clone)]
pub struct Bicomplex {
    cells: BTreeMap<(i64, i64), FgAbGroup>,
    horiz: BTreeMap<(i64, i64), GroupHom>,
    vert: BTreeMap<(i64, i64), GroupHom>,
    summands: BTreeMap<(i64, i64), Vec<Summand>>,
}

/// Per-square and per-line verification of the bicomplex axioms, computed
/// rather than assumed so negative controls report failures.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    /// (cell, holds): D∘D = 0 starting at cell.
    pub rows_compose_zero: Vec<((i64, i64), bool)>,
    /// (cell, holds): d∘d = 0 starting at cell.
    pub cols_compose_zero: Vec<((i64, i64), bool)>,
    /// (cell, holds): D∘d + d∘D = 0 on the square whose top-right corner is cell.
    pub squares_anticommute: Vec<((i64, i64), bool)>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.rows_compose_zero.iter().all(|x| x.1)
            && self.cols_compose_zero.iter().all(|x| x.1)
            && self.squares_anticommute.iter().all(|x| x.1)
    }
}

impl Bicomplex {
    /// Validating constructor: rows and columns must be complexes and all
    /// squares must anticommute.
    pub fn new(
        cells: BTreeMap<(i64, i64), FgAbGroup>,
        horiz: BTreeMap<(i64, i64), GroupHom>,
        vert: BTreeMap<(i64, i64), GroupHom>,
    ) -> Result<Self, Error> {
        let b = Bicomplex::new_unchecked(cells, horiz, vert);
        let report = b.check_conditions();
        if !report.all_pass() {
            return Err(Error::BicomplexInvalid(format!("{report:?}")));
        }
        Ok(b)
    }

    /// No validation; used to build deliberate negative controls.
    pub fn new_unchecked(
        cells: BTreeMap<(i64, i64), FgAbGroup>,
        horiz: BTreeMap<(i64, i64), GroupHom>,
        vert: BTreeMap<(i64, i64), GroupHom>,
    ) -> Self {
        let cells: BTreeMap<(i64, i64), FgAbGroup> =
            cells.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        let summands = cells
            .iter()
            .map(|(&pos, g)| {
                (
                    pos,
                    vec![Summand {
                        offset: 0,
                        ngens: g.ngens(),
                        factors: vec![],
                        tag: BlockTag::Plain,
                    }],
                )
            })
            .collect();
        Bicomplex {
            cells,
            horiz,
            vert,
            summands,
        }
    }

    pub fn with_summands(mut self, pos: (i64, i64), s: Vec<Summand>) -> Self {
        self.summands.insert(pos, s);
        self
    }

    pub fn cell(&self, i: i64, j: i64) -> FgAbGroup {
        self.cells.get(&(i, j)).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.keys().copied()
    }

    pub fn summands_at(&self, pos: (i64, i64)) -> Vec<Summand> {
        self.summands.get(&pos).cloned().unwrap_or_default()
    }

    /// Horizontal differential out of (i, j), i.e. into (i−1, j).
    pub fn horiz_from(&self, i: i64, j: i64) -> GroupHom {
        self.horiz
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| GroupHom::zero(self.cell(i, j), self.cell(i - 1, j)))
    }

    /// Vertical differential out of (i, j), i.e. into (i, j−1).
    pub fn vert_from(&self, i: i64, j: i64) -> GroupHom {
        self.vert
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| GroupHom::zero(self.cell(i, j), self.cell(i, j - 1)))
    }

    pub fn check_conditions(&self) -> ConditionReport {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut squares = Vec::new();
        for &(i, j) in self.cells.keys() {
            if !self.cell(i - 1, j).is_zero() && !self.cell(i - 2, j).is_zero() {
                let c = self.horiz_from(i - 1, j).compose(&self.horiz_from(i, j));
                rows.push(((i, j), c.is_zero_hom()));
            }
            if !self.cell(i, j - 1).is_zero() && !self.cell(i, j - 2).is_zero() {
                let c = self.vert_from(i, j - 1).compose(&self.vert_from(i, j));
                cols.push(((i, j), c.is_zero_hom()));
            }
            if !self.cell(i - 1, j - 1).is_zero() {
                let a = self.vert_from(i - 1, j).compose(&self.horiz_from(i, j));
                let b = self.horiz_from(i, j - 1).compose(&self.vert_from(i, j));
                squares.push(((i, j), a.add(&b).is_zero_hom()));
            }
        }
        ConditionReport {
            rows_compose_zero: rows,
            cols_compose_zero: cols,
            squares_anticommute: squares,
        }
    }

    /// Exactness of the row through (i, j) at that cell: ker(D out of (i,j))
    /// equals im(D out of (i+1,j)).
    pub fn row_exact_at(&self, i: i64, j: i64) -> bool {
        let d_out = self.horiz_from(i, j);
        let d_in = self.horiz_from(i + 1, j);
        raw_homology(
            d_out.matrix(),
            d_in.matrix(),
            &self.cell(i - 1, j).orders(),
            &self.cell(i, j).orders(),
        )
        .group()
        .is_zero()
    }

    /// Exactness of the column through (i, j) at that cell.
    pub fn col_exact_at(&self, i: i64, j: i64) -> bool {
        let d_out = self.vert_from(i, j);
        let d_in = self.vert_from(i, j + 1);
        raw_homology(
            d_out.matrix(),
            d_in.matrix(),
            &self.cell(i, j - 1).orders(),
            &self.cell(i, j).orders(),
        )
        .group()
        .is_zero()
    }

    /// Assemble the total complex. Within a total degree, cells are ordered by
    /// descending i, and each block records its grid position, its labeled
    /// summands and the injection/projection into the (normalized) sum.
    pub fn total(&self) -> Result<TotalComplex, Error> {
        if self.cells.is_empty() {
            return Ok(TotalComplex {
                complex: ChainComplex::zero(),
                blocks: BTreeMap::new(),
            });
        }
        let min_n = self.cells.keys().map(|&(i, j)| i + j).min().unwrap();
        let max_n = self.cells.keys().map(|&(i, j)| i + j).max().unwrap();
        let mut blocks: BTreeMap<i64, Vec<TotBlock>> = BTreeMap::new();
        let mut components: Vec<FgAbGroup> = Vec::new();
        for n in min_n..=max_n {
            let mut positions: Vec<(i64, i64)> = self
                .cells
                .keys()
                .copied()
                .filter(|&(i, j)| i + j == n)
                .collect();
            positions.sort_by_key(|&(i, j)| (-i, j));
            let groups: Vec<FgAbGroup> = positions.iter().map(|&(i, j)| self.cell(i, j)).collect();
            let ds = direct_sum(&groups);
            let mut level = Vec::new();
            for (idx, &(i, j)) in positions.iter().enumerate() {
                level.push(TotBlock {
                    i,
                    j,
                    cell: groups[idx].clone(),
                    inject: ds.injections[idx].clone(),
                    project: ds.projections[idx].clone(),
                    summands: self.summands_at((i, j)),
                });
            }
            blocks.insert(n, level);
            components.push(ds.group);
        }
        let mut diffs = Vec::new();
        for n in min_n + 1..=max_n {
            let src = components[(n - min_n) as usize].clone();
            let tgt = components[(n - 1 - min_n) as usize].clone();
            let mut acc = GroupHom::zero(src.clone(), tgt.clone());
            let tgt_blocks: BTreeMap<(i64, i64), &TotBlock> = blocks[&(n - 1)]
                .iter()
                .map(|b| ((b.i, b.j), b))
                .collect();
            for b in &blocks[&n] {
                if let Some(t) = tgt_blocks.get(&(b.i - 1, b.j)) {
                    let piece = t
                        .inject
                        .compose(&self.horiz_from(b.i, b.j))
                        .compose(&b.project);
                    acc = acc.add(&piece);
                }
                if let Some(t) = tgt_blocks.get(&(b.i, b.j - 1)) {
                    let piece = t
                        .inject
                        .compose(&self.vert_from(b.i, b.j))
                        .compose(&b.project);
                    acc = acc.add(&piece);
                }
            }
            diffs.push(acc);
        }
        let complex = ChainComplex::new(min_n, components, diffs)
            .map_err(|e| Error::BicomplexInvalid(format!("total differential: {e}")))?;
        Ok(TotalComplex { complex, blocks })
    }
}

/// A block of a total complex: one bicomplex cell with its grid position and
/// the maps in and out of the assembled degree component.
#[derive(Clone)]
pub struct TotBlock {
    pub i: i64,
    pub j: i64,
    pub cell: FgAbGroup,
    pub inject: GroupHom,
    pub project: GroupHom,
    pub summands: Vec<Summand>,
}

#[derive(Clone)]
pub struct TotalComplex {
    complex: ChainComplex,
    blocks: BTreeMap<i64, Vec<TotBlock>>,
}

impl TotalComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn blocks(&self, n: i64) -> &[TotBlock] {
        self.blocks.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Blocks of degree `n` sitting at grid column `i`.
    pub fn blocks_at(&self, n: i64, i: i64) -> Vec<&TotBlock> {
        self.blocks(n).iter().filter(|b| b.i == i).collect()
    }

    /// The truncation keeping total degrees 0..=n_max, with block labels.
    pub fn truncated(&self, n_max: i64) -> TotalComplex {
        TotalComplex {
            complex: self.complex.truncate_keep(n_max),
            blocks: self
                .blocks
                .iter()
                .filter(|(&n, _)| (0..=n_max).contains(&n))
                .map(|(&n, v)| (n, v.clone()))
                .collect(),
        }
    }
}

/// The tensor bicomplex of two chain complexes: cell (i, j) = P_i ⊗ Q_j,
/// horizontal d^P ⊗ id, vertical (−1)^i · id ⊗ d^Q.
pub struct TensorBicomplex {
    pub bicomplex: Bicomplex,
    /// Tensor presentations per cell, for pure-tensor bookkeeping.
    pub cells: BTreeMap<(i64, i64), TensorGroup>,
}

pub fn tensor_complexes(p: &ChainComplex, q: &ChainComplex) -> TensorBicomplex {
    let mut tg: BTreeMap<(i64, i64), TensorGroup> = BTreeMap::new();
    let mut cells = BTreeMap::new();
    if !p.is_empty() && !q.is_empty() {
        for i in p.support() {
            for j in q.support() {
                let t = tensor_group(&p.component(i), &q.component(j));
                if !t.group().is_zero() {
                    cells.insert((i, j), t.group().clone());
                }
                tg.insert((i, j), t);
            }
        }
    }
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(i, j), src) in &tg {
        if src.group().is_zero() {
            continue;
        }
        if let Some(dst) = tg.get(&(i - 1, j)) {
            if !dst.group().is_zero() {
                let h = tensor_hom(
                    &p.differential(i),
                    &GroupHom::identity(&q.component(j)),
                    src,
                    dst,
                );
                horiz.insert((i, j), h);
            }
        }
        if let Some(dst) = tg.get(&(i, j - 1)) {
            if !dst.group().is_zero() {
                let sign = if i.rem_euclid(2) == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                let v = tensor_hom(
                    &GroupHom::identity(&p.component(i)),
                    &q.differential(j),
                    src,
                    dst,
                )
                .scale(&sign);
                vert.insert((i, j), v);
            }
        }
    }
    let bicomplex =
        Bicomplex::new(cells, horiz, vert).expect("tensor bicomplex squares anticommute");
    TensorBicomplex {
        bicomplex,
        cells: tg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::TwoTermComplex;
    use crate::matrix::Matrix;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn one_column_total_is_the_column() {
        // cells (0,0) = Z/4, (0,1) = Z/4, vertical = *2
        let two = GroupHom::new(z(4), z(4), Matrix::from_rows(&[&[2]])).unwrap();
        let cells = BTreeMap::from([((0, 0), z(4)), ((0, 1), z(4))]);
        let vert = BTreeMap::from([((0, 1), two.clone())]);
        let b = Bicomplex::new(cells, BTreeMap::new(), vert).unwrap();
        let t = b.total().unwrap();
        assert_eq!(t.complex().component(0), z(4));
        assert_eq!(t.complex().component(1), z(4));
        assert_eq!(t.complex().homology(0), z(2));
        assert_eq!(t.complex().homology(1), z(2));
    }

    #[test]
    fn tensor_unit_is_identity_row() {
        // P ⊗ (Z in degree 0) = P as a one-row bicomplex
        let p = TwoTermComplex::new(
            GroupHom::new(z(4), z(4), Matrix::from_rows(&[&[2]])).unwrap(),
        )
        .to_complex();
        let unit = ChainComplex::concentrated(FgAbGroup::z(), 0);
        let t = tensor_complexes(&p, &unit);
        assert_eq!(t.bicomplex.cell(0, 0), z(4));
        assert_eq!(t.bicomplex.cell(1, 0), z(4));
        assert!(t.bicomplex.cell(0, 1).is_zero());
        let tot = t.bicomplex.total().unwrap();
        for n in 0..2 {
            assert_eq!(tot.complex().homology(n), p.homology(n));
        }
    }

    #[test]
    fn tensor_grid_symmetry() {
        let p = TwoTermComplex::new(
            GroupHom::new(z(4), z(2), Matrix::from_rows(&[&[1]])).unwrap(),
        )
        .to_complex();
        let q = TwoTermComplex::new(
            GroupHom::new(z(2), z(6), Matrix::from_rows(&[&[3]])).unwrap(),
        )
        .to_complex();
        let pq = tensor_complexes(&p, &q);
        let qp = tensor_complexes(&q, &p);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    pq.bicomplex.cell(i, j),
                    qp.bicomplex.cell(j, i),
                    "(P⊗Q)_({i},{j}) vs (Q⊗P)_({j},{i})"
                );
            }
        }
    }

    #[test]
    fn sign_flip_is_reported() {
        // Build a 2x2 anticommuting square, then flip one sign and watch the
        // report fail.
        let zz = FgAbGroup::z();
        let id = GroupHom::identity(&zz);
        let cells = BTreeMap::from([
            ((0, 0), zz.clone()),
            ((0, 1), zz.clone()),
            ((1, 0), zz.clone()),
            ((1, 1), zz.clone()),
        ]);
        let neg = id.scale(&BigInt::from(-1));
        let horiz = BTreeMap::from([((1, 0), id.clone()), ((1, 1), id.clone())]);
        let vert_good = BTreeMap::from([((0, 1), id.clone()), ((1, 1), neg.clone())]);
        let good = Bicomplex::new(cells.clone(), horiz.clone(), vert_good).unwrap();
        assert!(good.check_conditions().all_pass());
        let vert_bad = BTreeMap::from([((0, 1), id.clone()), ((1, 1), id.clone())]);
        let bad = Bicomplex::new_unchecked(cells, horiz, vert_bad);
        let rep = bad.check_conditions();
        assert!(!rep.all_pass());
        assert!(rep.squares_anticommute.iter().any(|&(_, ok)| !ok));
        // total() must refuse the broken square
        assert!(bad.total().is_err());
    }

    #[test]
    fn totals_additive_under_direct_sum() {
        // Tot(L ⊕ L') degreewise isomorphic to Tot(L) ⊕ Tot(L')
        let p = TwoTermComplex::from_group(z(2)).to_complex();
        let q = TwoTermComplex::from_group(z(3)).to_complex();
        let t1 = tensor_complexes(&p, &p).bicomplex.total().unwrap();
        let t2 = tensor_complexes(&q, &p).bicomplex.total().unwrap();
        let both = crate::complex::direct_sum_complexes(&p, &q);
        let t = tensor_complexes(&both, &p).bicomplex.total().unwrap();
        for n in 0..3 {
            let lhs = t.complex().component(n);
            let rhs = direct_sum(&[
                t1.complex().component(n),
                t2.complex().component(n),
            ])
            .group;
            assert_eq!(lhs, rhs, "degree {n}");
        }
    }
}
