//! The canonical flat partial resolution of a two-term complex, tensor
//! resolutions, augmentations, and the named row/square condition checks.
//!
//! Cells are reduced free modules ℤ̃[X] = ℤ[X]/ℤ·[0] on products of finite
//! groups, with the bar-style differentials evaluated on basis labels (terms
//! hitting the zero tuple drop out). On top of the paper's cells ℤ̃[B],
//! ℤ̃[B×B], ℤ̃[B×B]⊕ℤ̃[B×B×B], ℤ̃[A], the resolution carries the relation
//! cell ℤ̃[A×A] at position (1,1); without it the total complex picks up a
//! free summand in degree one and the partial-resolution property
//! H_i(Tot) ≅ H_i(K) (i = 0, 1) fails over ℤ. With it, the property holds on
//! the nose and is verified corpus-wide by the acceptance suite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::{FgAbGroup, GroupElement, GroupHom};
use crate::bicomplex::{BasisFactor, Bicomplex, BlockTag, Summand};
use crate::complex::{ChainMap, TwoTermComplex};
use crate::matrix::Matrix;
use crate::subquotient::raw_homology;
use crate::Error;

/// A formal integer combination of basis tuples.
type Term = (i64, Vec<GroupElement>);

/// Matrix of a formula `tuple ↦ Σ c · [tuple']` from a single-factor summand
/// into a single-factor target.
fn formula_matrix(
    src: &BasisFactor,
    tgt: &BasisFactor,
    f: impl Fn(&[GroupElement]) -> Vec<Term>,
) -> Matrix {
    let mut m = Matrix::zeros(tgt.rank(), src.rank());
    for col in 0..src.rank() {
        let tuple = src.tuple_at(col);
        for (coeff, image) in f(&tuple) {
            if let Some(row) = tgt.index_of(&image) {
                let v = m.get(row, col) + BigInt::from(coeff);
                m.set(row, col, v);
            }
        }
    }
    m
}

fn free_hom(src_rank: usize, tgt_rank: usize, m: Matrix) -> GroupHom {
    GroupHom::new(FgAbGroup::free(src_rank), FgAbGroup::free(tgt_rank), m)
        .expect("maps between free modules are always well defined")
}

/// The canonical flat partial resolution, augmented over K.
pub struct AugmentedResolution {
    pub k: TwoTermComplex,
    pub bicomplex: Bicomplex,
    /// ε₀ : cell(0,0) → B (basis label [b] ↦ b).
    pub eps0: GroupHom,
    /// ε₁ : cell(1,0) → A.
    pub eps1: GroupHom,
}

fn guard_finite_order(g: &FgAbGroup, limit: u64) -> Result<u64, Error> {
    let o = g.order().ok_or(Error::InfiniteGroup)?;
    let o: u64 = u64::try_from(o).map_err(|_| Error::SizeGuardExceeded {
        actual: u64::MAX,
        limit,
    })?;
    if o > limit {
        return Err(Error::SizeGuardExceeded { actual: o, limit });
    }
    Ok(o)
}

/// Matrix of the augmentation ℤ̃[X] → X, [x] ↦ x.
fn augmentation_matrix(factor: &BasisFactor, target: &FgAbGroup) -> Matrix {
    let mut m = Matrix::zeros(target.ngens(), factor.rank());
    for col in 0..factor.rank() {
        let t = factor.tuple_at(col);
        assert_eq!(t.len(), 1);
        for (r, c) in t[0].coords().iter().enumerate() {
            m.set(r, col, c.clone());
        }
    }
    m
}

/// Build the canonical flat partial resolution of K = [A → B]. Both groups
/// must be finite; `max_order` bounds |A| and |B| (hard error, never a silent
/// truncation).
pub fn canonical_resolution(
    k: &TwoTermComplex,
    max_order: u64,
) -> Result<AugmentedResolution, Error> {
    let a = k.a().clone();
    let b = k.b().clone();
    guard_finite_order(&b, max_order)?;
    guard_finite_order(&a, max_order)?;
    let u = k.u().clone();

    let f_b = BasisFactor::reduced(vec![b.clone()]);
    let f_bb = BasisFactor::reduced(vec![b.clone(), b.clone()]);
    let f_bbb = BasisFactor::reduced(vec![b.clone(), b.clone(), b.clone()]);
    let f_a = BasisFactor::reduced(vec![a.clone()]);
    let f_aa = BasisFactor::reduced(vec![a.clone(), a.clone()]);

    let mut cells = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    let mut summands: Vec<((i64, i64), Vec<Summand>)> = Vec::new();

    let single = |f: &BasisFactor, tag: BlockTag| -> Vec<Summand> {
        vec![Summand {
            offset: 0,
            ngens: f.rank(),
            factors: vec![f.clone()],
            tag,
        }]
    };

    if f_b.rank() > 0 {
        cells.insert((0, 0), FgAbGroup::free(f_b.rank()));
        summands.push(((0, 0), single(&f_b, BlockTag::Bar(1))));
    }
    if f_bb.rank() > 0 {
        cells.insert((0, 1), FgAbGroup::free(f_bb.rank()));
        summands.push(((0, 1), single(&f_bb, BlockTag::Bar(2))));
        // d00 [b1,b2] = [b1+b2] - [b1] - [b2]
        let m = formula_matrix(&f_bb, &f_b, |t| {
            vec![
                (1, vec![t[0].add(&t[1])]),
                (-1, vec![t[0].clone()]),
                (-1, vec![t[1].clone()]),
            ]
        });
        vert.insert((0, 1), free_hom(f_bb.rank(), f_b.rank(), m));

        // L02 = Z~[BxB] (swap relations) + Z~[BxBxB] (associativity)
        let swap = formula_matrix(&f_bb, &f_bb, |t| {
            vec![
                (1, vec![t[0].clone(), t[1].clone()]),
                (-1, vec![t[1].clone(), t[0].clone()]),
            ]
        });
        let assoc = formula_matrix(&f_bbb, &f_bb, |t| {
            vec![
                (1, vec![t[0].add(&t[1]), t[2].clone()]),
                (-1, vec![t[0].clone(), t[1].add(&t[2])]),
                (1, vec![t[0].clone(), t[1].clone()]),
                (-1, vec![t[1].clone(), t[2].clone()]),
            ]
        });
        let rank02 = f_bb.rank() + f_bbb.rank();
        cells.insert((0, 2), FgAbGroup::free(rank02));
        summands.push((
            (0, 2),
            vec![
                Summand {
                    offset: 0,
                    ngens: f_bb.rank(),
                    factors: vec![f_bb.clone()],
                    tag: BlockTag::Bar(2),
                },
                Summand {
                    offset: f_bb.rank(),
                    ngens: f_bbb.rank(),
                    factors: vec![f_bbb.clone()],
                    tag: BlockTag::Bar(3),
                },
            ],
        ));
        vert.insert(
            (0, 2),
            free_hom(rank02, f_bb.rank(), swap.hstack(&assoc)),
        );
    }
    if f_a.rank() > 0 {
        cells.insert((1, 0), FgAbGroup::free(f_a.rank()));
        summands.push(((1, 0), single(&f_a, BlockTag::Gen(1))));
        if f_b.rank() > 0 {
            // D00 [a] = [u(a)]
            let m = formula_matrix(&f_a, &f_b, |t| vec![(1, vec![u.apply(&t[0])])]);
            horiz.insert((1, 0), free_hom(f_a.rank(), f_b.rank(), m));
        }
        if f_aa.rank() > 0 {
            cells.insert((1, 1), FgAbGroup::free(f_aa.rank()));
            summands.push(((1, 1), single(&f_aa, BlockTag::Gen(2))));
            // d10 [a1,a2] = [a1+a2] - [a1] - [a2]
            let m = formula_matrix(&f_aa, &f_a, |t| {
                vec![
                    (1, vec![t[0].add(&t[1])]),
                    (-1, vec![t[0].clone()]),
                    (-1, vec![t[1].clone()]),
                ]
            });
            vert.insert((1, 1), free_hom(f_aa.rank(), f_a.rank(), m));
            if f_bb.rank() > 0 {
                // D01 [a1,a2] = -[u a1, u a2], the sign making the square anticommute
                let m = formula_matrix(&f_aa, &f_bb, |t| {
                    vec![(-1, vec![u.apply(&t[0]), u.apply(&t[1])])]
                });
                horiz.insert((1, 1), free_hom(f_aa.rank(), f_bb.rank(), m));
            }
        }
    }

    let mut bic = Bicomplex::new(cells, horiz, vert)?;
    for (pos, s) in summands {
        bic = bic.with_summands(pos, s);
    }
    let eps0 = GroupHom::new(
        bic.cell(0, 0),
        b.clone(),
        if f_b.rank() > 0 {
            augmentation_matrix(&f_b, &b)
        } else {
            Matrix::zeros(b.ngens(), 0)
        },
    )
    .expect("augmentation eps0");
    let eps1 = GroupHom::new(
        bic.cell(1, 0),
        a.clone(),
        if f_a.rank() > 0 {
            augmentation_matrix(&f_a, &a)
        } else {
            Matrix::zeros(a.ngens(), 0)
        },
    )
    .expect("augmentation eps1");
    Ok(AugmentedResolution {
        k: k.clone(),
        bicomplex: bic,
        eps0,
        eps1,
    })
}

/// Is K of the shape [0 → ℤ] (the unit for the derived tensor)?
pub fn is_unit_degree0(k: &TwoTermComplex) -> bool {
    k.a().is_zero() && k.b() == &FgAbGroup::z()
}

/// Is K of the shape [ℤ → 0]?
pub fn is_unit_degree1(k: &TwoTermComplex) -> bool {
    k.b().is_zero() && k.a() == &FgAbGroup::z()
}

/// A flat resolution bicomplex for K: the canonical one for finite K, or K
/// itself (already a complex of frees, placed at column 0 or 1) for the free
/// unit shapes [0 → ℤ] and [ℤ → 0].
pub fn flat_resolution(k: &TwoTermComplex, max_order: u64) -> Result<Bicomplex, Error> {
    if is_unit_degree0(k) {
        let cells = BTreeMap::from([((0, 0), FgAbGroup::z())]);
        let bic = Bicomplex::new(cells, BTreeMap::new(), BTreeMap::new())?;
        return Ok(bic.with_summands(
            (0, 0),
            vec![Summand {
                offset: 0,
                ngens: 1,
                factors: vec![BasisFactor::unit()],
                tag: BlockTag::Bar(1),
            }],
        ));
    }
    if is_unit_degree1(k) {
        let cells = BTreeMap::from([((1, 0), FgAbGroup::z())]);
        let bic = Bicomplex::new(cells, BTreeMap::new(), BTreeMap::new())?;
        return Ok(bic.with_summands(
            (1, 0),
            vec![Summand {
                offset: 0,
                ngens: 1,
                factors: vec![BasisFactor::unit()],
                tag: BlockTag::Gen(1),
            }],
        ));
    }
    Ok(canonical_resolution(k, max_order)?.bicomplex)
}

/// Tensor of two labeled free bicomplexes on the (i₁+i₂, j₁+j₂) grid, with
/// Koszul signs (−1)^{i₁+j₁} on the right-hand differentials and pair labels
/// on every summand.
pub fn tensor_resolutions(l1: &Bicomplex, l2: &Bicomplex) -> Result<Bicomplex, Error> {
    tensor_resolutions_truncated(l1, l2, None)
}

/// As `tensor_resolutions`, but cells of total degree above `truncate_above`
/// are not built. Degrees 0..2 carry everything the Ψ machinery and the
/// homology comparisons in degrees 0 and 1 use.
pub fn tensor_resolutions_truncated(
    l1: &Bicomplex,
    l2: &Bicomplex,
    truncate_above: Option<i64>,
) -> Result<Bicomplex, Error> {
    struct PairBlock {
        pos1: (i64, i64),
        s1: Summand,
        pos2: (i64, i64),
        s2: Summand,
        offset: usize,
        rank: usize,
    }
    let mut cells: BTreeMap<(i64, i64), Vec<PairBlock>> = BTreeMap::new();
    for p1 in l1.positions() {
        for p2 in l2.positions() {
            let out = (p1.0 + p2.0, p1.1 + p2.1);
            if let Some(cap) = truncate_above {
                if out.0 + out.1 > cap {
                    continue;
                }
            }
            for s1 in l1.summands_at(p1) {
                for s2 in l2.summands_at(p2) {
                    let rank = s1.ngens * s2.ngens;
                    if rank == 0 {
                        continue;
                    }
                    cells.entry(out).or_default().push(PairBlock {
                        pos1: p1,
                        s1: s1.clone(),
                        pos2: p2,
                        s2,
                        offset: 0,
                        rank,
                    });
                }
            }
        }
    }
    // deterministic order and offsets inside each output cell
    for blocks in cells.values_mut() {
        blocks.sort_by_key(|b| (b.pos1, b.s1.offset, b.pos2, b.s2.offset));
        let mut off = 0;
        for b in blocks.iter_mut() {
            b.offset = off;
            off += b.rank;
        }
    }
    let cell_group = |blocks: &Vec<PairBlock>| {
        FgAbGroup::free(blocks.iter().map(|b| b.rank).sum::<usize>())
    };
    let mut out_cells = BTreeMap::new();
    let mut out_summands = BTreeMap::new();
    for (&pos, blocks) in &cells {
        out_cells.insert(pos, cell_group(blocks));
        let s: Vec<Summand> = blocks
            .iter()
            .map(|b| {
                let mut factors = b.s1.factors.clone();
                factors.extend(b.s2.factors.clone());
                Summand {
                    offset: b.offset,
                    ngens: b.rank,
                    factors,
                    tag: BlockTag::Pair(
                        alloc::boxed::Box::new(b.s1.tag.clone()),
                        alloc::boxed::Box::new(b.s2.tag.clone()),
                    ),
                }
            })
            .collect();
        out_summands.insert(pos, s);
    }

    // Differentials: left factor acts plainly, right factor with the Koszul
    // sign of the left block's total degree.
    let mut horiz: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
    let mut vert: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
    for (&pos, blocks) in &cells {
        for (dir, store) in [(true, &mut horiz), (false, &mut vert)] {
            let tgt_pos = if dir {
                (pos.0 - 1, pos.1)
            } else {
                (pos.0, pos.1 - 1)
            };
            let Some(tgt_blocks) = cells.get(&tgt_pos) else {
                continue;
            };
            let rows = tgt_blocks.iter().map(|b| b.rank).sum::<usize>();
            let cols = blocks.iter().map(|b| b.rank).sum::<usize>();
            let mut m = Matrix::zeros(rows, cols);
            for src in blocks {
                // left-factor differential
                let d1 = if dir {
                    l1.horiz_from(src.pos1.0, src.pos1.1)
                } else {
                    l1.vert_from(src.pos1.0, src.pos1.1)
                };
                let d1_tgt_pos = if dir {
                    (src.pos1.0 - 1, src.pos1.1)
                } else {
                    (src.pos1.0, src.pos1.1 - 1)
                };
                for tgt in tgt_blocks.iter().filter(|t| {
                    t.pos1 == d1_tgt_pos
                        && t.pos2 == src.pos2
                        && t.s2.offset == src.s2.offset
                }) {
                    let block = d1.matrix().submatrix(
                        tgt.s1.offset,
                        src.s1.offset,
                        tgt.s1.ngens,
                        src.s1.ngens,
                    );
                    // block ⊗ id on the right factor
                    for r in 0..tgt.s1.ngens {
                        for c in 0..src.s1.ngens {
                            let v = block.get(r, c);
                            if v.is_zero() {
                                continue;
                            }
                            for y in 0..src.s2.ngens {
                                let rr = tgt.offset + r * src.s2.ngens + y;
                                let cc = src.offset + c * src.s2.ngens + y;
                                let nv = m.get(rr, cc) + v;
                                m.set(rr, cc, nv);
                            }
                        }
                    }
                }
                // right-factor differential with the Koszul sign
                let sign = if (src.pos1.0 + src.pos1.1).rem_euclid(2) == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                let d2 = if dir {
                    l2.horiz_from(src.pos2.0, src.pos2.1)
                } else {
                    l2.vert_from(src.pos2.0, src.pos2.1)
                };
                let d2_tgt_pos = if dir {
                    (src.pos2.0 - 1, src.pos2.1)
                } else {
                    (src.pos2.0, src.pos2.1 - 1)
                };
                for tgt in tgt_blocks.iter().filter(|t| {
                    t.pos2 == d2_tgt_pos
                        && t.pos1 == src.pos1
                        && t.s1.offset == src.s1.offset
                }) {
                    let block = d2.matrix().submatrix(
                        tgt.s2.offset,
                        src.s2.offset,
                        tgt.s2.ngens,
                        src.s2.ngens,
                    );
                    for x in 0..src.s1.ngens {
                        for r in 0..tgt.s2.ngens {
                            for c in 0..src.s2.ngens {
                                let v = block.get(r, c);
                                if v.is_zero() {
                                    continue;
                                }
                                let rr = tgt.offset + x * tgt.s2.ngens + r;
                                let cc = src.offset + x * src.s2.ngens + c;
                                let nv = m.get(rr, cc) + &sign * v;
                                m.set(rr, cc, nv);
                            }
                        }
                    }
                }
            }
            if !m.is_zero() {
                store.insert(pos, m);
            }
        }
    }
    let homify = |store: BTreeMap<(i64, i64), Matrix>, dir: bool| -> BTreeMap<(i64, i64), GroupHom> {
        store
            .into_iter()
            .map(|(pos, m)| {
                let tgt_pos = if dir {
                    (pos.0 - 1, pos.1)
                } else {
                    (pos.0, pos.1 - 1)
                };
                let src = cell_group(&cells[&pos]);
                let tgt = cell_group(&cells[&tgt_pos]);
                (pos, GroupHom::new(src, tgt, m).expect("free cells"))
            })
            .collect()
    };
    let horiz = homify(horiz, true);
    let vert = homify(vert, false);
    let mut bic = Bicomplex::new(out_cells, horiz, vert)?;
    for (pos, s) in out_summands {
        bic = bic.with_summands(pos, s);
    }
    Ok(bic)
}

/// L..(K₁, K₂): tensor of the flat resolutions of the two factors, with the
/// size guard |B₁|·|B₂| ≤ max_order (free unit factors are exempt).
pub fn tensor_resolution(
    k1: &TwoTermComplex,
    k2: &TwoTermComplex,
    max_order: u64,
) -> Result<Bicomplex, Error> {
    if !(is_unit_degree0(k1) || is_unit_degree1(k1))
        && !(is_unit_degree0(k2) || is_unit_degree1(k2))
    {
        let b1 = k1.b().order().ok_or(Error::InfiniteGroup)?;
        let b2 = k2.b().order().ok_or(Error::InfiniteGroup)?;
        let prod = u64::try_from(b1 * b2).map_err(|_| Error::SizeGuardExceeded {
            actual: u64::MAX,
            limit: max_order,
        })?;
        if prod > max_order {
            return Err(Error::SizeGuardExceeded {
                actual: prod,
                limit: max_order,
            });
        }
    }
    let l1 = flat_resolution(k1, max_order)?;
    let l2 = flat_resolution(k2, max_order)?;
    tensor_resolutions_truncated(&l1, &l2, Some(2))
}

/// The augmentation ε : Tot(L..(K)) → K as a chain map.
pub fn augmentation_chain_map(res: &AugmentedResolution) -> Result<ChainMap, Error> {
    let tot = res.bicomplex.total()?;
    let kc = res.k.to_complex();
    let mut comps = BTreeMap::new();
    for b in tot.blocks(0) {
        if (b.i, b.j) == (0, 0) {
            comps.insert(0, res.eps0.compose(&b.project));
        }
    }
    for b in tot.blocks(1) {
        if (b.i, b.j) == (1, 0) {
            comps.insert(1, res.eps1.compose(&b.project));
        }
    }
    ChainMap::new(tot.complex().clone(), kc, comps)
}

/// Verdict of the partial-resolution check for one K.
#[derive(Clone, Debug)]
pub struct PartialResolutionReport {
    pub h0_resolution: FgAbGroup,
    pub h1_resolution: FgAbGroup,
    pub h0_complex: FgAbGroup,
    pub h1_complex: FgAbGroup,
    pub eps_iso_degree0: bool,
    pub eps_iso_degree1: bool,
}

impl PartialResolutionReport {
    pub fn passes(&self) -> bool {
        self.h0_resolution == self.h0_complex
            && self.h1_resolution == self.h1_complex
            && self.eps_iso_degree0
            && self.eps_iso_degree1
    }
}

/// Compare H_i(Tot(L..(K))) with H_i(K) for i = 0, 1 and verify that the
/// comparison is induced by the augmentation.
pub fn check_partial_resolution(
    k: &TwoTermComplex,
    max_order: u64,
) -> Result<PartialResolutionReport, Error> {
    let res = canonical_resolution(k, max_order)?;
    let eps = augmentation_chain_map(&res)?;
    let tot = eps.source().clone();
    let report = PartialResolutionReport {
        h0_resolution: tot.homology(0),
        h1_resolution: tot.homology(1),
        h0_complex: k.h0(),
        h1_complex: k.h1(),
        eps_iso_degree0: eps.induced_on_homology(0).is_isomorphism(),
        eps_iso_degree1: eps.induced_on_homology(1).is_isomorphism(),
    };
    Ok(report)
}

/// The induced map L..(f) : L..(K) → L..(K′) of a morphism f = (f1, f0) of
/// two-term complexes, cellwise on basis labels.
pub fn induced_resolution_map(
    src: &AugmentedResolution,
    tgt: &AugmentedResolution,
    f1: &GroupHom,
    f0: &GroupHom,
) -> BTreeMap<(i64, i64), GroupHom> {
    let mut out = BTreeMap::new();
    for pos in src.bicomplex.positions() {
        let s_cell = src.bicomplex.cell(pos.0, pos.1);
        let t_cell = tgt.bicomplex.cell(pos.0, pos.1);
        if t_cell.is_zero() {
            out.insert(pos, GroupHom::zero(s_cell, t_cell));
            continue;
        }
        let s_sums = src.bicomplex.summands_at(pos);
        let t_sums = tgt.bicomplex.summands_at(pos);
        let mut m = Matrix::zeros(t_cell.ngens(), s_cell.ngens());
        for (s_sum, t_sum) in s_sums.iter().zip(t_sums.iter()) {
            assert_eq!(s_sum.tag, t_sum.tag);
            let elem_map: &GroupHom = match s_sum.tag {
                BlockTag::Bar(_) => f0,
                BlockTag::Gen(_) => f1,
                _ => unreachable!("canonical resolutions carry Bar/Gen tags"),
            };
            let block = formula_matrix(&s_sum.factors[0], &t_sum.factors[0], |t| {
                vec![(1, t.iter().map(|e| elem_map.apply(e)).collect())]
            });
            m.paste(t_sum.offset, s_sum.offset, &block);
        }
        out.insert(pos, GroupHom::new(s_cell, t_cell, m).expect("free cells"));
    }
    out
}

/// Named §5 condition report on a tensor resolution: the two exact rows and
/// the four anticommuting squares, each `None` when the corresponding blocks
/// vanish for the given complexes.
#[derive(Clone, Debug)]
pub struct TensorConditionReport {
    pub exact1: Option<bool>,
    pub exact2: Option<bool>,
    pub anti: [Option<bool>; 4],
    /// The generic per-square / per-line report of the ambient bicomplex.
    pub all_squares_pass: bool,
}

impl TensorConditionReport {
    pub fn passes(&self) -> bool {
        self.all_squares_pass
            && self.exact1.unwrap_or(true)
            && self.exact2.unwrap_or(true)
            && self.anti.iter().all(|a| a.unwrap_or(true))
    }
}

fn find_pair<'a>(
    sums: &'a [Summand],
    left: &BlockTag,
    right: &BlockTag,
) -> Option<&'a Summand> {
    sums.iter().find(|s| {
        matches!(&s.tag, BlockTag::Pair(l, r) if l.as_ref() == left && r.as_ref() == right)
    })
}

fn slice_block(m: &Matrix, tgt: &Summand, src: &Summand) -> Matrix {
    m.submatrix(tgt.offset, src.offset, tgt.ngens, src.ngens)
}

/// Check the named conditions on L..(K₁) ⊗ L..(K₂).
pub fn check_tensor_conditions(bic: &Bicomplex) -> TensorConditionReport {
    use BlockTag::{Bar, Gen};
    let all_squares_pass = bic.check_conditions().all_pass();
    let free = |n: usize| vec![BigInt::zero(); n];

    // (exact1): Z[B1]⊗(bar B2): cell (0,2) pairs (Bar1,Bar2)+(Bar1,Bar3)
    //            → (0,1) pair (Bar1,Bar2) → (0,0) pair (Bar1,Bar1), exact in
    //            the middle. (exact2) is the mirror with the left bar moving.
    let exactness = |left: bool| -> Option<bool> {
        let s02 = bic.summands_at((0, 2));
        let s01 = bic.summands_at((0, 1));
        let s00 = bic.summands_at((0, 0));
        let (a2, a3, mid, bot) = if left {
            (
                find_pair(&s02, &Bar(1), &Bar(2))?,
                find_pair(&s02, &Bar(1), &Bar(3))?,
                find_pair(&s01, &Bar(1), &Bar(2))?,
                find_pair(&s00, &Bar(1), &Bar(1))?,
            )
        } else {
            (
                find_pair(&s02, &Bar(2), &Bar(1))?,
                find_pair(&s02, &Bar(3), &Bar(1))?,
                find_pair(&s01, &Bar(2), &Bar(1))?,
                find_pair(&s00, &Bar(1), &Bar(1))?,
            )
        };
        let d_02 = bic.vert_from(0, 2);
        let d_01 = bic.vert_from(0, 1);
        let into_mid = slice_block(d_02.matrix(), mid, a2)
            .hstack(&slice_block(d_02.matrix(), mid, a3));
        let out_mid = slice_block(d_01.matrix(), bot, mid);
        let h = raw_homology(
            &out_mid,
            &into_mid,
            &free(bot.ngens),
            &free(mid.ngens),
        );
        Some(h.group().is_zero())
    };
    let exact1 = exactness(true);
    let exact2 = exactness(false);

    // The four anticommuting squares, each as "route A + route B = 0" on the
    // named summand. A route is (middle position, middle tags, first leg
    // horizontal?, second leg horizontal?).
    type Route<'t> = ((i64, i64), (&'t BlockTag, &'t BlockTag), bool, bool);
    let square = |top_pos: (i64, i64),
                  top: (&BlockTag, &BlockTag),
                  via_a: Route,
                  via_b: Route,
                  bot_pos: (i64, i64),
                  bottom: (&BlockTag, &BlockTag)|
     -> Option<bool> {
        let s_top = bic.summands_at(top_pos);
        let top_s = find_pair(&s_top, top.0, top.1)?;
        let s_bot = bic.summands_at(bot_pos);
        let bot_s = find_pair(&s_bot, bottom.0, bottom.1)?;
        let mut total = Matrix::zeros(bot_s.ngens, top_s.ngens);
        for (mid_pos, mid_tag, first_horiz, second_horiz) in [via_a, via_b] {
            let s_mid = bic.summands_at(mid_pos);
            let mid_s = find_pair(&s_mid, mid_tag.0, mid_tag.1)?;
            let first = if first_horiz {
                bic.horiz_from(top_pos.0, top_pos.1)
            } else {
                bic.vert_from(top_pos.0, top_pos.1)
            };
            let second = if second_horiz {
                bic.horiz_from(mid_pos.0, mid_pos.1)
            } else {
                bic.vert_from(mid_pos.0, mid_pos.1)
            };
            let leg1 = slice_block(first.matrix(), mid_s, top_s);
            let leg2 = slice_block(second.matrix(), bot_s, mid_s);
            total = &total + &(&leg2 * &leg1);
        }
        Some(total.is_zero())
    };
    use BlockTag as T;
    // (anti1): both legs of d∘d through the (Bar2,Bar2) block of (0,2).
    let anti1 = square(
        (0, 2),
        (&T::Bar(2), &T::Bar(2)),
        ((0, 1), (&T::Bar(1), &T::Bar(2)), false, false),
        ((0, 1), (&T::Bar(2), &T::Bar(1)), false, false),
        (0, 0).into(),
        (&T::Bar(1), &T::Bar(1)),
    );
    // (anti2)/(anti3): mixed horizontal/vertical square through (1,1).
    let anti2 = square(
        (1, 1),
        (&T::Gen(1), &T::Bar(2)),
        ((0, 1), (&T::Bar(1), &T::Bar(2)), true, false),
        ((1, 0), (&T::Gen(1), &T::Bar(1)), false, true),
        (0, 0).into(),
        (&T::Bar(1), &T::Bar(1)),
    );
    let anti3 = square(
        (1, 1),
        (&T::Bar(2), &T::Gen(1)),
        ((0, 1), (&T::Bar(2), &T::Bar(1)), true, false),
        ((1, 0), (&T::Bar(1), &T::Gen(1)), false, true),
        (0, 0).into(),
        (&T::Bar(1), &T::Bar(1)),
    );
    // (anti4): the two legs of D∘D out of (2,0).
    let anti4 = square(
        (2, 0),
        (&T::Gen(1), &T::Gen(1)),
        ((1, 0), (&T::Bar(1), &T::Gen(1)), true, true),
        ((1, 0), (&T::Gen(1), &T::Bar(1)), true, true),
        (0, 0).into(),
        (&T::Bar(1), &T::Bar(1)),
    );
    TensorConditionReport {
        exact1,
        exact2,
        anti: [anti1, anti2, anti3, anti4],
        all_squares_pass,
    }
}

/// Descriptive cell list with the paper's unreduced ranks (products of the
/// label-set orders). Reported for reference next to the working reduced
/// ranks; the two differ by the basepoint conventions.
pub fn paper_cell_summary(k: &TwoTermComplex) -> Vec<(String, String, u64)> {
    let b = k.b().order().and_then(|o| u64::try_from(o).ok()).unwrap_or(0);
    let a = k.a().order().and_then(|o| u64::try_from(o).ok()).unwrap_or(0);
    vec![
        ("(0,0)".into(), "Z[B]".into(), b),
        ("(0,1)".into(), "Z[BxB]".into(), b * b),
        ("(0,2)".into(), "Z[BxB] + Z[BxBxB]".into(), b * b + b * b * b),
        ("(1,0)".into(), "Z[A]".into(), a),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::all_homs;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn two_term(a: u64, b: u64, entry: i64) -> TwoTermComplex {
        let u = GroupHom::new(z(a), z(b), Matrix::from_rows(&[&[entry]])).unwrap();
        TwoTermComplex::new(u)
    }

    #[test]
    fn reduced_cell_ranks_for_z2() {
        // K = [0 → Z/2]: reduced ranks 1, 3, 3+7, A-cells empty. The paper's
        // unreduced products (2, 4, 12, 1) are reported as metadata.
        let k = TwoTermComplex::from_group(z(2));
        let r = canonical_resolution(&k, 8).unwrap();
        assert_eq!(r.bicomplex.cell(0, 0).ngens(), 1);
        assert_eq!(r.bicomplex.cell(0, 1).ngens(), 3);
        assert_eq!(r.bicomplex.cell(0, 2).ngens(), 10);
        assert!(r.bicomplex.cell(1, 0).is_zero());
        assert!(r.bicomplex.cell(1, 1).is_zero());
        let paper = paper_cell_summary(&k);
        assert_eq!(paper[0].2, 2);
        assert_eq!(paper[1].2, 4);
        assert_eq!(paper[2].2, 12);
        assert_eq!(paper[3].2, 1);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            canonical_resolution(&TwoTermComplex::from_group(FgAbGroup::z()), 8),
            Err(Error::InfiniteGroup)
        ));
        assert!(matches!(
            canonical_resolution(&TwoTermComplex::from_group(z(16)), 8),
            Err(Error::SizeGuardExceeded { actual: 16, limit: 8 })
        ));
    }

    #[test]
    fn partial_resolution_examples() {
        // [0 → Z/2]: H0 = Z/2, H1 = 0
        let rep = check_partial_resolution(&TwoTermComplex::from_group(z(2)), 8).unwrap();
        assert_eq!(rep.h0_resolution, z(2));
        assert!(rep.h1_resolution.is_zero());
        assert!(rep.passes(), "{rep:?}");
        // [Z/4 --2--> Z/4]: H0 = Z/2 = H1
        let rep = check_partial_resolution(&two_term(4, 4, 2), 8).unwrap();
        assert_eq!(rep.h0_resolution, z(2));
        assert_eq!(rep.h1_resolution, z(2));
        assert!(rep.passes(), "{rep:?}");
        // acyclic [Z/2 --id--> Z/2]
        let rep = check_partial_resolution(&two_term(2, 2, 1), 8).unwrap();
        assert!(rep.h0_resolution.is_zero() && rep.h1_resolution.is_zero());
        assert!(rep.passes());
        // [0 → Z/3]
        let rep = check_partial_resolution(&TwoTermComplex::from_group(z(3)), 8).unwrap();
        assert_eq!(rep.h0_resolution, z(3));
        assert!(rep.h1_resolution.is_zero());
        assert!(rep.passes());
    }

    #[test]
    fn eps0_kills_group_law_relations() {
        // ε0 ∘ d00 = 0 is the group law on B; d00 ∘ d01 = 0 encodes
        // commutativity and associativity.
        let k = two_term(4, 4, 2);
        let r = canonical_resolution(&k, 8).unwrap();
        let d00 = r.bicomplex.vert_from(0, 1);
        assert!(r.eps0.compose(&d00).is_zero_hom());
        let d01 = r.bicomplex.vert_from(0, 2);
        assert!(d00.compose(&d01).is_zero_hom());
        // ε1 relation: ε0 ∘ D00 = u ∘ ε1
        let d_h = r.bicomplex.horiz_from(1, 0);
        let lhs = r.eps0.compose(&d_h);
        let rhs = k.u().compose(&r.eps1);
        assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn tensor_resolution_smoke() {
        let k = TwoTermComplex::from_group(z(2));
        let t = tensor_resolution(&k, &k, 16).unwrap();
        // grid positions present: (0,0),(0,1),(0,2),(0,3),(0,4); A-cells absent
        assert_eq!(t.cell(0, 0).ngens(), 1);
        assert_eq!(t.cell(0, 1).ngens(), 1 * 3 + 3 * 1);
        assert!(t.cell(1, 0).is_zero());
        let rep = check_tensor_conditions(&t);
        assert!(rep.all_squares_pass);
        assert_eq!(rep.exact1, Some(true));
        assert_eq!(rep.exact2, Some(true));
        // Total complex degree 0/1 homology matches the derived tensor
        let tot = t.total().unwrap();
        assert_eq!(tot.complex().homology(0), z(2));
        assert_eq!(tot.complex().homology(1), z(2)); // Tor(Z/2,Z/2)
    }

    #[test]
    fn tensor_conditions_with_torsion_maps() {
        let k1 = two_term(2, 2, 1);
        let k2 = two_term(2, 2, 0);
        let t = tensor_resolution(&k1, &k2, 16).unwrap();
        let rep = check_tensor_conditions(&t);
        assert!(rep.passes(), "{rep:?}");
        assert!(rep.anti.iter().all(|a| a.is_some()));
        // L11 paper blocks: |A1||B2|^2 + |B1|^2|A2| = 8 + 8 = 16 unreduced;
        // here we only check the reduced cell is present and labeled.
        let sums = t.summands_at((1, 1));
        assert!(find_pair(&sums, &BlockTag::Gen(1), &BlockTag::Bar(2)).is_some());
        assert!(find_pair(&sums, &BlockTag::Bar(2), &BlockTag::Gen(1)).is_some());
    }

    #[test]
    fn unit_resolutions() {
        let unit0 = TwoTermComplex::from_group(FgAbGroup::z());
        assert!(is_unit_degree0(&unit0));
        let r = flat_resolution(&unit0, 8).unwrap();
        assert_eq!(r.cell(0, 0), FgAbGroup::z());
        // tensor with the unit leaves the resolution unchanged up to labels
        let k = two_term(2, 4, 2);
        let base = canonical_resolution(&k, 8).unwrap().bicomplex;
        let t = tensor_resolutions(&base, &r).unwrap();
        for pos in base.positions() {
            assert_eq!(t.cell(pos.0, pos.1), base.cell(pos.0, pos.1));
        }
        let tot_t = t.total().unwrap();
        let tot_b = base.total().unwrap();
        for n in 0..3 {
            assert_eq!(
                tot_t.complex().homology(n),
                tot_b.complex().homology(n)
            );
        }
        // [Z → 0] places the resolution one column to the right
        let unit1 = TwoTermComplex::from_group_shifted(FgAbGroup::z());
        let r1 = flat_resolution(&unit1, 8).unwrap();
        let t1 = tensor_resolutions(&base, &r1).unwrap();
        for pos in base.positions() {
            assert_eq!(t1.cell(pos.0 + 1, pos.1), base.cell(pos.0, pos.1));
        }
    }

    #[test]
    fn functoriality_of_the_resolution() {
        // every corpus morphism f : K → K' gives L..(f) commuting with the
        // augmentations and the differentials; spot-check one pair here
        let k = two_term(2, 4, 2);
        let k2 = two_term(4, 4, 2);
        let rs = canonical_resolution(&k, 8).unwrap();
        let rt = canonical_resolution(&k2, 8).unwrap();
        for f1 in all_homs(k.a(), k2.a()) {
            for f0 in all_homs(k.b(), k2.b()) {
                // chain-map condition for (f1, f0)
                if k2.u().compose(&f1).matrix() != f0.compose(k.u()).matrix() {
                    continue;
                }
                let lf = induced_resolution_map(&rs, &rt, &f1, &f0);
                // commutes with differentials
                for pos in rs.bicomplex.positions() {
                    let lhs = rt
                        .bicomplex
                        .vert_from(pos.0, pos.1)
                        .compose(&lf[&pos]);
                    let below = (pos.0, pos.1 - 1);
                    if !rs.bicomplex.cell(below.0, below.1).is_zero() {
                        let rhs = lf[&below].compose(&rs.bicomplex.vert_from(pos.0, pos.1));
                        assert_eq!(lhs.matrix(), rhs.matrix(), "vert at {pos:?}");
                    }
                    let lhs = rt
                        .bicomplex
                        .horiz_from(pos.0, pos.1)
                        .compose(&lf[&pos]);
                    let left = (pos.0 - 1, pos.1);
                    if !rs.bicomplex.cell(left.0, left.1).is_zero() {
                        let rhs = lf[&left].compose(&rs.bicomplex.horiz_from(pos.0, pos.1));
                        assert_eq!(lhs.matrix(), rhs.matrix(), "horiz at {pos:?}");
                    }
                }
                // commutes with augmentations
                let lhs = rt.eps0.compose(&lf[&(0, 0)]);
                let rhs = f0.compose(&rs.eps0);
                assert_eq!(lhs.matrix(), rhs.matrix());
            }
        }
    }
}
