//! Smith normal form of integer matrices, with tracked unimodular transforms
//! and the linear solvers everything else is built on.
//!
//! Pivoting rule: smallest nonzero absolute value, ties broken by lowest
//! (row, col) in row-major scan order, so all downstream outputs are
//! reproducible run to run.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// `u * m * v = s` with `u`, `v` unimodular, `s` diagonal with a divisibility
/// chain `d_1 | d_2 | …` of nonnegative entries. `u_inv` and `v_inv` are the
/// exact integer inverses, tracked during elimination.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub s: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    /// Sign of det(u), tracked through row operations.
    pub det_u: i8,
    /// Sign of det(v).
    pub det_v: i8,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Work {
    m: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
    det_u: i8,
    det_v: i8,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let x = self.m.get(a, j).clone();
            self.m.set(a, j, self.m.get(b, j).clone());
            self.m.set(b, j, x);
        }
        for j in 0..self.u.cols() {
            let x = self.u.get(a, j).clone();
            self.u.set(a, j, self.u.get(b, j).clone());
            self.u.set(b, j, x);
        }
        for i in 0..self.u_inv.rows() {
            let x = self.u_inv.get(i, a).clone();
            self.u_inv.set(i, a, self.u_inv.get(i, b).clone());
            self.u_inv.set(i, b, x);
        }
        self.det_u = -self.det_u;
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let x = self.m.get(i, a).clone();
            self.m.set(i, a, self.m.get(i, b).clone());
            self.m.set(i, b, x);
        }
        for i in 0..self.v.rows() {
            let x = self.v.get(i, a).clone();
            self.v.set(i, a, self.v.get(i, b).clone());
            self.v.set(i, b, x);
        }
        for j in 0..self.v_inv.cols() {
            let x = self.v_inv.get(a, j).clone();
            self.v_inv.set(a, j, self.v_inv.get(b, j).clone());
            self.v_inv.set(b, j, x);
        }
        self.det_v = -self.det_v;
    }

    /// row[a] -= q * row[t]
    fn row_sub(&mut self, a: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.m.cols() {
            if self.m.get(t, j).is_zero() {
                continue;
            }
            let x = self.m.get(a, j) - q * self.m.get(t, j);
            self.m.set(a, j, x);
        }
        for j in 0..self.u.cols() {
            if self.u.get(t, j).is_zero() {
                continue;
            }
            let x = self.u.get(a, j) - q * self.u.get(t, j);
            self.u.set(a, j, x);
        }
        // u_inv: col t += q * col a
        for i in 0..self.u_inv.rows() {
            if self.u_inv.get(i, a).is_zero() {
                continue;
            }
            let x = self.u_inv.get(i, t) + q * self.u_inv.get(i, a);
            self.u_inv.set(i, t, x);
        }
    }

    /// col[a] -= q * col[t]
    fn col_sub(&mut self, a: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.m.rows() {
            if self.m.get(i, t).is_zero() {
                continue;
            }
            let x = self.m.get(i, a) - q * self.m.get(i, t);
            self.m.set(i, a, x);
        }
        for i in 0..self.v.rows() {
            if self.v.get(i, t).is_zero() {
                continue;
            }
            let x = self.v.get(i, a) - q * self.v.get(i, t);
            self.v.set(i, a, x);
        }
        // v_inv: row t += q * row a
        for j in 0..self.v_inv.cols() {
            if self.v_inv.get(a, j).is_zero() {
                continue;
            }
            let x = self.v_inv.get(t, j) + q * self.v_inv.get(a, j);
            self.v_inv.set(t, j, x);
        }
    }

    /// row[a] += row[b]
    fn row_add(&mut self, a: usize, b: usize) {
        let minus_one = BigInt::from(-1);
        self.row_sub(a, b, &minus_one);
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.m.cols() {
            let x = -self.m.get(a, j);
            self.m.set(a, j, x);
        }
        for j in 0..self.u.cols() {
            let x = -self.u.get(a, j);
            self.u.set(a, j, x);
        }
        for i in 0..self.u_inv.rows() {
            let x = -self.u_inv.get(i, a);
            self.u_inv.set(i, a, x);
        }
        self.det_u = -self.det_u;
    }

    /// Smallest nonzero |entry| in the trailing submatrix, lowest (row, col)
    /// on ties. An entry of absolute value one ends the scan early: nothing
    /// can beat it, and the first one found is the lowest-index one.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let one = BigInt::from(1);
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let e = self.m.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if a == one {
                    return Some((i, j));
                }
                match &best {
                    Some((_, _, b)) if *b <= a => {}
                    _ => best = Some((i, j, a)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form. Empty matrices are fine and yield empty `s`.
pub fn snf(m: &Matrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        m: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
        det_u: 1,
        det_v: 1,
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.find_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        'reduce: loop {
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if !w.m.get(i, t).is_zero() {
                    let q = w.m.get(i, t) / w.m.get(t, t);
                    w.row_sub(i, t, &q);
                }
            }
            if let Some(i) = (t + 1..rows).find(|&i| !w.m.get(i, t).is_zero()) {
                // Remainder strictly smaller than the pivot; promote it.
                w.swap_rows(t, i);
                continue 'reduce;
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if !w.m.get(t, j).is_zero() {
                    let q = w.m.get(t, j) / w.m.get(t, t);
                    w.col_sub(j, t, &q);
                }
            }
            if let Some(j) = (t + 1..cols).find(|&j| !w.m.get(t, j).is_zero()) {
                w.swap_cols(t, j);
                continue 'reduce;
            }
            // Divisibility: the pivot must divide every remaining entry.
            let p = w.m.get(t, t).clone();
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(w.m.get(i, j) % &p).is_zero() {
                        w.row_add(t, i);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    let rank = (0..rows.min(cols))
        .take_while(|&i| !w.m.get(i, i).is_zero())
        .count();
    SnfDecomposition {
        s: w.m,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank,
        det_u: w.det_u,
        det_v: w.det_v,
    }
}

/// Reusable solver for `M · x = b` over ℤ (many right-hand sides, one SNF).
#[derive(Clone)]
pub struct Solver {
    snf: SnfDecomposition,
    cols: usize,
}

impl Solver {
    pub fn new(m: &Matrix) -> Self {
        Solver {
            cols: m.cols(),
            snf: snf(m),
        }
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    /// One integer solution of `M x = b`, if any.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        let y = &self.snf.u * b;
        let mut x = Matrix::zeros(self.cols, b.cols());
        for c in 0..b.cols() {
            for i in 0..y.rows() {
                let yi = y.get(i, c);
                if i < self.snf.rank {
                    let d = self.snf.s.get(i, i);
                    if !(yi % d).is_zero() {
                        return None;
                    }
                    x.set(i, c, yi / d);
                } else if !yi.is_zero() {
                    return None;
                }
            }
        }
        Some(&self.snf.v * &x)
    }

    /// Basis of the integer kernel lattice, as columns.
    pub fn kernel_basis(&self) -> Matrix {
        let free: Vec<usize> = (self.snf.rank..self.cols).collect();
        self.snf.v.select_cols(&free)
    }
}

/// Convenience: kernel lattice of `m` as a matrix of basis columns.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    Solver::new(m).kernel_basis()
}

/// Determinant by fraction-free (Bareiss) elimination. Used as an independent
/// oracle on the unimodular transforms; not on any hot path.
pub fn determinant(m: &Matrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                let x = a.get(k, j).clone();
                a.set(k, j, a.get(swap, j).clone());
                a.set(swap, j, x);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
        }
        for i in k + 1..n {
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &Matrix) {
        let d = snf(m);
        assert_eq!(&(&d.u * m) * &d.v, d.s, "u*m*v != s");
        assert!((&d.u * &d.u_inv).is_identity());
        assert!((&d.v * &d.v_inv).is_identity());
        assert_eq!(determinant(&d.u).abs(), BigInt::one());
        assert_eq!(determinant(&d.v).abs(), BigInt::one());
        let diag = d.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                assert!(
                    !diag[i].is_zero() && (&diag[i + 1] % &diag[i]).is_zero(),
                    "divisibility chain broken: {:?}",
                    diag
                );
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = Matrix::identity(2);
        let d = snf(&m);
        assert!(d.s.is_identity());
        assert!(d.u.is_identity());
        assert!(d.v.is_identity());
    }

    // Oracle for the diagonal of [[2,4],[6,8]]: d1 = gcd of all entries = 2,
    // d1*d2 = gcd of all 2x2 minors = |2*8 - 4*6| = 8, so d2 = 4.
    #[test]
    fn two_by_two_example() {
        let m = Matrix::from_rows(&[&[2, 4], &[6, 8]]);
        let d = snf(&m);
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::from_rows(&[&[0]]);
        let d = snf(&m);
        assert!(d.s.is_zero());
        assert_eq!(d.rank, 0);
        let empty = Matrix::zeros(0, 0);
        let d = snf(&empty);
        assert_eq!(d.s.rows(), 0);
    }

    #[test]
    fn rectangular_and_negative() {
        check(&Matrix::from_rows(&[&[6, 10, 15]]));
        check(&Matrix::from_rows(&[&[-2, 3], &[4, -5], &[7, 11]]));
        check(&Matrix::from_rows(&[&[0, 0], &[0, 0]]));
    }

    #[test]
    fn solver_and_kernel() {
        let m = Matrix::from_rows(&[&[2, 0, 4], &[0, 3, 6]]);
        let s = Solver::new(&m);
        let b = Matrix::from_rows(&[&[6], &[9]]);
        let x = s.solve(&b).unwrap();
        assert_eq!(&m * &x, b);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        // 2x = 1 has no integer solution
        let m = Matrix::from_rows(&[&[2]]);
        assert!(Solver::new(&m)
            .solve(&Matrix::from_rows(&[&[1]]))
            .is_none());
    }
}
