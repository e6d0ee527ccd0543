//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Full Smith decomposition `u * a * v = s` together with the inverse
/// transforms, which come out of the reduction for free and are needed to
/// read kernel and cokernel bases off the diagonal form.
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries d1 | d2 | ... of `s`.
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form of an arbitrary rectangular integer matrix.
///
/// Returns `(u, s, v)` with `u * m * v = s`, `u` and `v` unimodular and `s`
/// diagonal with each entry dividing the next. Pivots are chosen by smallest
/// nonzero absolute value, ties broken by lowest (row, col) index, so the
/// output is deterministic for a fixed input.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let d = smith_decomposition(m);
    (d.u, d.s, d.v)
}

pub fn smith_decomposition(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let mut t = 0;
    'outer: while t < rows && t < cols {
        // smallest nonzero |entry| in the trailing submatrix, lowest (row, col) on ties
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if s[(i, j)].abs() < s[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            s.swap_rows(pi, t);
            u.swap_rows(pi, t);
            u_inv.swap_cols(pi, t);
        }
        if pj != t {
            s.swap_cols(pj, t);
            v.swap_cols(pj, t);
            v_inv.swap_rows(pj, t);
        }

        // clear column t; truncated division leaves remainders smaller than
        // the pivot, in which case we restart pivot selection
        let mut dirty = false;
        for i in t + 1..rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let q = &s[(i, t)] / &s[(t, t)];
            s.row_sub(i, t, &q);
            u.row_sub(i, t, &q);
            u_inv.col_sub(t, i, &-q);
            if !s[(i, t)].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue 'outer;
        }
        let mut dirty = false;
        for j in t + 1..cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let q = &s[(t, j)] / &s[(t, t)];
            s.col_sub(j, t, &q);
            v.col_sub(j, t, &q);
            v_inv.row_sub(t, j, &-q);
            if !s[(t, j)].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue 'outer;
        }

        // pivot must divide the rest of the submatrix before we move on
        for i in t + 1..rows {
            for j in t + 1..cols {
                if (&s[(i, j)] % &s[(t, t)]).is_zero() {
                    continue;
                }
                let one = BigInt::from(-1);
                s.row_sub(t, i, &one);
                u.row_sub(t, i, &one);
                u_inv.col_sub(i, t, &BigInt::from(1));
                continue 'outer;
            }
        }
        t += 1;
    }

    // make the diagonal non-negative
    let rank = (0..t).count();
    for i in 0..rank {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }
    SnfDecomposition { u, u_inv, s, v, v_inv, rank }
}
