//! Smith normal form with both transforms and the inverse of the column
//! transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * a * v = d` with `u`, `v` unimodular, `d` diagonal with
/// nonnegative entries and d_i | d_(i+1). `v_inv` is the exact inverse of `v`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|x| !x.is_zero()).count()
    }
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = Work { a: a.clone(), u: IntegerMatrix::identity(m), v: IntegerMatrix::identity(n), v_inv: IntegerMatrix::identity(n) };
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.a.get(i, j);
                    if !x.is_zero() && pivot.map_or(true, |(pi, pj)| x.abs() < w.a.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(w, m, n);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = w.a.get(i, t).div_floor(&p);
                w.add_row(i, t, &-q);
                clean &= w.a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = w.a.get(t, j).div_floor(&p);
                w.add_col(j, t, &-q);
                clean &= w.a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !w.a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.a.negate_row(t);
            w.u.negate_row(t);
        }
    }
    finish(w, m, n)
}

fn finish(w: Work, m: usize, n: usize) -> SmithForm {
    let diagonal = (0..m.min(n)).map(|i| w.a.get(i, i).clone()).collect();
    SmithForm { diagonal, d: w.a, u: w.u, v: w.v, v_inv: w.v_inv }
}
