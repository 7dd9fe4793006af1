//! Exact integral LLL reduction (Cohen, Algorithm 2.6.7) with the
//! unimodular transform tracked alongside the basis.
//!
//! Gram-Schmidt data is kept as integers: d_i is the Gram determinant of
//! the first i vectors and lambda_{k,j} = d_{j+1} mu_{k,j}, so
//! |b*_i|^2 = d_{i+1} / d_i exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{dot, IntegerMatrix};
use crate::error::{BlochError, Result};

/// Lovasz constant 99/100.
const DELTA_NUM: i64 = 99;
const DELTA_DEN: i64 = 100;

/// Result of a reduction: `reduced = transform * input`.
#[derive(Debug, Clone)]
pub struct LllResult {
    pub reduced: IntegerMatrix,
    pub transform: IntegerMatrix,
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i + 1] = Gram determinant of b[0..=i]
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        let lam = self.lambda[k][l].clone();
        if (&lam * 2i32).abs() <= dl {
            return;
        }
        // q = round(lambda / d_l)
        let q = (&lam * 2i32 + &dl).div_floor(&(&dl * 2i32));
        let (bl, hl) = (self.b[l].clone(), self.h[l].clone());
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        for (x, y) in self.h[k].iter_mut().zip(&hl) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &dl;
        for i in 0..l {
            let v = &q * &self.lambda[l][i];
            self.lambda[k][i] -= v;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        self.h.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = t;
        }
        let lam = self.lambda[k][k - 1].clone();
        let dk = self.d[k + 1].clone();
        let dkm1 = self.d[k].clone();
        let dkm2 = self.d[k - 1].clone();
        let bb = (&dkm2 * &dk + &lam * &lam) / &dkm1;
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&dk * &self.lambda[i][k - 1] - &lam * &t) / &dkm1;
            self.lambda[i][k - 1] = (&bb * &t + &lam * &self.lambda[i][k]) / &dk;
        }
        self.d[k] = bb;
    }

    /// Incremental Gram-Schmidt for vector k (Cohen step 2).
    fn incorporate(&mut self, k: usize) -> Result<()> {
        for j in 0..=k {
            let mut u = dot(&self.b[k], &self.b[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                if u.is_zero() {
                    return Err(BlochError::DependentRows(k));
                }
                self.d[k + 1] = u;
            }
        }
        Ok(())
    }
}

/// LLL-reduces the rows of `basis` (delta = 0.99), returning the reduced
/// basis together with the unimodular transform.
pub fn lll_reduce_with_transform(basis: &IntegerMatrix) -> Result<LllResult> {
    let n = basis.nrows();
    let mut st = State {
        b: basis.to_rows(),
        h: IntegerMatrix::identity(n).to_rows(),
        d: vec![BigInt::zero(); n + 1],
        lambda: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    st.incorporate(0)?;
    let mut k = 1usize;
    let mut kmax = 0usize;
    let num = BigInt::from(DELTA_NUM);
    let den = BigInt::from(DELTA_DEN);
    while k < n {
        if k > kmax {
            kmax = k;
            st.incorporate(k)?;
        }
        st.red(k, k - 1);
        let lam = &st.lambda[k][k - 1];
        let lhs = &den * &st.d[k + 1] * &st.d[k - 1];
        let rhs = &num * &st.d[k] * &st.d[k] - &den * lam * lam;
        if lhs < rhs {
            st.swap(k, kmax);
            k = if k > 1 { k - 1 } else { 1 };
            continue;
        }
        for l in (0..k.saturating_sub(1)).rev() {
            st.red(k, l);
        }
        k += 1;
    }
    Ok(LllResult {
        reduced: IntegerMatrix::from_rows(st.b)?,
        transform: IntegerMatrix::from_rows(st.h)?,
    })
}

/// LLL-reduces the rows of `basis`; the rows must be linearly independent.
pub fn lll_reduce(basis: &IntegerMatrix) -> Result<IntegerMatrix> {
    Ok(lll_reduce_with_transform(basis)?.reduced)
}

/// Squared Gram-Schmidt norms |b*_i|^2 of the rows, computed exactly.
pub fn gram_schmidt_norms(rows: &[Vec<BigInt>]) -> Result<Vec<BigRational>> {
    let n = rows.len();
    let mut st = State {
        b: rows.to_vec(),
        h: Vec::new(),
        d: vec![BigInt::zero(); n + 1],
        lambda: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    for k in 0..n {
        st.incorporate(k)?;
    }
    Ok((0..n).map(|i| BigRational::new(st.d[i + 1].clone(), st.d[i].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm2(v: &[BigInt]) -> BigInt {
        dot(v, v)
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntegerMatrix::identity(4);
        assert_eq!(lll_reduce(&id).unwrap(), id);
    }

    #[test]
    fn two_dimensional_example() {
        let b = IntegerMatrix::from_i64_rows(&[&[1, 0], &[4, 1]]).unwrap();
        let r = lll_reduce_with_transform(&b).unwrap();
        assert!(norm2(r.reduced.row(0)) <= BigInt::from(17));
        assert_eq!(r.transform.det().unwrap().abs(), BigInt::one());
        assert_eq!(r.transform.mul(&b).unwrap(), r.reduced);
    }

    #[test]
    fn dependent_rows_rejected() {
        let b = IntegerMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(lll_reduce(&b).unwrap_err().code(), "DEPENDENT_ROWS");
    }

    #[test]
    fn gram_schmidt_of_orthogonal_rows() {
        let rows = vec![vec![BigInt::from(2), BigInt::zero()], vec![BigInt::from(1), BigInt::from(3)]];
        let g = gram_schmidt_norms(&rows).unwrap();
        assert_eq!(g[0], BigRational::from_integer(BigInt::from(4)));
        assert_eq!(g[1], BigRational::from_integer(BigInt::from(9)));
    }
}
