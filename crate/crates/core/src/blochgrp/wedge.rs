use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::basis::{build_multiplicative_basis_with, BasisSummary, MultiplicativeBasis, DEFAULT_HEIGHT};
use super::formal::FormalSum;
use crate::error::{BlochError, Result};
use crate::numberfield::FieldElement;
use crate::numeric::PrecisionContext;

/// An element of the second exterior power of the free part of the
/// subgroup spanned by a basis, as an antisymmetric rational matrix.
#[derive(Debug, Clone)]
pub struct WedgeElement {
    pub basis: MultiplicativeBasis,
    /// `coords[j][k]` is the coefficient of u_j ^ u_k.
    pub coords: Vec<Vec<BigRational>>,
}

impl WedgeElement {
    pub fn zero(basis: MultiplicativeBasis) -> Self {
        let t = basis.rank();
        WedgeElement { basis, coords: vec![vec![BigRational::zero(); t]; t] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(|c| c.is_zero())
    }

    /// Adds q * (x ^ y) for exponent vectors x, y.
    pub fn add_wedge(&mut self, q: &BigRational, x: &[BigInt], y: &[BigInt]) {
        let t = self.coords.len();
        for j in 0..t {
            for k in 0..t {
                let v = &x[j] * &y[k] - &y[j] * &x[k];
                if !v.is_zero() {
                    self.coords[j][k] += q * BigRational::from_integer(v);
                }
            }
        }
    }

    /// Nonzero upper-triangle coordinates as (j, k, coefficient).
    pub fn entries(&self) -> Vec<(usize, usize, BigRational)> {
        let t = self.coords.len();
        let mut out = Vec::new();
        for j in 0..t {
            for k in j + 1..t {
                if !self.coords[j][k].is_zero() {
                    out.push((j, k, self.coords[j][k].clone()));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MuVerdict {
    /// Proven zero in the second exterior power of F* tensor Q.
    ZeroExact,
    /// Nonzero unless a multiplicative relation beyond the search bounds exists.
    NonzeroModuloSearch,
}

#[derive(Debug, Clone)]
pub struct MuResult {
    pub wedge: WedgeElement,
    pub verdict: MuVerdict,
}

impl MuResult {
    pub fn report(&self) -> MuReport {
        MuReport {
            verdict: self.verdict,
            basis: self.wedge.basis.summary(),
            wedge: self.wedge.entries().into_iter().map(|(j, k, c)| (j, k, c.to_string())).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub verdict: MuVerdict,
    pub basis: BasisSummary,
    pub wedge: Vec<(usize, usize, String)>,
}

/// The set S = {z, 1 - z : z in supp beta} in canonical order.
pub fn mu_support(beta: &FormalSum) -> Vec<FieldElement> {
    let one = beta.parent().field().one();
    let mut s = BTreeSet::new();
    for z in beta.support() {
        s.insert(z.clone());
        s.insert(&one - z);
    }
    s.into_iter().collect()
}

/// The basis used by [`mu`] for `beta`.
pub fn mu_basis(beta: &FormalSum, height: &BigInt, ctx: &PrecisionContext) -> Result<MultiplicativeBasis> {
    build_multiplicative_basis_with(beta.parent(), &mu_support(beta), height, ctx)
}

/// sum n_i z_i ^ (1 - z_i) evaluated exactly in a constructed basis.
pub fn mu(beta: &FormalSum, ctx: &PrecisionContext) -> Result<MuResult> {
    mu_with_height(beta, &BigInt::from(DEFAULT_HEIGHT), ctx)
}

pub fn mu_with_height(beta: &FormalSum, height: &BigInt, ctx: &PrecisionContext) -> Result<MuResult> {
    let basis = mu_basis(beta, height, ctx)?;
    mu_in_basis(beta, basis)
}

/// mu(beta) in a basis whose element list contains every z and 1 - z.
pub fn mu_in_basis(beta: &FormalSum, basis: MultiplicativeBasis) -> Result<MuResult> {
    let one = beta.parent().field().one();
    let mut w = WedgeElement::zero(basis);
    for (z, n) in beta.terms() {
        let omz = &one - z;
        let (Some(i), Some(j)) = (w.basis.index_of(z), w.basis.index_of(&omz)) else {
            return Err(BlochError::Internal(format!("basis is missing [{z}] or its complement")));
        };
        let x = w.basis.exponents(i).to_vec();
        let y = w.basis.exponents(j).to_vec();
        w.add_wedge(n, &x, &y);
    }
    let verdict = if w.is_zero() { MuVerdict::ZeroExact } else { MuVerdict::NonzeroModuloSearch };
    Ok(MuResult { wedge: w, verdict })
}
