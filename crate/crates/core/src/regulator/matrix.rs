use num_traits::Signed;
use serde::Serialize;

use crate::blochgrp::FormalSum;
use crate::error::{BlochError, Result};
use crate::numberfield::{EmbeddedField, RootKind};
use crate::numeric::{bloch_wigner_d2, Complex, PrecisionContext, Real};
use crate::relations::{qrank, QRankReport};

/// Root indices of one embedding per conjugate pair: the member with
/// positive imaginary part, in canonical root order.
pub fn embedding_representatives(e: &EmbeddedField, ctx: &PrecisionContext) -> Result<Vec<usize>> {
    let t = e.field().roots(ctx)?;
    let reps: Vec<usize> = (0..t.len()).filter(|&i| matches!(t.kinds[i], RootKind::Upper { .. })).collect();
    if reps.is_empty() {
        return Err(BlochError::TotallyReal);
    }
    Ok(reps)
}

/// sum n D2(z) over the terms of `beta`, with each z sent to `root`.
pub fn d2_at(beta: &FormalSum, root: &Complex, ctx: &PrecisionContext) -> Result<Real> {
    let p = ctx.prec_bits;
    let mut s = Real::zero(p);
    for (z, n) in beta.terms() {
        let v = bloch_wigner_d2(&z.embed(root), ctx)?;
        s = &s + &(&v * &Real::from_rational(n, p));
    }
    Ok(s)
}

/// Absolute tolerance for a D2 sum of `beta` at precision `ctx`.
pub fn d2_tolerance(beta: &FormalSum, ctx: &PrecisionContext) -> Real {
    let weight: num_rational::BigRational = beta.terms().values().map(|c| c.abs()).sum();
    let w = Real::from_rational(&weight, ctx.prec_bits) + Real::one(ctx.prec_bits);
    &ctx.tol().mul_pow2(16) * &w
}

/// Rows: elements. Columns: the representatives. Entries: D2 sums.
#[derive(Debug, Clone)]
pub struct RegulatorMatrix {
    pub field: EmbeddedField,
    pub reps: Vec<usize>,
    pub values: Vec<Vec<Real>>,
    pub tolerances: Vec<Real>,
    pub prec_bits: usize,
}

impl RegulatorMatrix {
    pub fn qrank(&self, ctx: &PrecisionContext) -> QRankReport {
        if self.values.is_empty() {
            return QRankReport {
                rank: 0,
                singular_values: vec![],
                threshold: Real::zero(ctx.prec_bits),
                gap: None,
            };
        }
        // entries within tolerance of zero are zero
        let cleaned: Vec<Vec<Real>> = self
            .values
            .iter()
            .zip(&self.tolerances)
            .map(|(row, tol)| row.iter().map(|v| if v.abs() <= *tol { Real::zero(v.prec()) } else { v.clone() }).collect())
            .collect();
        qrank(&cleaned, ctx)
    }

    /// Rows that vanish to tolerance at every representative; by Borel's
    /// theorem these are torsion candidates.
    pub fn torsion_candidates(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i].iter().all(|v| v.abs() <= self.tolerances[i]))
            .collect()
    }

    pub fn summary(&self) -> RegulatorSummary {
        RegulatorSummary {
            reps: self.reps.clone(),
            values: self.values.iter().map(|r| r.iter().map(|v| v.to_decimal(30)).collect()).collect(),
            torsion_candidates: self.torsion_candidates(),
            prec_bits: self.prec_bits,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegulatorSummary {
    pub reps: Vec<usize>,
    pub values: Vec<Vec<String>>,
    pub torsion_candidates: Vec<usize>,
    pub prec_bits: usize,
}

pub fn borel_matrix(elements: &[FormalSum], e: &EmbeddedField, ctx: &PrecisionContext) -> Result<RegulatorMatrix> {
    let reps = embedding_representatives(e, ctx)?;
    let t = e.field().roots(ctx)?;
    let mut values = Vec::with_capacity(elements.len());
    let mut tolerances = Vec::with_capacity(elements.len());
    for beta in elements {
        if beta.parent().field() != e.field() {
            return Err(BlochError::InvalidInput("element lies in a different field".into()));
        }
        values.push(reps.iter().map(|&i| d2_at(beta, t.root(i), ctx)).collect::<Result<Vec<_>>>()?);
        tolerances.push(d2_tolerance(beta, ctx));
    }
    Ok(RegulatorMatrix { field: e.clone(), reps, values, tolerances, prec_bits: ctx.prec_bits })
}
