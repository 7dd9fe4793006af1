use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::matrix::{borel_matrix, d2_at, d2_tolerance, RegulatorMatrix};
use crate::blochgrp::{eigenspace_split, mu, FormalSum, MuVerdict};
use crate::error::{BlochError, Result};
use crate::numberfield::EmbeddedField;
use crate::numeric::{PrecisionContext, Real};

fn ser_q<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Which statement the prediction rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionBasis {
    /// Stable non-real embedding: the rank formulas directly.
    TheoremB,
    /// Real embedding: conjugation acts trivially, everything is plus.
    RealEmbedding,
    /// Non-stable field: minus part from F cap conj(F), plus part from
    /// the real subfield.
    NonStableReduction,
}

/// Predicted and observed ranks of the plus and minus eigenspaces.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub r2: usize,
    pub r2_prime: Option<usize>,
    pub prediction: PredictionBasis,
    #[serde(serialize_with = "ser_q")]
    pub predicted_minus: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub predicted_plus: BigRational,
    pub observed_minus: Option<usize>,
    pub observed_plus: Option<usize>,
    pub consistent: bool,
    pub zero_block: Option<ZeroBlockReport>,
    pub prec_bits: usize,
}

/// The block structure of the regulator matrix in the proof of the rank
/// formulas. Columns are the commuting representatives followed by the
/// pairs (tau, tau o delta) for the others; plus rows must vanish on the
/// commuting columns and plus/minus rows must be even/odd across each pair.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroBlockReport {
    pub commuting_columns: Vec<usize>,
    pub pair_columns: Vec<(usize, usize)>,
    /// Largest |D2| of a plus row at a commuting column.
    pub plus_block_max: f64,
    /// Largest |D2(tau delta x) - D2(tau x)| over plus rows and
    /// |D2(tau delta x) + D2(tau x)| over minus rows.
    pub pair_symmetry_max: f64,
    pub passes: bool,
}

fn half(a: usize, b: usize, plus: bool) -> BigRational {
    let n = if plus { a as i64 + b as i64 } else { a as i64 - b as i64 };
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// Predicted ranks of B_-(F) and B_+(F).
pub fn predicted_ranks(e: &EmbeddedField, ctx: &PrecisionContext) -> Result<RankReport> {
    let t = e.field().roots(ctx)?;
    if t.r2 == 0 {
        return Err(BlochError::TotallyReal);
    }
    let stab = e.is_conjugation_stable(ctx)?;
    let mut rep = RankReport {
        r2: t.r2,
        r2_prime: None,
        prediction: PredictionBasis::TheoremB,
        predicted_minus: BigRational::from_integer(0.into()),
        predicted_plus: BigRational::from_integer(0.into()),
        observed_minus: None,
        observed_plus: None,
        consistent: true,
        zero_block: None,
        prec_bits: ctx.prec_bits,
    };
    if e.is_real_embedding(ctx)? {
        rep.prediction = PredictionBasis::RealEmbedding;
        rep.predicted_plus = BigRational::from_integer(BigInt::from(t.r2));
        return Ok(rep);
    }
    if stab.stable {
        let r2p = e.commuting_pairs(ctx)?;
        rep.r2_prime = Some(r2p);
        rep.predicted_minus = half(t.r2, r2p, true);
        rep.predicted_plus = half(t.r2, r2p, false);
        return Ok(rep);
    }
    rep.prediction = PredictionBasis::NonStableReduction;
    let inter = e.conjugate_intersection(ctx)?;
    rep.predicted_minus = if inter.is_real {
        BigRational::from_integer(0.into())
    } else {
        let (sub, _) = e.subfield(&inter.basis, ctx)?;
        let st = sub.field().roots(ctx)?;
        let r2p = sub.commuting_pairs(ctx)?;
        half(st.r2, r2p, true)
    };
    let real = e.real_subfield(ctx)?;
    let (sub, _) = e.subfield(&real.basis, ctx)?;
    rep.predicted_plus = BigRational::from_integer(BigInt::from(sub.field().roots(ctx)?.r2));
    Ok(rep)
}

/// Splits each sample element into eigenspace parts and measures the rank
/// of their regulator images against the predictions.
pub fn verify_theorem_b(e: &EmbeddedField, sample: &[FormalSum], ctx: &PrecisionContext) -> Result<RankReport> {
    let mut rep = predicted_ranks(e, ctx)?;
    if !e.is_conjugation_stable(ctx)?.stable {
        return Err(BlochError::NotStable);
    }
    let mut plus = Vec::with_capacity(sample.len());
    let mut minus = Vec::with_capacity(sample.len());
    for (k, beta) in sample.iter().enumerate() {
        if beta.parent().field() != e.field() {
            return Err(BlochError::InvalidInput(format!("sample element {k} lies in a different field")));
        }
        if mu(beta, ctx)?.verdict != MuVerdict::ZeroExact {
            return Err(BlochError::MuNonzero(format!("sample element {k}: {beta}")));
        }
        let (p, m) = eigenspace_split(beta, ctx)?;
        plus.push(p);
        minus.push(m);
    }
    let mp = borel_matrix(&plus, e, ctx)?;
    let mm = borel_matrix(&minus, e, ctx)?;
    let op = mp.qrank(ctx).rank;
    let om = mm.qrank(ctx).rank;
    rep.observed_plus = Some(op);
    rep.observed_minus = Some(om);
    let zb = zero_block(e, &plus, &minus, ctx)?;
    rep.consistent = BigRational::from_integer(BigInt::from(om)) <= rep.predicted_minus
        && BigRational::from_integer(BigInt::from(op)) <= rep.predicted_plus
        && zb.as_ref().map_or(true, |z| z.passes);
    rep.zero_block = zb;
    Ok(rep)
}

fn zero_block(
    e: &EmbeddedField,
    plus: &[FormalSum],
    minus: &[FormalSum],
    ctx: &PrecisionContext,
) -> Result<Option<ZeroBlockReport>> {
    if e.is_real_embedding(ctx)? {
        return Ok(None);
    }
    let t = e.field().roots(ctx)?;
    let images = e.conjugation_images(ctx)?;
    let commuting: Vec<usize> = images.iter().filter(|&&(i, j)| j == t.conjugate_index(i)).map(|p| p.0).collect();
    let pairs: Vec<(usize, usize)> = images.iter().filter(|&&(i, j)| j != t.conjugate_index(i)).copied().collect();
    let mut passes = true;
    let mut block_max = Real::zero(ctx.prec_bits);
    let mut sym_max = Real::zero(ctx.prec_bits);
    for b in plus {
        let tol = d2_tolerance(b, ctx);
        for &i in &commuting {
            let v = d2_at(b, t.root(i), ctx)?.abs();
            passes &= v <= tol;
            block_max = block_max.max(&v);
        }
        for &(i, j) in &pairs {
            let d = (d2_at(b, t.root(j), ctx)? - d2_at(b, t.root(i), ctx)?).abs();
            passes &= d <= tol;
            sym_max = sym_max.max(&d);
        }
    }
    for b in minus {
        let tol = d2_tolerance(b, ctx);
        for &(i, j) in &pairs {
            let d = (d2_at(b, t.root(j), ctx)? + d2_at(b, t.root(i), ctx)?).abs();
            passes &= d <= tol;
            sym_max = sym_max.max(&d);
        }
    }
    Ok(Some(ZeroBlockReport {
        commuting_columns: commuting,
        pair_columns: pairs,
        plus_block_max: block_max.to_f64(),
        pair_symmetry_max: sym_max.to_f64(),
        passes,
    }))
}

/// Regulator matrices of the plus and minus parts of `sample`.
pub fn eigenspace_matrices(
    e: &EmbeddedField,
    sample: &[FormalSum],
    ctx: &PrecisionContext,
) -> Result<(RegulatorMatrix, RegulatorMatrix)> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for beta in sample {
        let (p, m) = eigenspace_split(beta, ctx)?;
        plus.push(p);
        minus.push(m);
    }
    Ok((borel_matrix(&plus, e, ctx)?, borel_matrix(&minus, e, ctx)?))
}
