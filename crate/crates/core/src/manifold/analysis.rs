use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::record::{ManifoldRecord, ValidationReport};
use crate::error::Result;
use crate::numberfield::EmbeddingClass;
use crate::numeric::{PrecisionContext, Real};
use crate::regulator::{d2_at, rho_class_with, CsClass};

fn ser_long<S: Serializer>(r: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_decimal(50))
}

/// Rationality verdict for the Chern-Simons invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    RationalByTheoremA,
    ConjecturedIrrational,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub label: EmbeddingClass,
    pub degree: usize,
    pub r1: usize,
    pub r2: usize,
    pub r2_prime: Option<usize>,
    pub stable: bool,
    pub real_subfield_degree: usize,
    pub conjugate_intersection_degree: usize,
    pub conjugate_intersection_real: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport {
    pub name: String,
    pub tetrahedra: usize,
    #[serde(serialize_with = "ser_long")]
    pub volume: Real,
    pub cs: CsClass,
    pub classification: Classification,
    pub verdict: Verdict,
    pub verdict_reason: &'static str,
    pub validation: ValidationReport,
    pub prec_bits: usize,
}

/// Volume, Chern-Simons class, field classification and verdict of a
/// validated record.
pub fn analyze(m: &ManifoldRecord, max_den: &BigInt, ctx: &PrecisionContext) -> Result<ManifoldReport> {
    let beta = m.bloch_invariant()?;
    let e = &m.field;
    let volume = d2_at(&beta, &e.root(ctx)?, ctx)?;
    let cs = rho_class_with(&beta, max_den, ctx)?;
    let t = e.field().roots(ctx)?;
    let label = e.classify(ctx)?;
    let stable = e.is_conjugation_stable(ctx)?.stable;
    let inter = e.conjugate_intersection(ctx)?;
    let classification = Classification {
        label,
        degree: e.degree(),
        r1: t.r1,
        r2: t.r2,
        r2_prime: if stable { Some(e.commuting_pairs(ctx)?) } else { None },
        stable,
        real_subfield_degree: e.real_subfield(ctx)?.degree,
        conjugate_intersection_degree: inter.degree,
        conjugate_intersection_real: inter.is_real,
    };
    let (verdict, verdict_reason) = match label {
        EmbeddingClass::CmField => (Verdict::RationalByTheoremA, "cm_field"),
        EmbeddingClass::CmEmbedding => (Verdict::RationalByTheoremA, "cm_embedding"),
        _ if e.degree() % 2 == 1 => (Verdict::ConjecturedIrrational, "odd_degree"),
        _ if inter.is_real => (Verdict::ConjecturedIrrational, "conjugate_intersection_real"),
        _ => (Verdict::Unknown, "undecided"),
    };
    Ok(ManifoldReport {
        name: m.name.clone(),
        tetrahedra: m.shapes.len(),
        volume,
        cs,
        classification,
        verdict,
        verdict_reason,
        validation: m.validation().expect("bloch_invariant checked validation").clone(),
        prec_bits: ctx.prec_bits,
    })
}
