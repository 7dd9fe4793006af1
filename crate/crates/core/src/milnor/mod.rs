//! Cyclotomic elements [zeta_N^j] of the Bloch group and bounded searches
//! for rational relations among their values D2(e^(2 pi i j/N)).
//!
//! An empty relation list is evidence consistent with Milnor's conjecture
//! at the stated height and precision, never a proof.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::blochgrp::FormalSum;
use crate::error::{BlochError, Result};
use crate::numberfield::{euler_phi, EmbeddedField, NumberField};
use crate::numeric::{bloch_wigner_d2, clausen, Complex, PrecisionContext, Real};
use crate::regulator::borel_matrix;
use crate::relations::{find_vector_relation, required_precision, Relation, RelationOutcome};

fn ser_values<S: Serializer>(v: &[(u64, Real)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (j, d) in v {
        seq.serialize_element(&(j, d.to_decimal(40)))?;
    }
    seq.end()
}

fn ser_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_short<S: Serializer>(r: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.3e}", r.to_f64()))
}

/// The exponents 0 < j < N/2 coprime to N.
pub fn cyclotomic_exponents(n: u64) -> Vec<u64> {
    (1..n).filter(|&j| 2 * j < n && j.gcd(&n) == 1).collect()
}

/// Q(zeta_N) embedded at e^(2 pi i/N).
pub fn cyclotomic_field(n: u64, ctx: &PrecisionContext) -> Result<EmbeddedField> {
    if n < 3 {
        return Err(BlochError::InvalidInput(format!("N = {n}: need N >= 3")));
    }
    let f = NumberField::cyclotomic(n)?;
    let t = f.roots(ctx)?;
    let p = ctx.working();
    let target = Complex::cis(&(&Real::pi(p).mul_pow2(1) / &Real::from_i64(n as i64, p)));
    let idx = (0..t.len())
        .min_by(|&a, &b| {
            let da = (&t.root(a).with_prec(p) - &target).abs();
            let db = (&t.root(b).with_prec(p) - &target).abs();
            da.partial_cmp(&db).expect("finite distances")
        })
        .expect("nonempty root table");
    EmbeddedField::new(f, idx)
}

/// The phi(N)/2 elements [zeta^j] with 0 < j < N/2, gcd(j, N) = 1.
pub fn cyclotomic_basis(n: u64, ctx: &PrecisionContext) -> Result<(EmbeddedField, Vec<FormalSum>)> {
    let e = cyclotomic_field(n, ctx)?;
    let z = e.field().gen();
    let basis = cyclotomic_exponents(n)
        .into_iter()
        .map(|j| FormalSum::symbol(&e, z.pow(j as i64)?))
        .collect::<Result<_>>()?;
    Ok((e, basis))
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclotomicScan {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(serialize_with = "ser_values")]
    pub values: Vec<(u64, Real)>,
    pub relations_found: Vec<Relation>,
    #[serde(serialize_with = "ser_int")]
    pub height: BigInt,
    /// Precision at which the search ran; raised above the request when the
    /// number of values demands it.
    pub prec_bits: usize,
    pub requested_prec_bits: usize,
    /// Largest |D2(e^(i theta)) - Cl2(theta)| over the values.
    #[serde(serialize_with = "ser_short")]
    pub clausen_agreement: Real,
    /// Rank of the regulator matrix of the basis over all complex places.
    pub regulator_rank: usize,
    pub consistent_with_conjecture: bool,
}

/// Relations of height at most `height` among real `values`, each one
/// confirmed at doubled precision.
pub fn relation_scan(values: &[Real], height: &BigInt, ctx: &PrecisionContext) -> Result<Vec<Relation>> {
    if values.len() < 2 {
        return Ok(vec![]);
    }
    let rows: Vec<Vec<Real>> = values.iter().map(|v| vec![v.clone()]).collect();
    match find_vector_relation(&rows, height, ctx)? {
        RelationOutcome::Found(r) => Ok(vec![r]),
        _ => Ok(vec![]),
    }
}

/// `values` with k * values[index] appended, a planted relation of height k.
pub fn plant_relation(values: &[Real], index: usize, k: i64) -> Vec<Real> {
    let mut out = values.to_vec();
    let v = &values[index];
    out.push(v * &Real::from_i64(k, v.prec()));
    out
}

/// Working context for a relation search among `len` values at `height`.
pub fn scan_context(len: usize, height: &BigInt, ctx: &PrecisionContext) -> PrecisionContext {
    ctx.at_least(required_precision(len.max(2), height) + 32)
}

pub fn milnor_scan(n: u64, height: &BigInt, ctx: &PrecisionContext) -> Result<CyclotomicScan> {
    let js = cyclotomic_exponents(n);
    if js.is_empty() {
        return Err(BlochError::InvalidInput(format!("N = {n}: no exponents 0 < j < N/2 coprime to N")));
    }
    debug_assert_eq!(js.len() as u64, euler_phi(n) / 2);
    let c = scan_context(js.len(), height, ctx);
    let p = c.working();
    let two_pi = Real::pi(p).mul_pow2(1);
    let mut values = Vec::with_capacity(js.len());
    let mut agreement = Real::zero(c.prec_bits);
    for (&j, d) in js.iter().zip(milnor_values(n, &js, &c)?) {
        let theta = &(&two_pi * &Real::from_i64(j as i64, p)) / &Real::from_i64(n as i64, p);
        agreement = agreement.max(&(&d - &clausen(&theta, &c)).abs());
        values.push((j, d));
    }
    if agreement > c.tol().mul_pow2(16) {
        return Err(BlochError::Internal(format!(
            "D2 and the Clausen series disagree by {} at N = {n}",
            agreement.to_decimal(10)
        )));
    }
    let reals: Vec<Real> = values.iter().map(|(_, v)| v.clone()).collect();
    let mut relations = Vec::new();
    for r in relation_scan(&reals, height, &c)? {
        // keep only relations that survive doubled precision
        let c2 = c.doubled();
        let again = milnor_values(n, &js, &c2)?;
        let residual = r
            .coefficients
            .iter()
            .zip(&again)
            .fold(Real::zero(c2.prec_bits), |acc, (m, v)| &acc + &(v * &Real::from_bigint(m, c2.prec_bits)));
        if residual.abs() <= c2.tol().mul_pow2(32) {
            relations.push(r);
        }
    }
    if js.len() == 1 && reals[0].abs() <= c.tol().mul_pow2(16) {
        return Err(BlochError::Internal(format!("D2(zeta_{n}) vanishes numerically")));
    }
    let (e, basis) = cyclotomic_basis(n, &c)?;
    let regulator_rank = borel_matrix(&basis, &e, &c)?.qrank(&c).rank;
    Ok(CyclotomicScan {
        n,
        values,
        consistent_with_conjecture: relations.is_empty(),
        relations_found: relations,
        height: height.clone(),
        prec_bits: c.prec_bits,
        requested_prec_bits: ctx.prec_bits,
        clausen_agreement: agreement,
        regulator_rank,
    })
}

fn milnor_values(n: u64, js: &[u64], c: &PrecisionContext) -> Result<Vec<Real>> {
    let p = c.working();
    let two_pi = Real::pi(p).mul_pow2(1);
    js.iter()
        .map(|&j| {
            let theta = &(&two_pi * &Real::from_i64(j as i64, p)) / &Real::from_i64(n as i64, p);
            bloch_wigner_d2(&Complex::cis(&theta), c)
        })
        .collect()
}

/// The scan verdict in words, always with its bounds.
pub fn scan_summary(s: &CyclotomicScan) -> String {
    if s.consistent_with_conjecture {
        format!(
            "N = {}: no relation among {} values at height <= {} and {} bits (consistent with the conjecture, not a proof)",
            s.n,
            s.values.len(),
            s.height,
            s.prec_bits
        )
    } else {
        format!("N = {}: {} relation(s) found at height <= {}, {} bits", s.n, s.relations_found.len(), s.height, s.prec_bits)
    }
}

