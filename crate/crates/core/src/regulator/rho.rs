use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::matrix::{d2_at, d2_tolerance};
use crate::blochgrp::{mu, FormalSum, MuVerdict};
use crate::error::{BlochError, Result};
use crate::numeric::{rho_scalar, Complex, PrecisionContext, Real};
use crate::relations::rational_recognize;

/// Default denominator bound for rationality recognition.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 10_000;

/// How the kernel class 2 pi i ^ X is turned into a complex number.
pub const IDENTIFICATION: &str = "2*pi*i ^ X -> -pi*i*X (Im = volume, Re = Chern-Simons)";

/// Outcome of a bounded rationality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rationality {
    Rational {
        #[serde(serialize_with = "ser_q")]
        value: BigRational,
    },
    NoRelationFound {
        #[serde(serialize_with = "ser_int")]
        height: BigInt,
        prec_bits: usize,
    },
}

impl Rationality {
    pub fn is_rational(&self) -> bool {
        matches!(self, Rationality::Rational { .. })
    }

    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Rationality::Rational { value } => Some(value),
            Rationality::NoRelationFound { .. } => None,
        }
    }
}

fn ser_q<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_int<S: Serializer>(q: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_long<S: Serializer>(r: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_decimal(50))
}

fn ser_short<S: Serializer>(r: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.3e}", r.to_f64()))
}

/// Volume and Chern-Simons class of a class with vanishing mu.
#[derive(Debug, Clone, Serialize)]
pub struct CsClass {
    #[serde(serialize_with = "ser_long")]
    pub volume: Real,
    /// Re(rho)/pi^2 taken mod Q: zero once recognised as rational,
    /// otherwise the representative below.
    #[serde(serialize_with = "ser_long")]
    pub cs_over_pi2: Real,
    /// Re(rho)/pi^2 in [0, 1) for the chosen multiplicative basis; only its
    /// class mod Q is independent of that choice.
    #[serde(serialize_with = "ser_long")]
    pub cs_representative: Real,
    /// Verdict on the class mod Q, so a rational value is always 0.
    pub rationality: Rationality,
    pub representative_rational: Option<String>,
    /// sum n D2(sigma z), computed independently of the class.
    #[serde(serialize_with = "ser_long")]
    pub d2_sum: Real,
    #[serde(serialize_with = "ser_short")]
    pub volume_discrepancy: Real,
    pub prec_bits: usize,
    pub identification: &'static str,
}

/// RATIONAL(p/q) when `x` is recognised with q <= `max_den`, reduced to [0, 1).
pub fn cs_rationality_report(x: &Real, max_den: &BigInt, ctx: &PrecisionContext) -> Result<Rationality> {
    Ok(match rational_recognize(x, max_den, ctx)? {
        Some(q) => {
            let frac = &q - BigRational::from_integer(q.numer().div_floor(q.denom()));
            Rationality::Rational { value: frac }
        }
        None => Rationality::NoRelationFound { height: max_den.clone(), prec_bits: ctx.prec_bits },
    })
}

pub fn rho_class(beta: &FormalSum, ctx: &PrecisionContext) -> Result<CsClass> {
    rho_class_with(beta, &BigInt::from(DEFAULT_MAX_DENOMINATOR), ctx)
}

/// The Bloch-map class of `beta`: log z ^ log(1 - z) is rewritten over the
/// exact basis {2 pi i, log u_1, ..., log u_t}; the u ^ u part vanishes
/// because mu(beta) = 0 and what remains is 2 pi i ^ X.
pub fn rho_class_with(beta: &FormalSum, max_den: &BigInt, ctx: &PrecisionContext) -> Result<CsClass> {
    let m = mu(beta, ctx)?;
    if m.verdict != MuVerdict::ZeroExact {
        return Err(BlochError::MuNonzero(format!("mu({beta}) is not zero")));
    }
    let basis = &m.wedge.basis;
    let mut c = *ctx;
    let mut last_err = None;
    for _ in 0..3 {
        match assemble(beta, basis, &c) {
            Ok(x) => return finish(beta, x, max_den, &c),
            Err(e @ BlochError::RecognitionFailed(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        c = c.doubled();
    }
    Err(last_err.expect("loop ran"))
}

fn assemble(beta: &FormalSum, basis: &crate::blochgrp::MultiplicativeBasis, c: &PrecisionContext) -> Result<Complex> {
    let e = beta.parent();
    let sigma = e.root(c)?;
    let p = c.working();
    let two_pi = Real::pi(p).mul_pow2(1);
    let ell: Vec<Complex> = basis.generators().iter().map(|u| u.embed(&sigma).ln()).collect();
    let tol = Real::pow2(-((c.prec_bits / 2) as i64), p);
    // L_s and the rational q_s with Log sigma(s) = L_s + 2 pi i q_s
    let mut lin = Vec::with_capacity(basis.elements().len());
    let mut qs = Vec::with_capacity(basis.elements().len());
    for (i, s) in basis.elements().iter().enumerate() {
        let mut l = Complex::zero(p);
        for (ex, lj) in basis.exponents(i).iter().zip(&ell) {
            if !ex.is_zero() {
                l = &l + &lj.scale(&Real::from_bigint(ex, p));
            }
        }
        let d = &s.embed(&sigma).ln() - &l;
        let ord = basis.torsion_order(i) as i64;
        let scaled = &(&d.im / &two_pi) * &Real::from_i64(ord, p);
        let k = scaled.round_bigint();
        let off = (&scaled - &Real::from_bigint(&k, p)).abs();
        if d.re.abs() > tol || off > tol {
            return Err(BlochError::RecognitionFailed(format!(
                "the 2*pi*i coefficient of log({s}) is not a multiple of 1/{ord}"
            )));
        }
        lin.push(l);
        qs.push(BigRational::new(k, BigInt::from(ord)));
    }
    let one = e.field().one();
    let mut x = Complex::zero(p);
    for (z, n) in beta.terms() {
        let w = &one - z;
        let iz = basis.index_of(z).expect("support in basis");
        let iw = basis.index_of(&w).expect("complement in basis");
        let r = rho_scalar(&z.embed(&sigma), &c.at_least(p))?;
        let qz = Real::from_rational(&qs[iz], p);
        let qw = Real::from_rational(&qs[iw], p);
        let term = &(&(&lin[iw].scale(&qz) - &lin[iz].scale(&qw)) + &r.c.with_prec(p));
        x = &x + &term.scale(&Real::from_rational(n, p));
    }
    Ok(x)
}

fn finish(beta: &FormalSum, x: Complex, max_den: &BigInt, c: &PrecisionContext) -> Result<CsClass> {
    let p = c.prec_bits;
    let pi = Real::pi(x.prec());
    // W = -pi i X
    let volume = -(&x.re * &pi);
    let cs = &x.im * &pi;
    let raw = &cs / &(&pi * &pi);
    let floor = Real::from_bigint(&raw.floor_bigint(), raw.prec());
    let cs_representative = (&raw - &floor).with_prec(p);
    let report = cs_rationality_report(&raw.with_prec(p), max_den, c)?;
    let representative_rational = report.value().map(|v| v.to_string());
    let (cs_over_pi2, rationality) = match report {
        Rationality::Rational { .. } => {
            (Real::zero(p), Rationality::Rational { value: BigRational::zero() })
        }
        other => (cs_representative.clone(), other),
    };
    let root = beta.parent().root(c)?;
    let d2 = d2_at(beta, &root, c)?;
    let volume = volume.with_prec(p);
    let volume_discrepancy = (&volume - &d2).abs();
    if volume_discrepancy > d2_tolerance(beta, c).mul_pow2(8) {
        return Err(BlochError::Internal(format!(
            "volume {} disagrees with the D2 sum {}",
            volume.to_decimal(30),
            d2.to_decimal(30)
        )));
    }
    Ok(CsClass {
        volume,
        cs_over_pi2,
        cs_representative,
        rationality,
        representative_rational,
        d2_sum: d2,
        volume_discrepancy,
        prec_bits: p,
        identification: IDENTIFICATION,
    })
}
