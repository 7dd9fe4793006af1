//! Integer-relation detection by LLL on the lattice spanned by
//! `[e_i | round(2^(prec/2) x_i)]`.
//!
//! A reduced row is accepted as a relation when its full-precision
//! residual is at most 2^(-prec/2) max|x|. Non-existence claims are backed
//! by an exclusion certificate: every lattice vector outside the span of
//! the accepted relations has norm at least the smallest Gram-Schmidt norm
//! of the remaining rows, and a genuine relation of height <= H maps to a
//! lattice vector of squared norm at most n H^2 + d (n H / 2 + 1)^2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lll::{gram_schmidt_norms, lll_reduce_with_transform};
use super::matrix::IntegerMatrix;
use crate::error::{BlochError, Result};
use crate::numeric::{Complex, PrecisionContext, Real};

/// An integer relation sum m_i x_i = 0 detected numerically.
#[derive(Debug, Clone, Serialize)]
pub struct Relation {
    #[serde(serialize_with = "ser_bigints")]
    pub coefficients: Vec<BigInt>,
    /// Achieved |sum m_i x_i| (max over coordinates).
    #[serde(serialize_with = "ser_real")]
    pub residual: Real,
    #[serde(serialize_with = "ser_bigint")]
    pub height: BigInt,
}

/// Outcome of a bounded relation search. `NoneFound` is always
/// qualified by the bounds it was established under.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum RelationOutcome {
    Found(Relation),
    NoneFound {
        #[serde(serialize_with = "ser_bigint")]
        height_bound: BigInt,
        prec_bits: usize,
    },
}

impl RelationOutcome {
    pub fn relation(&self) -> Option<&Relation> {
        match self {
            RelationOutcome::Found(r) => Some(r),
            RelationOutcome::NoneFound { .. } => None,
        }
    }
}

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) fn ser_real<S: serde::Serializer>(v: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_decimal(20))
}

/// Relation lattice detected among vectors of real coordinates.
#[derive(Debug, Clone)]
pub struct RelationLattice {
    /// LLL-reduced basis of the detected relations.
    pub relations: Vec<Vec<BigInt>>,
    /// Smallest squared Gram-Schmidt norm among the non-relation rows
    /// (`None` when every row is a relation).
    pub exclusion_norm_sq: Option<BigRational>,
    pub prec_bits: usize,
    n: usize,
    d: usize,
    max_abs: Real,
}

impl RelationLattice {
    /// True when every relation of height <= `h` is certified to lie in the
    /// rational span of `relations`.
    pub fn excludes_height(&self, h: &BigInt) -> bool {
        let Some(g) = &self.exclusion_norm_sq else {
            return true;
        };
        let n = BigInt::from(self.n);
        let nh = &n * h;
        // slack for the scaled representation error of the inputs
        let slack = {
            let e = self.max_abs.exponent().unwrap_or(0).max(0) as u64;
            let half = (self.prec_bits / 2) as u64;
            if e + (nh.bits()) + 2 >= half { BigInt::one() << (e + nh.bits() + 2 - half) as usize } else { BigInt::one() }
        };
        let per_coord = (&nh + 1) / 2 + slack + 1;
        let bound = &n * h * h + BigInt::from(self.d) * &per_coord * &per_coord;
        g > &BigRational::from_integer(bound)
    }

    pub fn rank(&self) -> usize {
        self.relations.len()
    }
}

fn residual_of(m: &[BigInt], values: &[Vec<Real>], prec: usize) -> Real {
    let d = values[0].len();
    let mut worst = Real::zero(prec);
    for c in 0..d {
        let mut s = Real::zero(prec);
        for (mi, v) in m.iter().zip(values) {
            if !mi.is_zero() {
                s = &s + &(&v[c] * &Real::from_bigint(mi, prec));
            }
        }
        worst = worst.max(&s.abs());
    }
    worst
}

/// Runs the lattice search on `values` (each a vector of `d` real
/// coordinates) at the precision carried by `ctx`.
pub fn relation_lattice(values: &[Vec<Real>], ctx: &PrecisionContext) -> Result<RelationLattice> {
    let n = values.len();
    if n == 0 {
        return Err(BlochError::InvalidInput("relation search needs at least one value".into()));
    }
    let d = values[0].len();
    if d == 0 || values.iter().any(|v| v.len() != d) {
        return Err(BlochError::InvalidInput("relation search values must share one dimension".into()));
    }
    let prec = ctx.prec_bits;
    let vals: Vec<Vec<Real>> = values.iter().map(|v| v.iter().map(|x| x.with_prec(prec + 32)).collect()).collect();
    let max_abs = vals.iter().flatten().fold(Real::zero(prec), |m, x| m.max(&x.abs()));
    let scale_bits = (prec / 2) as i64;
    let mut rows = Vec::with_capacity(n);
    for (i, v) in vals.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + d];
        row[i] = BigInt::one();
        for (c, x) in v.iter().enumerate() {
            row[n + c] = x.mul_pow2(scale_bits).round_bigint();
        }
        rows.push(row);
    }
    let basis = IntegerMatrix::from_rows(rows)?;
    let reduced = lll_reduce_with_transform(&basis)?.reduced;
    let tol = Real::pow2(-scale_bits, prec + 32) * Real::one(prec + 32).max(&max_abs);
    let mut rel_rows = Vec::new();
    let mut other_rows = Vec::new();
    for i in 0..n {
        let row = reduced.row(i);
        let m: Vec<BigInt> = row[..n].to_vec();
        if m.iter().all(Zero::is_zero) {
            other_rows.push(row.to_vec());
            continue;
        }
        if residual_of(&m, &vals, prec + 32) <= tol {
            rel_rows.push(row.to_vec());
        } else {
            other_rows.push(row.to_vec());
        }
    }
    let r = rel_rows.len();
    let exclusion_norm_sq = if other_rows.is_empty() {
        None
    } else {
        let mut ordered = rel_rows.clone();
        ordered.extend(other_rows);
        let gs = gram_schmidt_norms(&ordered)?;
        gs[r..].iter().min().cloned()
    };
    Ok(RelationLattice {
        relations: rel_rows.into_iter().map(|row| row[..n].to_vec()).collect(),
        exclusion_norm_sq,
        prec_bits: prec,
        n,
        d,
        max_abs,
    })
}

pub(crate) fn height(m: &[BigInt]) -> BigInt {
    m.iter().map(|x| x.abs()).max().unwrap_or_default()
}

/// Sign-normalises so the first nonzero entry is positive.
pub(crate) fn normalize_sign(m: &mut [BigInt]) {
    if let Some(first) = m.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in m.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Picks the canonical representative among small combinations of the
/// relation basis: minimal height, then lexicographically smallest with a
/// positive leading entry.
pub(crate) fn best_relation(basis: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let r = basis.len();
    if r == 0 {
        return None;
    }
    let n = basis[0].len();
    let range: i64 = if r <= 3 { 2 } else { 1 };
    let mut best: Option<Vec<BigInt>> = None;
    let mut coeffs = vec![-range; r];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let mut v = vec![BigInt::zero(); n];
            for (c, b) in coeffs.iter().zip(basis) {
                if *c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += y * c;
                    }
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                normalize_sign(&mut v);
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let (hv, hb) = (height(&v), height(b));
                        hv < hb || (hv == hb && v < *b)
                    }
                };
                if better {
                    best = Some(v);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return best;
            }
            coeffs[i] += 1;
            if coeffs[i] > range {
                coeffs[i] = -range;
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn as_coordinates(xs: &[Complex]) -> Vec<Vec<Real>> {
    let complex = xs.iter().any(|x| !x.im.is_zero());
    xs.iter()
        .map(|x| if complex { vec![x.re.clone(), x.im.clone()] } else { vec![x.re.clone()] })
        .collect()
}

/// Minimum precision (bits) accepted for `len` values and height bound `h`.
pub fn required_precision(len: usize, h: &BigInt) -> usize {
    let log2h = if h <= &BigInt::one() { 0.0 } else { crate::numeric::rational_abs_log2(&BigRational::from_integer(h.clone())) };
    (4.0 * len as f64 * log2h).ceil() as usize
}

fn search(values: &[Vec<Real>], height_bound: &BigInt, ctx: &PrecisionContext) -> Result<RelationOutcome> {
    if values.len() < 2 {
        return Err(BlochError::InvalidInput("relation search needs at least two values".into()));
    }
    if !height_bound.is_positive() {
        return Err(BlochError::InvalidInput("height bound must be positive".into()));
    }
    let need = required_precision(values.len(), height_bound);
    if ctx.prec_bits < need {
        return Err(BlochError::InsufficientPrecision(format!(
            "{} bits given, {need} bits needed for {} values at height {height_bound}",
            ctx.prec_bits,
            values.len()
        )));
    }
    let lat = relation_lattice(values, ctx)?;
    if let Some(m) = best_relation(&lat.relations) {
        if &height(&m) <= height_bound {
            let residual = residual_of(&m, values, ctx.prec_bits);
            return Ok(RelationOutcome::Found(Relation { height: height(&m), coefficients: m, residual }));
        }
    }
    if lat.excludes_height(height_bound) {
        Ok(RelationOutcome::NoneFound { height_bound: height_bound.clone(), prec_bits: ctx.prec_bits })
    } else {
        Err(BlochError::InsufficientPrecision(format!(
            "no relation found but {} bits cannot exclude relations of height <= {height_bound}",
            ctx.prec_bits
        )))
    }
}

/// Searches for a nonzero integer vector m with |m|_inf <= `height_bound`
/// and sum m_i x_i = 0. Complex inputs give simultaneous relations on the
/// real and imaginary parts.
pub fn find_integer_relation(xs: &[Complex], height_bound: &BigInt, ctx: &PrecisionContext) -> Result<RelationOutcome> {
    search(&as_coordinates(xs), height_bound, ctx)
}

/// Same as [`find_integer_relation`] for vector-valued inputs.
pub fn find_vector_relation(values: &[Vec<Real>], height_bound: &BigInt, ctx: &PrecisionContext) -> Result<RelationOutcome> {
    search(values, height_bound, ctx)
}

/// Relation search whose result must survive re-evaluation of the inputs
/// at twice the precision, with residual <= 2^(-prec) max|x|. A relation
/// that fails the check is rejected and the search retried at doubled
/// precision (up to `ctx.retry_doublings` times).
pub fn find_integer_relation_verified<F>(eval: F, height_bound: &BigInt, ctx: &PrecisionContext) -> Result<RelationOutcome>
where
    F: Fn(&PrecisionContext) -> Result<Vec<Complex>>,
{
    let mut c = *ctx;
    for _ in 0..=ctx.retry_doublings {
        let xs = eval(&c)?;
        let out = find_integer_relation(&xs, height_bound, &c)?;
        let RelationOutcome::Found(rel) = &out else {
            return Ok(out);
        };
        let hi = c.doubled();
        let ys = as_coordinates(&eval(&hi)?);
        let max_abs = ys.iter().flatten().fold(Real::zero(hi.prec_bits), |m, x| m.max(&x.abs()));
        let res = residual_of(&rel.coefficients, &ys, hi.prec_bits);
        if res <= Real::pow2(-(c.prec_bits as i64), hi.prec_bits) * Real::one(hi.prec_bits).max(&max_abs) {
            return Ok(out);
        }
        c = hi;
    }
    Err(BlochError::CertificationFailed(format!(
        "relation did not survive precision doubling up to {} bits",
        c.prec_bits
    )))
}
