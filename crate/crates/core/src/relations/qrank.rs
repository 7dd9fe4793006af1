//! Numerical rank of real matrices via one-sided Jacobi SVD.

use serde::Serialize;

use crate::numeric::{PrecisionContext, Real};

/// Rank together with the singular values that justify it.
#[derive(Debug, Clone)]
pub struct QRankReport {
    pub rank: usize,
    /// Singular values, descending.
    pub singular_values: Vec<Real>,
    /// Cut-off 2^(-prec/4) * sigma_max.
    pub threshold: Real,
    /// Ratio of the smallest kept to the largest discarded singular value,
    /// when both exist.
    pub gap: Option<Real>,
}

/// Serializable summary of a [`QRankReport`].
#[derive(Debug, Clone, Serialize)]
pub struct QRankSummary {
    pub rank: usize,
    pub singular_values: Vec<String>,
    pub threshold: String,
    pub log2_gap: Option<f64>,
}

impl QRankReport {
    pub fn summary(&self) -> QRankSummary {
        QRankSummary {
            rank: self.rank,
            singular_values: self.singular_values.iter().map(|s| format!("{:.6e}", s.to_f64())).collect(),
            threshold: format!("{:.3e}", self.threshold.to_f64()),
            log2_gap: self.gap.as_ref().map(|g| g.exponent().unwrap_or(i64::MAX) as f64),
        }
    }
}

fn dot(a: &[Real], b: &[Real], prec: usize) -> Real {
    a.iter().zip(b).fold(Real::zero(prec), |s, (x, y)| s + x * y)
}

/// Singular values (descending) of the matrix whose rows are `rows`.
pub fn singular_values(rows: &[Vec<Real>], ctx: &PrecisionContext) -> Vec<Real> {
    let prec = ctx.working();
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // columns of A, or of A^T when A is wide
    let mut cols: Vec<Vec<Real>> = if n <= m {
        (0..n).map(|j| rows.iter().map(|r| r[j].with_prec(prec)).collect()).collect()
    } else {
        rows.iter().map(|r| r.iter().map(|x| x.with_prec(prec)).collect()).collect()
    };
    let k = cols.len();
    let eps = Real::pow2(-(prec as i64) + 8, prec);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = dot(&cols[p], &cols[p], prec);
                let beta = dot(&cols[q], &cols[q], prec);
                let gamma = dot(&cols[p], &cols[q], prec);
                if gamma.is_zero() || gamma.abs() <= &eps * &(&alpha * &beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (&beta - &alpha) / &gamma.mul_pow2(1);
                let root = (Real::one(prec) + &zeta * &zeta).sqrt();
                let t = if zeta.is_negative() {
                    -(Real::one(prec) / (&root - &zeta))
                } else {
                    Real::one(prec) / (&zeta + &root)
                };
                let c = Real::one(prec) / (Real::one(prec) + &t * &t).sqrt();
                let s = &c * &t;
                let (cp, cq) = (cols[p].clone(), cols[q].clone());
                cols[p] = cp.iter().zip(&cq).map(|(x, y)| &c * x - &s * y).collect();
                cols[q] = cp.iter().zip(&cq).map(|(x, y)| &s * x + &c * y).collect();
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<Real> = cols.iter().map(|c| dot(c, c, prec).sqrt().with_prec(ctx.prec_bits)).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Numerical rank with threshold 2^(-prec/4) * |m|_2.
pub fn qrank(rows: &[Vec<Real>], ctx: &PrecisionContext) -> QRankReport {
    let sv = singular_values(rows, ctx);
    let prec = ctx.prec_bits;
    let smax = sv.first().cloned().unwrap_or_else(|| Real::zero(prec));
    let threshold = &smax * &Real::pow2(-((prec / 4) as i64), prec);
    let rank = if smax.is_zero() { 0 } else { sv.iter().filter(|s| **s > threshold).count() };
    let gap = if rank > 0 && rank < sv.len() {
        let dropped = &sv[rank];
        (!dropped.is_zero()).then(|| &sv[rank - 1] / dropped)
    } else {
        None
    };
    QRankReport { rank, singular_values: sv, threshold, gap }
}
