//! Certified isolation of all complex roots of a squarefree polynomial.
//!
//! Approximations come from Aberth iteration. Each approximation z is
//! wrapped in the disk of radius n |f(z) / f'(z)|, which always contains a
//! root; when the n disks are pairwise disjoint each holds exactly one.
//! Roots whose disk meets the real axis are snapped to it and the count of
//! such disks is checked against an exact Sturm count.

use std::cmp::Ordering;

use serde::Serialize;

use super::poly::QPoly;
use crate::error::{BlochError, Result};
use crate::numeric::{Complex, Real};

/// An isolating disk.
#[derive(Debug, Clone)]
pub struct RootDisk {
    pub center: Complex,
    pub radius: Real,
}

impl RootDisk {
    pub fn contains(&self, z: &Complex) -> bool {
        (z - &self.center).abs() <= self.radius
    }

    fn disjoint(&self, o: &RootDisk) -> bool {
        (&self.center - &o.center).abs() > &self.radius + &o.radius
    }

    fn meets_real_axis(&self) -> bool {
        self.center.im.abs() <= self.radius
    }
}

/// Whether a root is real, or which member of a conjugate pair it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Real,
    /// Negative imaginary part; its conjugate sits at `partner`.
    Lower { partner: usize },
    Upper { partner: usize },
}

/// All roots in canonical order: real roots ascending, then conjugate pairs
/// by (real part, |imaginary part|), lower half-plane member first.
#[derive(Debug, Clone)]
pub struct RootTable {
    pub disks: Vec<RootDisk>,
    pub kinds: Vec<RootKind>,
    pub r1: usize,
    pub r2: usize,
    pub prec: usize,
}

impl RootTable {
    pub fn root(&self, i: usize) -> &Complex {
        &self.disks[i].center
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// Index of the conjugate root.
    pub fn conjugate_index(&self, i: usize) -> usize {
        match self.kinds[i] {
            RootKind::Real => i,
            RootKind::Lower { partner } | RootKind::Upper { partner } => partner,
        }
    }

    /// Index of the unique disk containing `z`, if any.
    pub fn locate(&self, z: &Complex) -> Option<usize> {
        let hits: Vec<usize> = (0..self.len()).filter(|&i| self.disks[i].contains(z)).collect();
        (hits.len() == 1).then(|| hits[0])
    }

    /// Index of the root nearest to `z`, provided `z` is closer to it than
    /// a quarter of the smallest root separation.
    pub fn nearest(&self, z: &Complex) -> Option<usize> {
        let d: Vec<Real> = self.disks.iter().map(|k| (z - &k.center).abs()).collect();
        let (best, dist) = d.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))?;
        if self.len() == 1 {
            return Some(best);
        }
        let sep = self.separation();
        (dist < &sep.mul_pow2(-2)).then_some(best)
    }

    /// Smallest distance between two distinct root approximations.
    pub fn separation(&self) -> Real {
        let mut best: Option<Real> = None;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d = (&self.disks[i].center - &self.disks[j].center).abs();
                best = Some(match best {
                    Some(b) if b < d => b,
                    _ => d,
                });
            }
        }
        best.unwrap_or_else(|| Real::one(self.prec))
    }
}

fn cauchy_bound(f: &QPoly, prec: usize) -> Real {
    let lead = f.lead();
    let m = f.coeffs()[..f.degree()]
        .iter()
        .map(|c| Real::from_rational(&(c / &lead), prec).abs())
        .fold(Real::zero(prec), |a, b| a.max(&b));
    Real::one(prec) + m
}

fn aberth(f: &QPoly, prec: usize) -> Vec<Complex> {
    let n = f.degree();
    let df = f.derivative();
    let r = cauchy_bound(f, prec).mul_pow2(-1);
    // initial points on a circle, rotated off the axes
    let two_pi = Real::pi(prec).mul_pow2(1);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = &two_pi * &Real::from_i64(k as i64, prec) / (n as i64) + Real::from_f64(0.4, prec);
            Complex::cis(&theta).scale(&r)
        })
        .collect();
    let tiny = Real::pow2(-(prec as i64) + 4, prec);
    for _ in 0..(50 + 4 * prec) {
        let mut moved = Real::zero(prec);
        for k in 0..n {
            let fz = f.eval_complex(&z[k]);
            if fz.is_zero() {
                continue;
            }
            let ratio = &fz / &df.eval_complex(&z[k]);
            let mut s = Complex::zero(prec);
            for j in 0..n {
                if j != k {
                    let d = &z[k] - &z[j];
                    if !d.is_zero() {
                        s = &s + &d.recip();
                    }
                }
            }
            let denom = &Complex::one(prec) - &(&ratio * &s);
            let w = if denom.is_zero() { ratio } else { &ratio / &denom };
            moved = moved.max(&w.abs());
            z[k] = &z[k] - &w;
        }
        if moved <= &tiny * &r.max(&Real::one(prec)) {
            break;
        }
    }
    z
}

fn disk_for(f: &QPoly, df: &QPoly, z: &Complex) -> Option<RootDisk> {
    let d = df.eval_complex(z);
    if d.is_zero() {
        return None;
    }
    let n = f.degree() as i64;
    let radius = (&f.eval_complex(z) / &d).abs() * Real::from_i64(n, z.prec());
    Some(RootDisk { center: z.clone(), radius })
}

fn pairwise_disjoint(disks: &[RootDisk]) -> bool {
    (0..disks.len()).all(|i| (i + 1..disks.len()).all(|j| disks[i].disjoint(&disks[j])))
}

fn cmp_real(a: &Real, b: &Real) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Isolates every root of the squarefree polynomial `f` at `prec` bits.
pub fn isolate_roots(f: &QPoly, prec: usize) -> Result<RootTable> {
    let n = f.degree();
    if n == 0 {
        return Err(BlochError::InvalidInput("constant polynomial has no roots".into()));
    }
    if !f.is_squarefree() {
        return Err(BlochError::InvalidInput(format!("{f} is not squarefree")));
    }
    let df = f.derivative();
    let real_count = f.real_root_count();
    let mut work = prec.max(64);
    for _ in 0..4 {
        if let Some(t) = try_isolate(f, &df, work, real_count) {
            return Ok(t);
        }
        work *= 2;
    }
    Err(BlochError::CertificationFailed(format!("could not isolate the roots of {f}")))
}

fn try_isolate(f: &QPoly, df: &QPoly, prec: usize, real_count: usize) -> Option<RootTable> {
    let n = f.degree();
    let approx = aberth(f, prec);
    let first: Vec<RootDisk> = approx.iter().map(|z| disk_for(f, df, z)).collect::<Option<_>>()?;
    if !pairwise_disjoint(&first) {
        return None;
    }
    // snap candidates near the axis; split the rest into upper representatives
    let mut reals = Vec::new();
    let mut uppers = Vec::new();
    for d in &first {
        if d.meets_real_axis() {
            reals.push(Complex::from_real(d.center.re.clone()));
        } else if d.center.im.is_positive() {
            uppers.push(d.center.clone());
        }
    }
    if reals.len() != real_count || reals.len() + 2 * uppers.len() != n {
        return None;
    }
    reals.sort_by(|a, b| cmp_real(&a.re, &b.re));
    let tie = Real::pow2(-((prec / 2) as i64), prec);
    uppers.sort_by(|a, b| {
        if (&a.re - &b.re).abs() <= tie {
            cmp_real(&a.im, &b.im)
        } else {
            cmp_real(&a.re, &b.re)
        }
    });
    let mut centers = reals.clone();
    let mut kinds = vec![RootKind::Real; reals.len()];
    for u in &uppers {
        let i = centers.len();
        centers.push(u.conj());
        centers.push(u.clone());
        kinds.push(RootKind::Lower { partner: i + 1 });
        kinds.push(RootKind::Upper { partner: i });
    }
    let mut disks: Vec<RootDisk> = centers.iter().map(|z| disk_for(f, df, z)).collect::<Option<_>>()?;
    if !pairwise_disjoint(&disks) {
        return None;
    }
    for (d, k) in disks.iter_mut().zip(&kinds) {
        if *k == RootKind::Real {
            // a real-centred disk holding one root of a real polynomial holds a real root
            continue;
        }
        if d.meets_real_axis() {
            return None;
        }
    }
    Some(RootTable { disks, kinds, r1: reals.len(), r2: uppers.len(), prec })
}
