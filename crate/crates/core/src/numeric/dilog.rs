//! Dilogarithm family: Li2, the Bloch-Wigner function D2, the scalar
//! ingredients of the Bloch map, and the Clausen function.
//!
//! Li2 is summed with the Bernoulli expansion in u = -ln(1 - v), which
//! converges geometrically with ratio |u| / 2pi. The inversion
//! z -> 1/z and reflection z -> 1 - z bring every argument into the
//! region |v| <= 1, Re v <= 1/2 where |u| < 1.75.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::complex::Complex;
use super::precision::PrecisionContext;
use super::real::Real;
use crate::error::{BlochError, Result};

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

thread_local! {
    static LI2_COEFFS: RefCell<HashMap<usize, Vec<Real>>> = RefCell::new(HashMap::new());
}

/// Tangent numbers T_1..T_n by the integer recurrence of Brent and Harvey.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

/// Even Bernoulli numbers B_2, B_4, ..., B_{2n}.
pub fn bernoulli_even(n: usize) -> Vec<BigRational> {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if cache.len() < n {
        let target = n.max(2 * cache.len()).max(16);
        let t = tangent_numbers(target);
        let mut out = Vec::with_capacity(target);
        for k in 1..=target {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - BigInt::one());
            let mut b = BigRational::new(BigInt::from(2 * k) * &t[k], den);
            if k % 2 == 0 {
                b = -b;
            }
            out.push(b);
        }
        *cache = out;
    }
    cache[..n].to_vec()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// c_k = B_{2k} / (2k+1)! for k = 1..=n at precision `prec`.
fn li2_coefficients(n: usize, prec: usize) -> Vec<Real> {
    LI2_COEFFS.with(|cell| {
        let mut map = cell.borrow_mut();
        let entry = map.entry(prec).or_default();
        if entry.len() < n {
            let b = bernoulli_even(n);
            *entry = b
                .iter()
                .enumerate()
                .map(|(i, bk)| {
                    let k = i + 1;
                    Real::from_rational(&(bk / BigRational::from_integer(factorial(2 * k + 1))), prec)
                })
                .collect();
        }
        entry[..n].to_vec()
    })
}

fn pi_sq_6(prec: usize) -> Real {
    let pi = Real::pi(prec);
    &pi * &pi / 6
}

/// Number of Bernoulli-series terms needed for |u| <= `u_abs` at `prec` bits.
fn terms_needed(u_abs: f64, prec: usize) -> usize {
    let ratio = (u_abs.max(1e-300) / (2.0 * std::f64::consts::PI)).min(0.95);
    let per_term = -2.0 * ratio.log2();
    ((prec as f64 + 8.0) / per_term).ceil() as usize + 2
}

/// Bernoulli-series evaluation, valid for |v| <= 1 and Re v <= 1/2.
fn li2_series(v: &Complex) -> Complex {
    let p = v.prec();
    if v.is_zero() {
        return Complex::zero(p);
    }
    let one = Complex::one(p);
    let u = -(&one - v).ln();
    let u_abs = u.abs().to_f64();
    let n = terms_needed(u_abs, p);
    let coeffs = li2_coefficients(n, p);
    let u2 = &u * &u;
    let mut acc = &u - &u2.mul_pow2(-2);
    let mut pw = &u * &u2;
    for c in &coeffs {
        acc = &acc + &pw.scale(c);
        pw = &pw * &u2;
    }
    acc
}

fn li2_unit_disk(w: &Complex) -> Complex {
    let p = w.prec();
    let half = Real::from_f64(0.5, p);
    if w.re > half {
        let one = Complex::one(p);
        let omw = &one - w;
        if omw.is_zero() {
            return Complex::from_real(pi_sq_6(p));
        }
        let s = li2_series(&omw);
        let corr = &w.ln() * &omw.ln();
        Complex::from_real(pi_sq_6(p)) - &s - &corr
    } else {
        li2_series(w)
    }
}

/// Dilogarithm on all of C with the principal-logarithm convention on
/// the cut: for real x > 1 the value is the limit from the lower half
/// plane, so Im Li2(x) = -pi ln x.
pub(crate) fn li2_principal(z: &Complex) -> Complex {
    let p = z.prec();
    if z.is_zero() {
        return Complex::zero(p);
    }
    if z.norm_sqr() > Real::one(p) {
        let inv = z.recip();
        let l = (-z).ln();
        let sq = (&l * &l).mul_pow2(-1);
        -li2_unit_disk(&inv) - Complex::from_real(pi_sq_6(p)) - sq
    } else {
        li2_unit_disk(z)
    }
}

fn check_magnitude(z: &Complex, ctx: &PrecisionContext) -> Result<()> {
    let limit = 64 * ctx.prec_bits as i64;
    for part in [&z.re, &z.im] {
        if let Some(e) = part.exponent() {
            if e.abs() > limit {
                return Err(BlochError::PrecisionOverflow(format!(
                    "argument magnitude 2^{e} needs more than {limit} bits"
                )));
            }
        }
    }
    Ok(())
}

/// Principal-branch dilogarithm.
pub fn li2(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.is_zero() && z.re >= Real::one(z.prec()) {
        return Err(BlochError::BranchCut(z.re.to_decimal(20)));
    }
    check_magnitude(z, ctx)?;
    let w = z.with_prec(ctx.working());
    Ok(li2_principal(&w).with_prec(ctx.prec_bits))
}

fn degenerate(z: &Complex) -> bool {
    z.im.is_zero() && (z.re.is_zero() || z.re == Real::one(z.prec()))
}

/// Bloch-Wigner dilogarithm D2(z) = Im Li2(z) + ln|z| arg(1 - z).
/// Exactly zero for real arguments.
pub fn bloch_wigner_d2(z: &Complex, ctx: &PrecisionContext) -> Result<Real> {
    if degenerate(z) {
        return Err(BlochError::DegenerateArgument(format!("D2 undefined at {z}")));
    }
    if z.im.is_zero() {
        return Ok(Real::zero(ctx.prec_bits));
    }
    check_magnitude(z, ctx)?;
    let w = z.with_prec(ctx.working());
    let p = w.prec();
    let one = Complex::one(p);
    let omz = &one - &w;
    let a = w.norm_sqr();
    let b = omz.norm_sqr();
    let r1 = Real::one(p);
    // Map to the image minimising |.| among (|z|, |1 - z|, 1).
    let (v, sign) = if a <= b && a <= r1 {
        (w, 1)
    } else if b <= a && b <= r1 {
        (omz, -1)
    } else {
        (w.recip(), -1)
    };
    let d = d2_reduced(&v);
    let d = if sign < 0 { -d } else { d };
    Ok(d.with_prec(ctx.prec_bits))
}

fn d2_reduced(v: &Complex) -> Real {
    let p = v.prec();
    let li = li2_series(v);
    let omv = &Complex::one(p) - v;
    let log_mod = v.norm_sqr().ln().mul_pow2(-1);
    &li.im + &log_mod * &omv.arg()
}

/// Scalar ingredients of the Bloch map at z: the principal logarithms of
/// z and 1 - z and c(z) = (Li2(1 - z) - Li2(z) - pi^2/6) / (2 pi i).
#[derive(Debug, Clone)]
pub struct RhoScalar {
    pub log_z: Complex,
    pub log_1mz: Complex,
    pub c: Complex,
}

pub fn rho_scalar(z: &Complex, ctx: &PrecisionContext) -> Result<RhoScalar> {
    if degenerate(z) {
        return Err(BlochError::DegenerateArgument(format!("rho undefined at {z}")));
    }
    check_magnitude(z, ctx)?;
    let w = z.with_prec(ctx.working());
    let p = w.prec();
    let one = Complex::one(p);
    let omz = &one - &w;
    let num = li2_principal(&omz) - li2_principal(&w) - Complex::from_real(pi_sq_6(p));
    let two_pi = Real::pi(p).mul_pow2(1);
    // num / (2 pi i) = -i num / (2 pi)
    let c = Complex::new(&num.im / &two_pi, -(&num.re / &two_pi));
    Ok(RhoScalar {
        log_z: w.ln().with_prec(ctx.prec_bits),
        log_1mz: omz.ln().with_prec(ctx.prec_bits),
        c: c.with_prec(ctx.prec_bits),
    })
}

/// Clausen function Cl2(theta) = Im Li2(e^{i theta}) from its Bernoulli
/// expansion around 0 after reducing theta to (-pi, pi].
pub fn clausen(theta: &Real, ctx: &PrecisionContext) -> Real {
    let p = ctx.working();
    let pi = Real::pi(p);
    let two_pi = pi.mul_pow2(1);
    let mut t = theta.with_prec(p);
    let k = ((&t + &pi) / &two_pi).floor_bigint();
    t = &t - &two_pi * Real::from_bigint(&k, p);
    if t > pi {
        t = &t - &two_pi;
    }
    if t.is_zero() || t == pi {
        return Real::zero(ctx.prec_bits);
    }
    let n = terms_needed(t.abs().to_f64(), p);
    let b = bernoulli_even(n);
    let t2 = &t * &t;
    let mut acc = &t - &t * t.abs().ln();
    let mut pw = &t * &t2;
    for (i, bk) in b.iter().enumerate() {
        let k = i + 1;
        let den = BigInt::from(2 * k) * factorial(2 * k + 1);
        let c = Real::from_rational(&(bk.abs() / BigRational::from_integer(den)), p);
        acc = &acc + &pw * &c;
        pw = &pw * &t2;
    }
    acc.with_prec(ctx.prec_bits)
}

/// Catalan's constant from the Ramanujan-type series
/// G = (pi/8) ln(2 + sqrt 3) + (3/8) sum (k!)^2 / ((2k)! (2k+1)^2).
pub fn catalan(ctx: &PrecisionContext) -> Real {
    let p = ctx.working();
    let mut a = Real::one(p);
    let mut sum = Real::zero(p);
    let stop = Real::pow2(-(p as i64) - 4, p);
    let mut k: i64 = 0;
    loop {
        let term = &a / ((2 * k + 1) * (2 * k + 1));
        sum = &sum + &term;
        if term.abs() < stop {
            break;
        }
        a = &a * (k + 1) / (2 * (2 * k + 1));
        k += 1;
    }
    let three = Real::from_i64(3, p);
    let lead = Real::pi(p) / 8 * (Real::from_i64(2, p) + three.sqrt()).ln();
    (lead + sum * 3 / 8).with_prec(ctx.prec_bits)
}

pub fn pi(ctx: &PrecisionContext) -> Real {
    Real::pi(ctx.prec_bits)
}

pub fn ln2(ctx: &PrecisionContext) -> Real {
    Real::ln2(ctx.prec_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bernoulli numbers from sum_{k<=n} C(n+1, k) B_k = 0, as an
    /// independent check of the tangent-number route.
    fn bernoulli_by_recurrence(n: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::one()];
        for m in 1..=n {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    #[test]
    fn bernoulli_matches_recurrence() {
        let rec = bernoulli_by_recurrence(40);
        let fast = bernoulli_even(20);
        for k in 1..=20 {
            assert_eq!(fast[k - 1], rec[2 * k], "B_{}", 2 * k);
        }
    }

    #[test]
    fn li2_at_zero_and_cut() {
        let ctx = PrecisionContext::bits(128);
        assert!(li2(&Complex::zero(128), &ctx).unwrap().is_zero());
        let e = li2(&Complex::from_f64(2.0, 0.0, 128), &ctx).unwrap_err();
        assert_eq!(e.code(), "BRANCH_CUT");
        assert!(li2(&Complex::one(128), &ctx).is_err());
    }

    #[test]
    fn li2_near_one_tends_to_zeta2() {
        let ctx = PrecisionContext::bits(128);
        let z = Complex::from_real(Real::one(128) - Real::pow2(-100, 128));
        let v = li2(&z, &ctx).unwrap();
        let err = (&v.re - pi_sq_6(128)).abs().to_f64();
        assert!(err < 1e-27, "err = {err}");
    }

    #[test]
    fn principal_cut_value_above_one() {
        // Im Li2(x) = -pi ln x just below the real axis for x > 1.
        let z = Complex::from_f64(3.0, 0.0, 160);
        let v = li2_principal(&z);
        let expect = -(Real::pi(160) * Real::from_i64(3, 160).ln());
        assert!((&v.im - &expect).abs().to_f64() < 1e-40);
    }

    #[test]
    fn d2_degenerate_and_real() {
        let ctx = PrecisionContext::bits(128);
        assert!(bloch_wigner_d2(&Complex::from_f64(0.5, 0.0, 128), &ctx).unwrap().is_zero());
        assert!(bloch_wigner_d2(&Complex::from_f64(-7.0, 0.0, 128), &ctx).unwrap().is_zero());
        assert_eq!(bloch_wigner_d2(&Complex::one(128), &ctx).unwrap_err().code(), "DEGENERATE_ARGUMENT");
        assert_eq!(bloch_wigner_d2(&Complex::zero(128), &ctx).unwrap_err().code(), "DEGENERATE_ARGUMENT");
    }

    #[test]
    fn d2_sixth_root_of_unity() {
        let ctx = PrecisionContext::bits(128);
        let theta = Real::pi(160) / 3;
        let z = Complex::cis(&theta);
        let d = bloch_wigner_d2(&z, &ctx).unwrap();
        assert_eq!(d.to_decimal(17), "1.0149416064096536");
    }

    #[test]
    fn clausen_matches_d2_on_circle() {
        let ctx = PrecisionContext::bits(192);
        for k in 1..12 {
            let theta = Real::pi(256) * k / 7;
            let z = Complex::cis(&theta);
            let d = bloch_wigner_d2(&z, &ctx).unwrap();
            let c = clausen(&theta, &ctx);
            assert!((&d - &c).abs() < ctx.tol().mul_pow2(4), "k = {k}");
        }
    }

    #[test]
    fn rho_scalar_real_interval_has_real_numerator() {
        // All three dilogarithm terms are real, so 2 pi i c is real.
        let ctx = PrecisionContext::bits(128);
        let r = rho_scalar(&Complex::from_f64(0.3, 0.0, 128), &ctx).unwrap();
        assert!(r.c.re.is_zero());
        assert!(!r.c.im.is_zero());
        assert!(r.log_z.im.is_zero() && r.log_1mz.im.is_zero());
    }
}
