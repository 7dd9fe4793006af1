mod common;

use blochlab::numeric::{bloch_wigner_d2, catalan, li2, rho_scalar, Complex, PrecisionContext, Real};
use common::*;
use num_rational::BigRational;
use proptest::prelude::*;

fn to_q(r: &Real) -> BigRational {
    r.to_rational()
}

#[test]
fn d2_at_i_is_catalan_to_60_digits() {
    let ctx = PrecisionContext::bits(256);
    let d = bloch_wigner_d2(&Complex::i(256), &ctx).unwrap();
    let g = catalan_oracle();
    assert!(agreeing_digits(&to_q(&d), &g) >= 60);
    assert!(agreeing_digits(&to_q(&catalan(&ctx)), &g) >= 70);
    let li = li2(&Complex::i(256), &ctx).unwrap();
    assert!(agreeing_digits(&to_q(&li.im), &g) >= 60);
    // Re Li2(i) = -pi^2 / 48
    let pi = pi_oracle();
    let expect = -(&pi * &pi) / rat(48, 1);
    assert!(agreeing_digits(&to_q(&li.re), &expect) >= 60);
}

#[test]
fn li2_half_closed_form() {
    let ctx = PrecisionContext::bits(256);
    let v = li2(&Complex::from_f64(0.5, 0.0, 256), &ctx).unwrap();
    let pi = pi_oracle();
    let l2 = ln2_oracle(400);
    let expect = &pi * &pi / rat(12, 1) - &l2 * &l2 / rat(2, 1);
    assert!(agreeing_digits(&to_q(&v.re), &expect) >= 60);
    assert!(v.im.is_zero());
}

#[test]
fn li2_minus_one_is_minus_zeta2_half() {
    let ctx = PrecisionContext::bits(256);
    let v = li2(&Complex::from_f64(-1.0, 0.0, 256), &ctx).unwrap();
    let pi = pi_oracle();
    assert!(agreeing_digits(&to_q(&v.re), &(-(&pi * &pi) / rat(12, 1))) >= 60);
}

#[test]
fn d2_at_sixth_root_from_clausen_series() {
    // D2(e^{i pi/3}) = Cl2(pi/3) = (3/2) Cl2(2pi/3), and Cl2(pi/3)
    // = sum sin(n pi/3)/n^2 which telescopes to a sum over n mod 6.
    // Cl2(pi/3) = (sqrt3/2) * sum_{n} chi(n)/n^2 with chi = (1,1,0,-1,-1,0);
    // sum_{k>=0} [1/(6k+1)^2 + 1/(6k+2)^2 - 1/(6k+4)^2 - 1/(6k+5)^2].
    let ctx = PrecisionContext::bits(256);
    let z = Complex::cis(&(Real::pi(300) / 3));
    let d = bloch_wigner_d2(&z, &ctx).unwrap();
    let mut s = 0.0f64;
    for k in (0..200_000).rev() {
        let k = k as f64;
        s += 1.0 / (6.0 * k + 1.0).powi(2) + 1.0 / (6.0 * k + 2.0).powi(2)
            - 1.0 / (6.0 * k + 4.0).powi(2)
            - 1.0 / (6.0 * k + 5.0).powi(2);
    }
    let oracle = s * 3f64.sqrt() / 2.0;
    assert!((d.to_f64() - oracle).abs() < 1e-11, "{} vs {oracle}", d.to_f64());
    assert_eq!(d.to_decimal(17), "1.0149416064096536");
}

#[test]
fn rho_scalar_reproduces_d2_at_minus_one_and_random_points() {
    let ctx = PrecisionContext::bits(192);
    let check = |z: &Complex| {
        let r = rho_scalar(z, &ctx).unwrap();
        let two_pi_c_im = &r.c.re * Real::pi(192).mul_pow2(1);
        // D2(z) = -1/2 [Im(2 pi i c) + ln|1-z| arg z - ln|z| arg(1-z)]
        let combo = two_pi_c_im + &r.log_1mz.re * &r.log_z.im - &r.log_z.re * &r.log_1mz.im;
        let d = bloch_wigner_d2(z, &ctx).unwrap();
        let err = (&d + combo.mul_pow2(-1)).abs();
        assert!(err < ctx.tol().mul_pow2(8), "z = {z}: err {err:?}");
    };
    check(&Complex::from_f64(-1.0, 0.0, 192));
    let mut seed = 12345u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((seed >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0
    };
    for _ in 0..20 {
        let z = Complex::from_f64(next(), next(), 192);
        check(&z);
    }
}

#[test]
fn rho_scalar_deterministic() {
    let ctx = PrecisionContext::bits(256);
    let z = Complex::cis(&(Real::pi(256) / 3));
    let a = rho_scalar(&z, &ctx).unwrap();
    let b = rho_scalar(&z, &ctx).unwrap();
    assert_eq!(a.c.re.to_rational(), b.c.re.to_rational());
    assert_eq!(a.c.im.to_rational(), b.c.im.to_rational());
    assert_eq!(a.log_1mz.im.to_rational(), b.log_1mz.im.to_rational());
}

fn direct_d2(z: &Complex, ctx: &PrecisionContext) -> Real {
    let li = li2(z, ctx).unwrap();
    let one = Complex::one(ctx.prec_bits);
    let l = z.norm_sqr().ln().mul_pow2(-1);
    &li.im + &l * &(&one - z).arg()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_d2_matches_direct_formula(re in -4.0f64..4.0, im in 0.01f64..4.0) {
        let ctx = PrecisionContext::bits(128);
        let z = Complex::from_f64(re, im, 128);
        let d = bloch_wigner_d2(&z, &ctx).unwrap();
        let e = direct_d2(&z, &ctx);
        prop_assert!((&d - &e).abs() < ctx.tol().mul_pow2(8));
    }

    #[test]
    fn conjugation_flips_sign(re in -4.0f64..4.0, im in 0.01f64..4.0) {
        let ctx = PrecisionContext::bits(128);
        let z = Complex::from_f64(re, im, 128);
        let a = bloch_wigner_d2(&z, &ctx).unwrap();
        let b = bloch_wigner_d2(&z.conj(), &ctx).unwrap();
        prop_assert!((&a + &b).abs() < ctx.tol().mul_pow2(8));
    }

    #[test]
    fn doubling_precision_is_stable(re in -3.0f64..3.0, im in 0.01f64..3.0) {
        let lo = PrecisionContext::bits(128);
        let hi = PrecisionContext::bits(256);
        let a = bloch_wigner_d2(&Complex::from_f64(re, im, 128), &lo).unwrap();
        let b = bloch_wigner_d2(&Complex::from_f64(re, im, 256), &hi).unwrap();
        let bound = lo.tol() * Real::one(128).max(&b.abs());
        prop_assert!((&a - &b.with_prec(128)).abs() <= bound);
    }
}
