//! Independent oracles shared by the integration tests. Everything here
//! is exact rational arithmetic so it shares no code path with the
//! floating-point implementation under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Alternating-series acceleration of Cohen, Rodriguez Villegas and
/// Zagier: sum_{k>=0} (-1)^k a_k with error about 5.83^-n.
pub fn cvz_alternating(a: impl Fn(usize) -> BigRational, n: usize) -> BigRational {
    // d = T_n(3), computed exactly by the Chebyshev recurrence.
    let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
    for _ in 1..n {
        let t2 = BigInt::from(6) * &t1 - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = BigRational::from_integer(if n == 0 { t0 } else { t1 });
    let mut b = -BigRational::one();
    let mut c = -d.clone();
    let mut s = BigRational::zero();
    let ni = n as i64;
    for k in 0..n {
        c = &b - &c;
        s += &c * a(k);
        let ki = k as i64;
        b = b * rat((ki + ni) * (ki - ni), 1) / (rat(2 * ki + 1, 2) * rat(ki + 1, 1));
    }
    s / d
}

/// Catalan's constant from the defining alternating series.
pub fn catalan_oracle() -> BigRational {
    cvz_alternating(|k| rat(1, ((2 * k + 1) * (2 * k + 1)) as i64), 100)
}

/// ln 2 = sum 1 / (k 2^k).
pub fn ln2_oracle(bits: usize) -> BigRational {
    let mut s = BigRational::zero();
    for k in 1..=bits {
        s += BigRational::new(BigInt::one(), BigInt::from(k) << k);
    }
    s
}

fn atan_inv(x: i64, terms: usize) -> BigRational {
    let mut s = BigRational::zero();
    let x2 = BigInt::from(x * x);
    let mut pw = BigInt::from(x);
    for k in 0..terms {
        let t = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &pw);
        if k % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
        pw *= &x2;
    }
    s
}

/// Machin's formula pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi_oracle() -> BigRational {
    atan_inv(5, 80) * rat(16, 1) - atan_inv(239, 40) * rat(4, 1)
}

/// Number of agreeing decimal digits, i.e. floor(-log10 |a - b|).
pub fn agreeing_digits(a: &BigRational, b: &BigRational) -> usize {
    let diff = (a - b).abs();
    if diff.is_zero() {
        return usize::MAX;
    }
    let mut k = 0usize;
    let mut scale = BigRational::one();
    let ten = rat(10, 1);
    while &diff * &scale < BigRational::one() && k < 10_000 {
        scale *= &ten;
        k += 1;
    }
    k.saturating_sub(1)
}

/// B_0..=B_n by the Akiyama-Tanigawa algorithm (B_1 = +1/2).
pub fn bernoulli_oracle(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = rat(j as i64, 1) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

/// zeta(2, a) = sum_{k>=0} 1/(k + a)^2 by Euler-Maclaurin with 60 direct
/// terms and 30 Bernoulli corrections: about 70 correct digits.
pub fn hurwitz_zeta2_oracle(a: &BigRational) -> BigRational {
    let n = 60i64;
    let m = 30usize;
    let b = bernoulli_oracle(2 * m);
    let mut s = BigRational::zero();
    for k in 0..n {
        let x = a + rat(k, 1);
        s += (&x * &x).recip();
    }
    let x = a + rat(n, 1);
    s += x.recip() + (&x * &x).recip() / rat(2, 1);
    let x2 = &x * &x;
    let mut pw = &x2 * &x;
    for j in 1..=m {
        s += &b[2 * j] / &pw;
        pw *= &x2;
    }
    s
}

/// floor(sqrt(n) 10^digits) / 10^digits.
pub fn sqrt_oracle(n: i64, digits: u32) -> BigRational {
    let scale = BigInt::from(10).pow(digits);
    let r = (BigInt::from(n) * &scale * &scale).sqrt();
    BigRational::new(r, scale)
}

/// Volume of the figure-eight knot complement,
/// (3 sqrt3 / 2) L(2, chi_-3) = (sqrt3 / 6) (zeta(2, 1/3) - zeta(2, 2/3)).
pub fn fig8_volume_oracle() -> BigRational {
    let d = hurwitz_zeta2_oracle(&rat(1, 3)) - hurwitz_zeta2_oracle(&rat(2, 3));
    sqrt_oracle(3, 90) * d / rat(6, 1)
}
