//! Complex numbers over [`Real`], with principal-branch logarithms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::real::Real;

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        Complex { re, im: Real::zero(p) }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::from_real(Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Complex::from_real(Real::one(prec))
    }

    pub fn i(prec: usize) -> Self {
        Complex::new(Real::zero(prec), Real::one(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex::new(Real::from_f64(re, prec), Real::from_f64(im, prec))
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        Complex::from_real(Real::from_rational(q, prec))
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        Complex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_exactly_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Principal logarithm: ln|z| + i arg z.
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero(), "logarithm of zero");
        let p = self.prec();
        let modulus = if self.im.is_zero() {
            self.re.abs().ln()
        } else {
            self.with_prec(p + 8).norm_sqr().ln().mul_pow2(-1).with_prec(p)
        };
        Complex::new(modulus, self.arg())
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(&m * self.im.cos(), &m * self.im.sin())
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Complex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Unit-modulus value e^{i theta}.
    pub fn cis(theta: &Real) -> Self {
        Complex::new(theta.cos(), theta.sin())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        let im = &self.im;
        if im.is_negative() {
            write!(f, "{}-{}i", self.re.to_decimal(d), im.abs().to_decimal(d))
        } else {
            write!(f, "{}+{}i", self.re.to_decimal(d), im.to_decimal(d))
        }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        if rhs.im.is_zero() {
            return Complex::new(&self.re * &rhs.re, &self.im * &rhs.re);
        }
        if self.im.is_zero() {
            return Complex::new(&self.re * &rhs.re, &self.re * &rhs.im);
        }
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        assert!(!rhs.is_zero(), "complex division by zero");
        if rhs.im.is_zero() {
            return Complex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let d = rhs.norm_sqr();
        Complex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_log_of_negative_real() {
        let z = Complex::from_f64(-1.0, 0.0, 128);
        let l = z.ln();
        assert!(l.re.is_zero());
        assert_eq!(l.im, Real::pi(128));
    }

    #[test]
    fn exp_inverts_ln() {
        let z = Complex::from_f64(0.3, -2.5, 192);
        let back = z.ln().exp();
        let err = (&back - &z).abs().to_f64();
        assert!(err < 1e-50, "err = {err}");
    }

    #[test]
    fn division_round_trip() {
        let a = Complex::from_f64(1.5, 2.0, 128);
        let b = Complex::from_f64(-0.25, 3.0, 128);
        let err = (&(&a / &b) * &b - &a).abs().to_f64();
        assert!(err < 1e-35);
    }
}
