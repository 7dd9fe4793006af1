//! Precision-carrying real numbers on top of `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{BlochError, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision real number tagged with the precision (in bits)
/// at which it was produced. Binary operations run at the larger of the
/// two operand precisions.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

fn rounded(v: BigFloat, p: usize) -> BigFloat {
    let mut w = v;
    if !w.is_zero() {
        // Only fails for an invalid precision, which callers never pass.
        let _ = w.set_precision(p.max(WORD_BITS), RM);
    }
    w
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN escaped a real operation");
        Real { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::wrap(BigFloat::from_word(0, prec.max(WORD_BITS)), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_i64(i, prec.max(WORD_BITS)), prec)
    }

    pub fn from_f64(f: f64, prec: usize) -> Self {
        assert!(f.is_finite(), "non-finite f64 converted to Real");
        Self::wrap(BigFloat::from_f64(f, prec.max(WORD_BITS)), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        if n.is_zero() {
            return Self::zero(prec);
        }
        let digits = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let bits = (digits.len() * WORD_BITS) as i32;
        let v = BigFloat::from_words(&digits, sign, bits);
        Self::wrap(rounded(v, prec), prec)
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        if q.denom().is_one() {
            return Self::from_bigint(q.numer(), prec);
        }
        let p = prec + WORD_BITS;
        let n = Self::from_bigint(q.numer(), p);
        let d = Self::from_bigint(q.denom(), p);
        (n / d).with_prec(prec)
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let t = s.trim();
        let ok = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !ok {
            return Err(BlochError::InvalidInput(format!("not a decimal number: {s:?}")));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec.max(WORD_BITS) + 8, RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(BlochError::InvalidInput(format!("not a decimal number: {s:?}")));
        }
        Ok(Self::wrap(rounded(v, prec), prec))
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Re-rounds to a new precision (exact when widening).
    pub fn with_prec(&self, prec: usize) -> Self {
        Self::wrap(rounded(self.v.clone(), prec), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent().map(i64::from)
        }
    }

    /// Multiplies by 2^k exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = i64::from(v.exponent().unwrap_or(0)) + k;
        v.set_exponent(e as i32);
        Self::wrap(v, self.prec)
    }

    pub fn pow2(k: i64, prec: usize) -> Self {
        Self::one(prec).mul_pow2(k)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative real");
        if self.is_zero() {
            return self.clone();
        }
        Self::wrap(self.v.sqrt(self.wp(), RM), self.prec).trim()
    }

    pub fn exp(&self) -> Self {
        let wp = self.wp();
        Self::wrap(with_consts(|cc| self.v.exp(wp, RM, cc)), self.prec).trim()
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of a non-positive real");
        let wp = self.wp();
        Self::wrap(with_consts(|cc| self.v.ln(wp, RM, cc)), self.prec).trim()
    }

    pub fn sin(&self) -> Self {
        let wp = self.wp();
        Self::wrap(with_consts(|cc| self.v.sin(wp, RM, cc)), self.prec).trim()
    }

    pub fn cos(&self) -> Self {
        let wp = self.wp();
        Self::wrap(with_consts(|cc| self.v.cos(wp, RM, cc)), self.prec).trim()
    }

    pub fn atan(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let wp = self.wp();
        Self::wrap(with_consts(|cc| self.v.atan(wp, RM, cc)), self.prec).trim()
    }

    /// Angle of the point (x, y) in (-pi, pi]; zero for the origin.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec.max(x.prec);
        if y.is_zero() {
            return if x.is_negative() { Self::pi(prec) } else { Self::zero(prec) };
        }
        if x.is_zero() {
            let hp = Self::pi(prec).mul_pow2(-1);
            return if y.is_negative() { -hp } else { hp };
        }
        let wp = prec + 16;
        let (yw, xw) = (y.with_prec(wp), x.with_prec(wp));
        let r = if yw.abs() <= xw.abs() {
            let a = (&yw / &xw).atan();
            if xw.is_positive() {
                a
            } else if yw.is_positive() {
                a + Self::pi(wp)
            } else {
                a - Self::pi(wp)
            }
        } else {
            let hp = Self::pi(wp).mul_pow2(-1);
            let a = (&xw / &yw).atan();
            if yw.is_positive() {
                hp - a
            } else {
                -hp - a
            }
        };
        r.with_prec(prec)
    }

    pub fn pi(prec: usize) -> Self {
        let p = prec.max(WORD_BITS) + WORD_BITS;
        let v = with_consts(|cc| cc.pi(p, RM));
        Self::wrap(rounded(v, prec), prec)
    }

    pub fn ln2(prec: usize) -> Self {
        let p = prec.max(WORD_BITS) + WORD_BITS;
        let v = with_consts(|cc| cc.ln_2(p, RM));
        Self::wrap(rounded(v, prec), prec)
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other { self.clone() } else { other.clone() }
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other { self.clone() } else { other.clone() }
    }

    /// Nearest f64 (rounded towards zero in the last bit).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let Some((m, _, s, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *m.last().unwrap_or(&0) as f64;
        let mag = top * 2f64.powi(e - WORD_BITS as i32);
        if s == Sign::Neg { -mag } else { mag }
    }

    /// Exact value as a dyadic rational.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (m, _, s, e, _) = self.v.as_raw_parts().expect("finite real");
        let mant = BigInt::from_biguint(BigSign::Plus, num_bigint::BigUint::from_slice(&to_u32(m)));
        let shift = i64::from(e) - (m.len() * WORD_BITS) as i64;
        let mut q = if shift >= 0 {
            BigRational::from_integer(mant << (shift as usize))
        } else {
            BigRational::new(mant, BigInt::one() << ((-shift) as usize))
        };
        if s == Sign::Neg {
            q = -q;
        }
        q
    }

    /// Largest integer <= self.
    pub fn floor_bigint(&self) -> BigInt {
        self.to_rational().floor().to_integer()
    }

    /// Nearest integer, ties away from zero.
    pub fn round_bigint(&self) -> BigInt {
        self.to_rational().round().to_integer()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        // Find k with 10^(k-1) <= q < 10^k.
        let ten = BigInt::from(10);
        let log10 = self.exponent().unwrap_or(0) as f64 * std::f64::consts::LOG10_2;
        let mut k = log10.floor() as i64;
        let pow10 = |e: i64| -> BigRational {
            if e >= 0 {
                BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
            } else {
                BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
            }
        };
        while q >= pow10(k) {
            k += 1;
        }
        while q < pow10(k - 1) {
            k -= 1;
        }
        let scaled = (&q * pow10(digits as i64 - k)).round().to_integer();
        let mut s = scaled.to_string();
        let mut k = k;
        if s.len() > digits {
            s.truncate(digits);
            k += 1;
        }
        let body = if (-5..=(digits as i64)).contains(&k) && k > 0 {
            let (a, b) = s.split_at(k.min(s.len() as i64) as usize);
            let b = b.trim_end_matches('0');
            if b.is_empty() { a.to_string() } else { format!("{a}.{b}") }
        } else if (-5..=0).contains(&k) {
            let z = "0".repeat((-k) as usize);
            format!("0.{z}{}", s.trim_end_matches('0'))
        } else {
            let (a, b) = s.split_at(1);
            let b = b.trim_end_matches('0');
            let m = if b.is_empty() { a.to_string() } else { format!("{a}.{b}") };
            format!("{m}e{}", k - 1)
        };
        if neg { format!("-{body}") } else { body }
    }

    fn wp(&self) -> usize {
        self.prec.max(WORD_BITS) + 8
    }

    fn trim(self) -> Self {
        let p = self.prec;
        Self::wrap(rounded(self.v, p), p)
    }
}

fn to_u32(words: &[u64]) -> Vec<u32> {
    words.iter().flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32]).collect()
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Ordering::Equal),
            (true, false) => return Some(if other.v.is_negative() { Ordering::Greater } else { Ordering::Less }),
            (false, true) => return Some(if self.v.is_negative() { Ordering::Less } else { Ordering::Greater }),
            _ => {}
        }
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec.max(rhs.prec);
                Real::wrap(self.v.$op(&rhs.v, p.max(WORD_BITS), RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                self.$m(&Real::from_i64(rhs, self.prec))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                (&self).$m(&Real::from_i64(rhs, self.prec))
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);

impl Div<&Real> for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "real division by zero");
        let p = self.prec.max(rhs.prec);
        Real::wrap(self.v.div(&rhs.v, p.max(WORD_BITS), RM), p)
    }
}
impl Div<Real> for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        &self / &rhs
    }
}
impl Div<&Real> for Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        &self / rhs
    }
}
impl Div<Real> for &Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self / &rhs
    }
}
impl Div<i64> for &Real {
    type Output = Real;
    fn div(self, rhs: i64) -> Real {
        self / &Real::from_i64(rhs, self.prec)
    }
}
impl Div<i64> for Real {
    type Output = Real;
    fn div(self, rhs: i64) -> Real {
        &self / &Real::from_i64(rhs, self.prec)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.v), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.v), self.prec)
    }
}

/// Integer log2 of a positive bigint, rounded up.
pub fn bigint_log2_ceil(n: &BigInt) -> u64 {
    let m = n.magnitude();
    if m.is_zero() {
        return 0;
    }
    let bits = m.bits();
    if (m - 1u32).bits() < bits { bits - 1 } else { bits }
}

/// Approximate log2 |q| (f64 accuracy); -inf for zero.
pub(crate) fn rational_abs_log2(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    let top = |m: &num_bigint::BigUint| -> f64 {
        let shift = m.bits().saturating_sub(53);
        (m >> shift).to_f64().unwrap_or(1.0).log2() + shift as f64
    };
    top(q.numer().magnitude()) - top(q.denom().magnitude())
}
