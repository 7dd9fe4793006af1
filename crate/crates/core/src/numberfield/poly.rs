//! Dense univariate polynomials over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{BlochError, Result};
use crate::numeric::Complex;
use crate::relations::QMatrix;

/// Polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(v: BigRational) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        QPoly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.c.iter().map(|v| v / &l).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.c.iter().map(|v| v * k).collect())
    }

    pub fn add(&self, o: &QPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dn = d.degree();
        if r.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let lead_inv = d.lead().recip();
        let mut quo = vec![BigRational::zero(); r.len() - dn];
        for k in (0..quo.len()).rev() {
            let f = &r[k + dn] * &lead_inv;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] -= &f * dc;
            }
            quo[k] = f;
        }
        r.truncate(dn);
        (Self::new(quo), Self::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (qu, r) = self.div_rem(d);
        r.is_zero().then_some(qu)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g = gcd (monic).
    pub fn xgcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qu, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&qu.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&qu.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lead().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn derivative(&self) -> QPoly {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, v)| v * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, v| acc * x + v)
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let p = z.prec();
        self.c.iter().rev().fold(Complex::zero(p), |acc, v| &(&acc * z) + &Complex::from_rational(v, p))
    }

    /// p(x + k)
    pub fn shift(&self, k: &BigRational) -> QPoly {
        let lin = Self::new(vec![k.clone(), BigRational::one()]);
        self.compose(&lin)
    }

    /// p(r(x))
    pub fn compose(&self, r: &QPoly) -> QPoly {
        self.c.iter().rev().fold(Self::zero(), |acc, v| acc.mul(r).add(&Self::constant(v.clone())))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree part (monic).
    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Number of distinct real roots, by an exact Sturm sequence.
    pub fn real_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&q(-1)));
        }
        let changes = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos = seq.iter().map(|p| p.lead().signum().to_i32()).collect();
        let at_neg = seq
            .iter()
            .map(|p| {
                let s = p.lead().signum().to_i32();
                if p.degree() % 2 == 1 { -s } else { s }
            })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    /// Number of distinct roots in (a, b].
    pub fn real_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&q(-1)));
        }
        let var = |x: &BigRational| {
            let s: Vec<BigRational> = seq.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero()).collect();
            s.windows(2).filter(|w| w[0].is_positive() != w[1].is_positive()).count()
        };
        var(a) - var(b)
    }

    /// Lowest common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()))
    }

    /// Integer coefficients of d * self where d clears denominators.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let d = BigRational::from_integer(self.denominator_lcm());
        self.c.iter().map(|v| (v * &d).to_integer()).collect()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(|v| v.is_integer())
    }

    /// For monic `self` with denominators, returns (D, g) with
    /// g(x) = D^n self(x / D) monic with integer coefficients.
    pub fn integral_monic(&self) -> (BigInt, QPoly) {
        let n = self.degree();
        let d = self.denominator_lcm();
        let mut out = Vec::with_capacity(n + 1);
        for (i, v) in self.c.iter().enumerate() {
            out.push(v * BigRational::from_integer(d.pow((n - i) as u32)));
        }
        (d, Self::new(out))
    }

    /// Resultant by the determinant of the Sylvester matrix.
    pub fn resultant(&self, o: &QPoly) -> BigRational {
        let (m, n) = (self.degree(), o.degree());
        if self.is_zero() || o.is_zero() {
            return BigRational::zero();
        }
        if m == 0 && n == 0 {
            return BigRational::one();
        }
        let size = m + n;
        let mut s = QMatrix::zeros(size, size);
        for i in 0..n {
            for (j, v) in self.c.iter().rev().enumerate() {
                s.set(i, i + j, v.clone());
            }
        }
        for i in 0..m {
            for (j, v) in o.c.iter().rev().enumerate() {
                s.set(n + i, i + j, v.clone());
            }
        }
        s.det().expect("square")
    }

    /// Discriminant (-1)^(n(n-1)/2) Res(f, f') / lead(f).
    pub fn discriminant(&self) -> BigRational {
        let n = self.degree();
        let r = self.resultant(&self.derivative()) / self.lead();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -r } else { r }
    }

    /// Exact Lagrange interpolation through (x_i, y_i).
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> QPoly {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::one();
            let mut den = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::new(vec![-xj.clone(), BigRational::one()]));
                    den *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / den)));
        }
        acc
    }

    /// Formats with the given variable name, highest degree first.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let a = v.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }

    /// Parses strings such as `x^4 - 2`, `a^2 + 3/2*a - 1` or `2x+1` in a
    /// single variable. The variable name is returned alongside.
    pub fn parse(src: &str) -> Result<(QPoly, Option<String>)> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(BlochError::InvalidInput("empty polynomial".into()));
        }
        let bad = |why: &str| BlochError::InvalidInput(format!("cannot parse polynomial '{src}': {why}"));
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut var: Option<String> = None;
        let mut acc = Self::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let split = body.find(|c: char| c.is_ascii_alphabetic());
            let (coef_str, mono) = match split {
                Some(k) => (&body[..k], Some(&body[k..])),
                None => (body, None),
            };
            let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
            let coef = if coef_str.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef_str).ok_or_else(|| bad("bad coefficient"))?
            };
            let deg = match mono {
                None => 0,
                Some(m) => {
                    let (name, exp) = match m.find('^') {
                        Some(k) => (&m[..k], Some(&m[k + 1..])),
                        None => (m, None),
                    };
                    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(bad("bad variable"));
                    }
                    match &var {
                        Some(v) if v != name => return Err(bad("more than one variable")),
                        _ => var = Some(name.to_string()),
                    }
                    match exp {
                        None => 1,
                        Some(e) => e.parse::<usize>().map_err(|_| bad("bad exponent"))?,
                    }
                }
            };
            if deg > 4096 {
                return Err(bad("exponent too large"));
            }
            acc = acc.add(&Self::monomial(deg).scale(&(coef * q(sign))));
        }
        Ok((acc, var))
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.75`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.parse().ok()?;
        let d: BigInt = b.parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = a.starts_with('-');
        let ip: BigInt = if a.is_empty() || a == "-" || a == "+" { BigInt::zero() } else { a.parse().ok()? };
        let fp: BigInt = b.parse().ok()?;
        let den = BigInt::from(10u32).pow(b.len() as u32);
        let frac = BigRational::new(fp, den);
        let ip = BigRational::from_integer(ip.abs());
        let v = ip + frac;
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

trait SignumI32 {
    fn to_i32(&self) -> i32;
}

impl SignumI32 for BigRational {
    fn to_i32(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let (p, v) = QPoly::parse("x^4 - 2").unwrap();
        assert_eq!(p, QPoly::from_i64(&[-2, 0, 0, 0, 1]));
        assert_eq!(v.as_deref(), Some("x"));
        assert_eq!(p.to_string(), "x^4 - 2");
        let (p, _) = QPoly::parse("-a^2 + 3/2*a - 1").unwrap();
        assert_eq!(p.to_string(), "-x^2 + 3/2*x - 1");
        let (p, _) = QPoly::parse("2x+1").unwrap();
        assert_eq!(p, QPoly::from_i64(&[1, 2]));
        assert!(QPoly::parse("x^2 + y").is_err());
        assert!(QPoly::parse("x^").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = QPoly::from_i64(&[-1, 0, 1]);
        let b = QPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(QPoly::from_i64(&[-1, 1])));
        let (g, s, t) = a.xgcd(&QPoly::from_i64(&[2, 1]));
        assert_eq!(g, QPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&QPoly::from_i64(&[2, 1]))), QPoly::one());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(QPoly::from_i64(&[1, 0, 1]).real_root_count(), 0);
        assert_eq!(QPoly::from_i64(&[1, 0, -1, 1]).real_root_count(), 1);
        assert_eq!(QPoly::from_i64(&[-2, 0, 0, 0, 1]).real_root_count(), 2);
        assert_eq!(QPoly::from_i64(&[-2, 0, 0, 0, 1]).real_roots_in(&q(0), &q(2)), 1);
    }

    #[test]
    fn discriminants() {
        assert_eq!(QPoly::from_i64(&[1, 0, -1, 1]).discriminant(), q(-23));
        assert_eq!(QPoly::from_i64(&[1, 0, 1]).discriminant(), q(-4));
        assert_eq!(QPoly::from_i64(&[-2, 0, 0, 1]).discriminant(), q(-108));
    }

    #[test]
    fn integral_monic_clears_denominators() {
        let p = QPoly::new(vec![BigRational::new(1.into(), 4.into()), BigRational::new(1.into(), 2.into()), q(1)]);
        let (d, g) = p.integral_monic();
        assert!(g.has_integer_coeffs() && g.is_monic());
        assert_eq!(d, BigInt::from(4));
        assert_eq!(g, QPoly::from_i64(&[4, 2, 1]));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = QPoly::from_i64(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (q(i), p.eval(&q(i)))).collect();
        assert_eq!(QPoly::interpolate(&pts), p);
    }
}
