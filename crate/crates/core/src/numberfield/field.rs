//! Number fields Q[a]/(f) and their elements in the power basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::irreducible::check_irreducible;
use super::poly::QPoly;
use super::roots::{isolate_roots, RootTable};
use crate::error::{BlochError, Result};
use crate::numeric::{Complex, PrecisionContext};
use crate::relations::QMatrix;

/// Largest degree accepted by the irreducibility test.
pub const MAX_DEGREE: usize = 24;

struct Inner {
    min_poly: QPoly,
    name: String,
    roots: Mutex<BTreeMap<usize, Arc<RootTable>>>,
}

/// A number field given by a monic irreducible polynomial over Q.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<Inner>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.min_poly == other.inner.min_poly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.inner.min_poly.format_with(&self.inner.name))
    }
}

impl NumberField {
    /// Builds Q[name]/(min_poly) after verifying irreducibility.
    pub fn new(min_poly: QPoly, name: &str) -> Result<Self> {
        if min_poly.degree() == 0 {
            return Err(BlochError::InvalidInput("defining polynomial must have degree at least 1".into()));
        }
        if !min_poly.is_monic() {
            return Err(BlochError::InvalidInput(format!("defining polynomial {min_poly} is not monic")));
        }
        if min_poly.degree() > MAX_DEGREE {
            return Err(BlochError::UnsupportedDegree(min_poly.degree(), MAX_DEGREE));
        }
        check_irreducible(&min_poly)?;
        Ok(Self::new_unchecked(min_poly, name))
    }

    /// Builds the field without the irreducibility test. The caller
    /// guarantees irreducibility (used for cyclotomic polynomials).
    pub(crate) fn new_unchecked(min_poly: QPoly, name: &str) -> Self {
        NumberField { inner: Arc::new(Inner { min_poly, name: name.to_string(), roots: Mutex::new(BTreeMap::new()) }) }
    }

    /// Parses a polynomial string; the variable becomes the generator name.
    pub fn parse(src: &str) -> Result<Self> {
        let (p, var) = QPoly::parse(src)?;
        Self::new(p, var.as_deref().unwrap_or("a"))
    }

    /// The N-th cyclotomic field Q(zeta_N) with generator `z`.
    pub fn cyclotomic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(BlochError::InvalidInput("cyclotomic index must be positive".into()));
        }
        Ok(Self::new_unchecked(cyclotomic_poly(n), "z"))
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.inner.min_poly
    }

    pub fn degree(&self) -> usize {
        self.inner.min_poly.degree()
    }

    pub fn generator_name(&self) -> &str {
        &self.inner.name
    }

    pub fn gen(&self) -> FieldElement {
        FieldElement::from_poly(self, &QPoly::x())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_rational(self, BigRational::one())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_rational(self, BigRational::zero())
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        FieldElement::from_rational(self, BigRational::from_integer(BigInt::from(v)))
    }

    /// Parses an element written as a polynomial in the generator name.
    pub fn element(&self, src: &str) -> Result<FieldElement> {
        let (p, var) = QPoly::parse(src)?;
        if let Some(v) = var {
            if v != self.inner.name {
                return Err(BlochError::InvalidInput(format!(
                    "element '{src}' uses variable {v}, field generator is {}",
                    self.inner.name
                )));
            }
        }
        Ok(FieldElement::from_poly(self, &p))
    }

    /// Certified root table at `ctx.working()` bits (cached per precision).
    pub fn roots(&self, ctx: &PrecisionContext) -> Result<Arc<RootTable>> {
        let prec = ctx.working();
        if let Some(t) = self.inner.roots.lock().expect("root cache").get(&prec) {
            return Ok(t.clone());
        }
        let t = Arc::new(isolate_roots(&self.inner.min_poly, prec)?);
        self.inner.roots.lock().expect("root cache").insert(prec, t.clone());
        Ok(t)
    }

    /// Multiplication-by-x matrix: column j holds the coordinates of x * a^j.
    pub fn mul_matrix(&self, x: &FieldElement) -> QMatrix {
        let n = self.degree();
        let mut m = QMatrix::zeros(n, n);
        let mut col = x.clone();
        let a = self.gen();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.coords[i].clone());
            }
            col = &col * &a;
        }
        m
    }
}

/// The N-th cyclotomic polynomial, computed exactly by division.
pub fn cyclotomic_poly(n: u64) -> QPoly {
    let mut p = QPoly::monomial(n as usize).sub(&QPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.div_exact(&cyclotomic_poly(d)).expect("cyclotomic factor");
        }
    }
    p
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// An element of a number field in the power basis 1, a, ..., a^(n-1).
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinate-wise order, used only to canonicalise maps keyed by elements.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl FieldElement {
    pub fn from_poly(field: &NumberField, p: &QPoly) -> Self {
        let r = p.rem(field.min_poly());
        let n = field.degree();
        FieldElement { field: field.clone(), coords: (0..n).map(|i| r.coeff(i)).collect() }
    }

    pub fn from_coords(field: &NumberField, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(BlochError::InvalidInput(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field: field.clone(), coords })
    }

    pub fn from_rational(field: &NumberField, v: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = v;
        FieldElement { field: field.clone(), coords }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(BlochError::DivisionByZero);
        }
        let (g, s, _) = self.to_poly().xgcd(self.field.min_poly());
        if g.degree() != 0 {
            return Err(BlochError::Internal("non-invertible element in a field".into()));
        }
        Ok(FieldElement::from_poly(&self.field, &s))
    }

    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluates the coordinate polynomial at another element: p(y).
    pub fn substitute(&self, y: &FieldElement) -> FieldElement {
        let mut acc = y.field.zero();
        for c in self.coords.iter().rev() {
            acc = &(&acc * y) + &FieldElement::from_rational(&y.field, c.clone());
        }
        acc
    }

    /// Image under the embedding a -> `root`.
    pub fn embed(&self, root: &Complex) -> Complex {
        self.to_poly().eval_complex(root)
    }

    pub fn trace(&self) -> BigRational {
        let m = self.field.mul_matrix(self);
        (0..m.nrows()).map(|i| m.get(i, i).clone()).sum()
    }

    pub fn norm(&self) -> BigRational {
        self.field.mul_matrix(self).det().expect("square")
    }

    /// Characteristic polynomial of multiplication by the element.
    pub fn charpoly(&self) -> QPoly {
        QPoly::new(self.field.mul_matrix(self).charpoly().expect("square"))
    }

    /// Exact minimal polynomial over Q (monic).
    pub fn min_poly(&self) -> QPoly {
        // charpoly = minpoly^k with minpoly irreducible
        self.charpoly().squarefree_part()
    }

    /// Order m if the element is a root of unity (checking every m with
    /// phi(m) <= n), otherwise `None`.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.degree() as u64;
        let max_m = 2 * n * n + 2;
        let mut p = self.clone();
        for m in 1..=max_m {
            if euler_phi(m) <= n && p.is_one() {
                return Some(m);
            }
            p = &p * self;
        }
        None
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.root_of_unity_order().is_some()
    }

    pub fn format(&self) -> String {
        self.to_poly().format_with(self.field.generator_name())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.format())
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        FieldElement { field: self.field.clone(), coords }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        FieldElement { field: self.field.clone(), coords }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        FieldElement::from_poly(&self.field, &self.to_poly().mul(&o.to_poly()))
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}
