use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serialize;

use crate::error::{BlochError, Result};
use crate::numberfield::{EmbeddedField, FieldElement};
use crate::numeric::PrecisionContext;

/// A finite Q-linear combination of symbols [z], z in F \ {0, 1}.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSum {
    parent: EmbeddedField,
    terms: BTreeMap<FieldElement, BigRational>,
}

fn check_symbol(parent: &EmbeddedField, z: &FieldElement) -> Result<()> {
    if z.field() != parent.field() {
        return Err(BlochError::InvalidInput(format!("{z} does not belong to the parent field")));
    }
    if z.is_zero() || z.is_one() {
        return Err(BlochError::DegenerateConfiguration { term: format!("[{z}]"), value: z.to_string() });
    }
    Ok(())
}

impl FormalSum {
    pub fn zero(parent: &EmbeddedField) -> Self {
        FormalSum { parent: parent.clone(), terms: BTreeMap::new() }
    }

    /// The single symbol [z].
    pub fn symbol(parent: &EmbeddedField, z: FieldElement) -> Result<Self> {
        Self::from_terms(parent, [(z, BigRational::one())])
    }

    pub fn from_terms<I>(parent: &EmbeddedField, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FieldElement, BigRational)>,
    {
        let mut s = Self::zero(parent);
        for (z, c) in terms {
            check_symbol(parent, &z)?;
            s.push(z, c);
        }
        Ok(s)
    }

    fn push(&mut self, z: FieldElement, c: BigRational) {
        let slot = self.terms.entry(z.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&z);
        }
    }

    pub fn parent(&self) -> &EmbeddedField {
        &self.parent
    }

    pub fn terms(&self) -> &BTreeMap<FieldElement, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, z: &FieldElement) -> BigRational {
        self.terms.get(z).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &FieldElement> {
        self.terms.keys()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.parent);
        }
        FormalSum { parent: self.parent.clone(), terms: self.terms.iter().map(|(z, c)| (z.clone(), c * q)).collect() }
    }

    /// Applies `f` to every symbol, merging coefficients.
    pub fn map_symbols<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&FieldElement) -> FieldElement,
    {
        Self::from_terms(&self.parent, self.terms.iter().map(|(z, c)| (f(z), c.clone())))
    }

    fn assert_same_parent(&self, o: &FormalSum) {
        assert!(self.parent == o.parent, "formal sums over different embedded fields");
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;
    fn add(self, o: &FormalSum) -> FormalSum {
        self.assert_same_parent(o);
        let mut s = self.clone();
        for (z, c) in &o.terms {
            s.push(z.clone(), c.clone());
        }
        s
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;
    fn sub(self, o: &FormalSum) -> FormalSum {
        self + &-o
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        FormalSum { parent: self.parent.clone(), terms: self.terms.iter().map(|(z, c)| (z.clone(), -c)).collect() }
    }
}

impl std::fmt::Display for FormalSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(z, c)| format!("{c}*[{z}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

struct Coords<'a>(&'a FieldElement);

impl Serialize for Coords<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.0.coords();
        let mut seq = s.serialize_seq(Some(c.len()))?;
        for x in c {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    coefficient: String,
    coords: Coords<'a>,
}

impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self.parent.field();
        let minpoly: Vec<String> = f.min_poly().coeffs().iter().map(|c| c.to_string()).collect();
        let terms: Vec<TermOut> =
            self.terms.iter().map(|(z, c)| TermOut { coefficient: c.to_string(), coords: Coords(z) }).collect();
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("minpoly", &minpoly)?;
        m.serialize_entry("root_index", &self.parent.root_index())?;
        m.serialize_entry("terms", &terms)?;
        m.end()
    }
}

/// [x] - [y] + [y/x] - [(1 - 1/x)/(1 - 1/y)] + [(1 - x)/(1 - y)].
pub fn five_term(parent: &EmbeddedField, x: &FieldElement, y: &FieldElement) -> Result<FormalSum> {
    let f = parent.field();
    let one = f.one();
    let degenerate = |name: &str, v: &FieldElement| -> Result<()> {
        if v.is_zero() || v.is_one() {
            return Err(BlochError::DegenerateConfiguration { term: name.into(), value: v.to_string() });
        }
        Ok(())
    };
    degenerate("x", x)?;
    degenerate("y", y)?;
    let yx = y * &x.inverse()?;
    degenerate("y/x", &yx)?;
    let t4 = &(&one - &x.inverse()?) * &(&one - &y.inverse()?).inverse()?;
    degenerate("(1-1/x)/(1-1/y)", &t4)?;
    let t5 = &(&one - x) * &(&one - y).inverse()?;
    degenerate("(1-x)/(1-y)", &t5)?;
    let p = BigRational::one();
    let m = -BigRational::one();
    FormalSum::from_terms(
        parent,
        [(x.clone(), p.clone()), (y.clone(), m.clone()), (yx, p.clone()), (t4, m), (t5, p)],
    )
}

/// Image under the involution induced by complex conjugation.
pub fn involution(beta: &FormalSum, ctx: &PrecisionContext) -> Result<FormalSum> {
    let g = beta.parent.conjugation(ctx)?;
    beta.map_symbols(|z| z.substitute(&g))
}

/// (beta + delta beta)/2 and (beta - delta beta)/2.
pub fn eigenspace_split(beta: &FormalSum, ctx: &PrecisionContext) -> Result<(FormalSum, FormalSum)> {
    let d = involution(beta, ctx)?;
    let half = BigRational::new(1.into(), 2.into());
    Ok(((beta + &d).scale(&half), (beta - &d).scale(&half)))
}
