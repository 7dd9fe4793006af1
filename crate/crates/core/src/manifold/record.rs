use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::blochgrp::{mu, FormalSum, MuReport, MuVerdict};
use crate::error::{BlochError, Result};
use crate::numberfield::{parse_rational, EmbeddedField, FieldElement, NumberField, QPoly};
use crate::numeric::{Complex, PrecisionContext, Real};
use crate::relations::{find_integer_relation, RelationOutcome};

/// One hyperbolic 3-manifold presented by the shapes of an ideal
/// triangulation.
#[derive(Debug, Clone)]
pub struct ManifoldRecord {
    pub name: String,
    pub field: EmbeddedField,
    pub shapes: Vec<FieldElement>,
    pub meta: Map<String, Value>,
    validation: Option<ValidationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub tetrahedra: usize,
    pub positively_oriented: usize,
    pub negatively_oriented: usize,
    /// Informational only; mixed orientations are allowed.
    pub mixed_orientation: bool,
    pub mu: MuReport,
    pub prec_bits: usize,
}

fn rational_of(v: &Value, what: &str) -> Result<BigRational> {
    let s = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) => n.to_string(),
        _ => return Err(BlochError::InvalidInput(format!("{what}: expected a rational, got {v}"))),
    };
    parse_rational(&s).ok_or_else(|| BlochError::InvalidInput(format!("{what}: cannot parse {s:?} as a rational")))
}

fn decimal_of(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.trim().to_string()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(BlochError::InvalidInput(format!("{what}: expected a decimal number, got {v}"))),
    }
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len().max(1)
}

/// The element of F whose image is the numeric shape re + i im, found by an
/// integer relation against the powers of the embedded generator and kept
/// only if it reproduces the given digits.
pub fn recognize_shape(
    e: &EmbeddedField,
    re: &str,
    im: &str,
    height: &BigInt,
    ctx: &PrecisionContext,
) -> Result<FieldElement> {
    let digits = significant_digits(re).max(significant_digits(im));
    let bits = ((digits as f64) * std::f64::consts::LOG2_10) as usize;
    if bits < PrecisionContext::MIN_BITS + 4 {
        return Err(BlochError::InsufficientPrecision(format!("numeric shape {re} + {im} i has too few digits")));
    }
    let c = PrecisionContext::new((bits - 4).min(ctx.prec_bits.max(PrecisionContext::MIN_BITS)))?;
    let p = c.working();
    let w = Complex::new(Real::parse(re, p)?, Real::parse(im, p)?);
    let n = e.degree();
    let alpha = e.root(&c)?;
    let mut xs = vec![w.clone(), Complex::one(alpha.prec())];
    for _ in 1..n {
        let last = xs.last().expect("nonempty").clone();
        xs.push(&last * &alpha);
    }
    // the digits supplied cap the height that can be searched
    let cap = BigInt::from(1u8) << (c.prec_bits / (4 * xs.len()));
    let height = if height < &cap { height.clone() } else { cap };
    if height < BigInt::from(2u8) {
        return Err(BlochError::InsufficientPrecision(format!("numeric shape {re} + {im} i has too few digits")));
    }
    let rel = match find_integer_relation(&xs, &height, &c)? {
        RelationOutcome::Found(r) if !r.coefficients[0].is_zero() => r,
        _ => {
            return Err(BlochError::RecognitionFailed(format!(
                "numeric shape {re} + {im} i is not recognised in the field up to height {height}"
            )))
        }
    };
    let m0 = BigRational::from_integer(rel.coefficients[0].clone());
    let coords = rel.coefficients[1..].iter().map(|v| -BigRational::from_integer(v.clone()) / &m0).collect();
    let z = FieldElement::from_coords(e.field(), coords)?;
    let got = e.embed(&z, ctx)?;
    let err = (&got - &w.with_prec(got.prec())).abs();
    let scale = Real::one(err.prec()) + w.abs().with_prec(err.prec());
    let allowed = &Real::parse(&format!("1e-{}", digits.saturating_sub(2)), err.prec())? * &scale;
    if err > allowed {
        return Err(BlochError::RecognitionFailed(format!(
            "recognised shape {z} does not reproduce {re} + {im} i"
        )));
    }
    Ok(z)
}

impl ManifoldRecord {
    pub fn new(name: &str, field: EmbeddedField, shapes: Vec<FieldElement>, meta: Map<String, Value>) -> Result<Self> {
        if let Some(k) = shapes.iter().position(|z| z.field() != field.field()) {
            return Err(BlochError::InvalidInput(format!("shape {k} lies in a different field")));
        }
        Ok(Self { name: name.to_string(), field, shapes, meta, validation: None })
    }

    pub fn from_json_str(src: &str, height: &BigInt, ctx: &PrecisionContext) -> Result<Self> {
        let v: Value =
            serde_json::from_str(src).map_err(|e| BlochError::InvalidInput(format!("malformed record JSON: {e}")))?;
        Self::from_value(&v, height, ctx)
    }

    /// Reads the record format; `height` bounds the recognition of numeric
    /// shapes.
    pub fn from_value(v: &Value, height: &BigInt, ctx: &PrecisionContext) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| BlochError::InvalidInput("record must be a JSON object".into()))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("unnamed");
        let coeffs = obj
            .get("minpoly")
            .and_then(Value::as_array)
            .ok_or_else(|| BlochError::InvalidInput("record needs a \"minpoly\" array".into()))?
            .iter()
            .map(|c| rational_of(c, "minpoly"))
            .collect::<Result<Vec<_>>>()?;
        let field = NumberField::new(QPoly::new(coeffs), "a")?;
        let root_index = obj
            .get("root_index")
            .and_then(Value::as_u64)
            .ok_or_else(|| BlochError::InvalidInput("record needs a non-negative \"root_index\"".into()))?;
        let e = EmbeddedField::new(field.clone(), root_index as usize)?;
        let exact = match obj.get("shapes") {
            None | Some(Value::Null) => None,
            Some(Value::Array(rows)) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(k, row)| {
                        let coords = row
                            .as_array()
                            .ok_or_else(|| BlochError::InvalidInput(format!("shape {k} must be a coordinate array")))?
                            .iter()
                            .map(|c| rational_of(c, &format!("shape {k}")))
                            .collect::<Result<Vec<_>>>()?;
                        FieldElement::from_coords(&field, coords)
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(BlochError::InvalidInput("\"shapes\" must be an array".into())),
        };
        let numeric = match obj.get("numeric_shapes") {
            None | Some(Value::Null) => None,
            Some(Value::Array(rows)) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(k, row)| match row.as_array().map(Vec::as_slice) {
                        Some([re, im]) => {
                            Ok((decimal_of(re, &format!("numeric shape {k}"))?, decimal_of(im, &format!("numeric shape {k}"))?))
                        }
                        _ => Err(BlochError::InvalidInput(format!("numeric shape {k} must be [re, im]"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(BlochError::InvalidInput("\"numeric_shapes\" must be an array".into())),
        };
        let shapes = match (exact, numeric) {
            (Some(s), None) => s,
            (None, Some(ns)) => ns.iter().map(|(re, im)| recognize_shape(&e, re, im, height, ctx)).collect::<Result<_>>()?,
            (Some(s), Some(ns)) => {
                if s.len() != ns.len() {
                    return Err(BlochError::InvalidInput("\"shapes\" and \"numeric_shapes\" differ in length".into()));
                }
                for (k, (z, (re, im))) in s.iter().zip(&ns).enumerate() {
                    if &recognize_shape(&e, re, im, height, ctx)? != z {
                        return Err(BlochError::InvalidInput(format!("numeric shape {k} does not match the exact shape")));
                    }
                }
                s
            }
            (None, None) => return Err(BlochError::InvalidInput("record needs \"shapes\" or \"numeric_shapes\"".into())),
        };
        let meta = obj.get("meta").and_then(Value::as_object).cloned().unwrap_or_default();
        Self::new(name, e, shapes, meta)
    }

    /// The record in its input format, with exact shapes.
    pub fn to_json(&self) -> Value {
        let q = |v: &BigRational| Value::String(v.to_string());
        json!({
            "name": self.name,
            "minpoly": self.field.field().min_poly().coeffs().iter().map(q).collect::<Vec<_>>(),
            "root_index": self.field.root_index(),
            "shapes": self.shapes.iter().map(|z| z.coords().iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "meta": self.meta,
        })
    }

    pub fn validation(&self) -> Option<&ValidationReport> {
        self.validation.as_ref()
    }

    pub fn is_validated(&self) -> bool {
        self.validation.is_some()
    }

    /// Checks nondegeneracy and Thurston's relation sum z ^ (1 - z) = 0.
    pub fn validate(&mut self, ctx: &PrecisionContext) -> Result<&ValidationReport> {
        if self.shapes.is_empty() {
            return Err(BlochError::InvalidInput(format!("{}: empty triangulation", self.name)));
        }
        let mut pos = 0;
        let mut neg = 0;
        for (k, z) in self.shapes.iter().enumerate() {
            if z.is_zero() || z.is_one() {
                return Err(BlochError::DegenerateShape(format!("shape {k} is {z}")));
            }
            let w = self.field.embed(z, ctx)?;
            let tol = &ctx.tol().mul_pow2(16) * &(Real::one(ctx.prec_bits) + w.abs().with_prec(ctx.prec_bits));
            if w.im.abs() <= tol {
                return Err(BlochError::DegenerateShape(format!("shape {k} = {z} is real: flat tetrahedron")));
            }
            if w.im.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        let beta = self.sum_of_shapes()?;
        let m = mu(&beta, ctx)?;
        if m.verdict != MuVerdict::ZeroExact {
            let coords: Vec<String> = m.report().wedge.iter().map(|(i, j, c)| format!("({i},{j}): {c}")).collect();
            return Err(BlochError::ThurstonViolation(format!(
                "{}: sum z ^ (1 - z) has wedge coordinates [{}]",
                self.name,
                coords.join(", ")
            )));
        }
        self.validation = Some(ValidationReport {
            tetrahedra: self.shapes.len(),
            positively_oriented: pos,
            negatively_oriented: neg,
            mixed_orientation: pos > 0 && neg > 0,
            mu: m.report(),
            prec_bits: ctx.prec_bits,
        });
        Ok(self.validation.as_ref().expect("just set"))
    }

    fn sum_of_shapes(&self) -> Result<FormalSum> {
        FormalSum::from_terms(&self.field, self.shapes.iter().map(|z| (z.clone(), BigRational::from_integer(1.into()))))
    }

    /// beta(M) = sum [z_i].
    pub fn bloch_invariant(&self) -> Result<FormalSum> {
        if self.validation.is_none() {
            return Err(BlochError::NotValidated(format!("{} has not been validated", self.name)));
        }
        self.sum_of_shapes()
    }

    /// The disjoint union: both shape lists over the same embedded field.
    pub fn disjoint_union(&self, other: &ManifoldRecord) -> Result<Self> {
        if self.field != other.field {
            return Err(BlochError::InvalidInput("records use different embedded fields".into()));
        }
        let shapes = self.shapes.iter().chain(&other.shapes).cloned().collect();
        Self::new(&format!("{} + {}", self.name, other.name), self.field.clone(), shapes, Map::new())
    }

    /// The same shapes under the complex-conjugate embedding. The volume
    /// changes sign and the Chern-Simons class is unchanged mod Q.
    pub fn conjugate_embedding(&self, ctx: &PrecisionContext) -> Result<Self> {
        let t = self.field.field().roots(ctx)?;
        let e = EmbeddedField::new(self.field.field().clone(), t.conjugate_index(self.field.root_index()))?;
        Self::new(&format!("{} (conjugate embedding)", self.name), e, self.shapes.clone(), self.meta.clone())
    }

    /// Every tetrahedron with an odd vertex permutation, z -> 1/z: the
    /// orientation is reversed, so volume and Chern-Simons class change sign.
    pub fn reversed(&self) -> Result<Self> {
        let shapes = self.shapes.iter().map(FieldElement::inverse).collect::<Result<_>>()?;
        Self::new(&format!("{} (reversed)", self.name), self.field.clone(), shapes, self.meta.clone())
    }

    /// The mirror image with positively oriented tetrahedra: shapes 1/z
    /// under the conjugate embedding. Same volume, opposite Chern-Simons
    /// class.
    pub fn mirror(&self, ctx: &PrecisionContext) -> Result<Self> {
        let mut m = self.reversed()?.conjugate_embedding(ctx)?;
        m.name = format!("{} (mirror)", self.name);
        Ok(m)
    }
}
