use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{BlochError, Result};
use crate::numberfield::{euler_phi, EmbeddedField, FieldElement, NumberField, RootKind};
use crate::numeric::{PrecisionContext, Real};
use crate::relations::{relation_lattice, smith_normal_form, IntegerMatrix};

/// Default height up to which missing relations are excluded.
pub const DEFAULT_HEIGHT: u64 = 1_000_000;

/// Free generators of the subgroup of F* / torsion spanned by a finite
/// set S, with each member of S written over them.
#[derive(Debug, Clone)]
pub struct MultiplicativeBasis {
    elements: Vec<FieldElement>,
    generators: Vec<FieldElement>,
    relations: Vec<Vec<BigInt>>,
    exponents: Vec<Vec<BigInt>>,
    torsion_orders: Vec<u64>,
    pub height_bound: BigInt,
    pub prec_bits: usize,
    /// Whether every relation of height at most `height_bound` is certified
    /// to lie in the span of `relations`.
    pub exclusion_certified: bool,
}

impl MultiplicativeBasis {
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Verified relations among the elements, one row per relation.
    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn index_of(&self, s: &FieldElement) -> Option<usize> {
        self.elements.iter().position(|e| e == s)
    }

    /// Exponent vector of the i-th element over the generators.
    pub fn exponents(&self, i: usize) -> &[BigInt] {
        &self.exponents[i]
    }

    /// Order of the root of unity s / prod u^e for the i-th element.
    pub fn torsion_order(&self, i: usize) -> u64 {
        self.torsion_orders[i]
    }

    pub fn summary(&self) -> BasisSummary {
        BasisSummary {
            rank: self.rank(),
            elements: self.elements.iter().map(|e| e.to_string()).collect(),
            generators: self.generators.iter().map(|e| e.to_string()).collect(),
            relations: self.relations.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            height_bound: self.height_bound.to_string(),
            prec_bits: self.prec_bits,
            exclusion_certified: self.exclusion_certified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisSummary {
    pub rank: usize,
    pub elements: Vec<String>,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
    pub height_bound: String,
    pub prec_bits: usize,
    pub exclusion_certified: bool,
}

/// lcm of all m with phi(m) | n; the number of roots of unity in a degree
/// n field divides it.
pub fn torsion_exponent_bound(n: usize) -> u64 {
    let n = n as u64;
    (1..=2 * n * n + 2).filter(|&m| n % euler_phi(m) == 0).fold(1u64, |acc, m| acc.lcm(&m))
}

/// prod s_i^(m_i), computed exactly.
pub fn power_product(field: &NumberField, elements: &[FieldElement], m: &[BigInt]) -> Result<FieldElement> {
    let mut num = field.one();
    let mut den = field.one();
    for (s, e) in elements.iter().zip(m) {
        if e.is_zero() {
            continue;
        }
        let k = e
            .abs()
            .to_i64()
            .ok_or_else(|| BlochError::InsufficientPrecision(format!("exponent {e} too large")))?;
        let p = s.pow(k)?;
        if e.is_positive() {
            num = &num * &p;
        } else {
            den = &den * &p;
        }
    }
    Ok(&num * &den.inverse()?)
}

fn log_vectors(
    e: &EmbeddedField,
    elements: &[FieldElement],
    ctx: &PrecisionContext,
) -> Result<Vec<Vec<Real>>> {
    let table = e.field().roots(ctx)?;
    let places: Vec<usize> = (0..table.len()).filter(|&i| !matches!(table.kinds[i], RootKind::Lower { .. })).collect();
    let sigma = e.root(ctx)?;
    let prec = ctx.working();
    let pi = Real::pi(prec);
    let mut rows = Vec::with_capacity(elements.len() + 1);
    for s in elements {
        let mut v: Vec<Real> = places.iter().map(|&i| s.embed(table.root(i)).abs().ln()).collect();
        v.push(&s.embed(&sigma).arg() / &pi);
        rows.push(v);
    }
    let w = torsion_exponent_bound(e.degree());
    let mut wind = vec![Real::zero(prec); places.len()];
    wind.push(Real::from_i64(2, prec) / Real::from_i64(w as i64, prec));
    rows.push(wind);
    Ok(rows)
}

/// Relation lattice among `elements` modulo torsion, verified exactly, and
/// free generators read off from its Smith normal form.
pub fn build_multiplicative_basis(
    e: &EmbeddedField,
    elements: &[FieldElement],
    ctx: &PrecisionContext,
) -> Result<MultiplicativeBasis> {
    build_multiplicative_basis_with(e, elements, &BigInt::from(DEFAULT_HEIGHT), ctx)
}

pub fn build_multiplicative_basis_with(
    e: &EmbeddedField,
    elements: &[FieldElement],
    height: &BigInt,
    ctx: &PrecisionContext,
) -> Result<MultiplicativeBasis> {
    if let Some(z) = elements.iter().find(|s| s.is_zero()) {
        return Err(BlochError::InvalidInput(format!("{z} is zero")));
    }
    if elements.iter().any(|s| s.field() != e.field()) {
        return Err(BlochError::InvalidInput("elements from a different field".into()));
    }
    let m = elements.len();
    if m == 0 {
        return Ok(MultiplicativeBasis {
            elements: vec![],
            generators: vec![],
            relations: vec![],
            exponents: vec![],
            torsion_orders: vec![],
            height_bound: height.clone(),
            prec_bits: ctx.prec_bits,
            exclusion_certified: true,
        });
    }
    let mut c = *ctx;
    let mut verified: Vec<Vec<BigInt>> = Vec::new();
    let mut certified = false;
    for attempt in 0..=ctx.retry_doublings {
        let values = log_vectors(e, elements, &c)?;
        let lattice = relation_lattice(&values, &c)?;
        let mut all_ok = true;
        verified.clear();
        for r in &lattice.relations {
            let r = &r[..m];
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            if power_product(e.field(), elements, r).map(|x| x.is_root_of_unity()).unwrap_or(false) {
                verified.push(r.to_vec());
            } else {
                all_ok = false;
            }
        }
        certified = all_ok && lattice.excludes_height(height);
        if all_ok || attempt == ctx.retry_doublings {
            break;
        }
        c = c.doubled();
    }
    let (generators, exponents) = free_part(e.field(), elements, &verified)?;
    let mut torsion_orders = Vec::with_capacity(m);
    for (s, ex) in elements.iter().zip(&exponents) {
        let zeta = s * &power_product(e.field(), &generators, ex)?.inverse()?;
        let order = zeta
            .root_of_unity_order()
            .ok_or_else(|| BlochError::Internal(format!("{s} is not reproduced by the basis up to torsion")))?;
        torsion_orders.push(order);
    }
    Ok(MultiplicativeBasis {
        elements: elements.to_vec(),
        generators,
        relations: verified,
        exponents,
        torsion_orders,
        height_bound: height.clone(),
        prec_bits: c.prec_bits,
        exclusion_certified: certified,
    })
}

type FreePart = (Vec<FieldElement>, Vec<Vec<BigInt>>);

fn free_part(field: &NumberField, elements: &[FieldElement], relations: &[Vec<BigInt>]) -> Result<FreePart> {
    let m = elements.len();
    if relations.is_empty() {
        let ex = (0..m).map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        return Ok((elements.to_vec(), ex));
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(relations.to_vec())?);
    let r = snf.rank();
    let mut generators = Vec::with_capacity(m - r);
    for j in r..m {
        generators.push(power_product(field, elements, snf.v_inv.row(j))?);
    }
    let exponents = (0..m).map(|s| (r..m).map(|j| snf.v.get(s, j).clone()).collect()).collect();
    Ok((generators, exponents))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_bounds() {
        assert_eq!(torsion_exponent_bound(1), 2);
        assert_eq!(torsion_exponent_bound(2), 12);
        assert_eq!(torsion_exponent_bound(3), 2);
        assert_eq!(torsion_exponent_bound(4), 120);
    }

    #[test]
    fn unit_power_product() {
        let f = crate::numberfield::NumberField::parse("x^2 - 2").unwrap();
        let u = f.element("1 + x").unwrap();
        let v = f.element("x - 1").unwrap();
        let p = power_product(&f, &[u, v], &[BigInt::from(1), BigInt::from(1)]).unwrap();
        assert!(p.is_one());
    }
}
