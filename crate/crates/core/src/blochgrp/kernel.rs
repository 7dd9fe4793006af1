use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::basis::build_multiplicative_basis_with;
use super::formal::FormalSum;
use super::wedge::{mu_in_basis, WedgeElement};
use crate::error::Result;
use crate::numberfield::{EmbeddedField, FieldElement};
use crate::numeric::PrecisionContext;
use crate::relations::QMatrix;

/// A basis of the combinations sum n_i [z_i] of the candidates whose mu
/// vanishes exactly, each scaled to coprime integer coefficients.
pub fn mu_kernel(
    e: &EmbeddedField,
    candidates: &[FieldElement],
    height: &BigInt,
    ctx: &PrecisionContext,
) -> Result<Vec<FormalSum>> {
    let one = e.field().one();
    let zs: Vec<FieldElement> = candidates
        .iter()
        .filter(|z| !z.is_zero() && !z.is_one())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if zs.is_empty() {
        return Ok(vec![]);
    }
    let s: BTreeSet<FieldElement> = zs.iter().flat_map(|z| [z.clone(), &one - z]).collect();
    let s: Vec<FieldElement> = s.into_iter().collect();
    let basis = build_multiplicative_basis_with(e, &s, height, ctx)?;
    let cols: Vec<WedgeElement> = zs
        .iter()
        .map(|z| Ok(mu_in_basis(&FormalSum::symbol(e, z.clone())?, basis.clone())?.wedge))
        .collect::<Result<_>>()?;
    let t = basis.rank();
    let mut rows = Vec::new();
    for j in 0..t {
        for k in j + 1..t {
            rows.push(cols.iter().map(|w| w.coords[j][k].clone()).collect::<Vec<_>>());
        }
    }
    let kernel = if rows.is_empty() {
        (0..zs.len()).map(|i| (0..zs.len()).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))).collect()).collect()
    } else {
        QMatrix::from_rows(rows)?.kernel()
    };
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let v = primitive_integer(&v);
        out.push(FormalSum::from_terms(e, zs.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()))?);
    }
    Ok(out)
}

fn primitive_integer(v: &[BigRational]) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter().map(|x| BigRational::from_integer(x / &g * &sign)).collect()
}
