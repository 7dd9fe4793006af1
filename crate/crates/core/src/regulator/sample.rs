use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::blochgrp::{mu_kernel, FormalSum, DEFAULT_HEIGHT};
use crate::error::Result;
use crate::numberfield::{EmbeddedField, FieldElement};
use crate::numeric::PrecisionContext;

/// Maximal number of exceptional candidates fed to the mu-kernel.
pub const SAMPLE_CANDIDATES: usize = 30;

/// Elements of B(F) for rank experiments: [zeta^k] for the non-trivial
/// roots of unity, then a basis of the exact mu-kernel on small z with
/// z and 1 - z both {2, 3}-units.
pub fn default_sample(e: &EmbeddedField, ctx: &PrecisionContext) -> Result<Vec<FormalSum>> {
    let (zeta, w) = e.torsion_generator(ctx)?;
    let mut out = Vec::new();
    for k in 1..w as i64 {
        out.push(FormalSum::symbol(e, zeta.pow(k)?)?);
    }
    let cands = exceptional_candidates(e, SAMPLE_CANDIDATES);
    for b in mu_kernel(e, &cands, &BigInt::from(DEFAULT_HEIGHT), ctx)? {
        if !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn smooth23(q: &BigRational) -> bool {
    let strip = |n: &BigInt| {
        let mut n = n.abs();
        for p in [2u32, 3] {
            let p = BigInt::from(p);
            while !n.is_zero() && n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        n.is_one()
    };
    !q.is_zero() && strip(q.numer()) && strip(q.denom())
}

/// Small-coordinate z, in a fixed order, with N(z) and N(1 - z) supported
/// on 2 and 3.
pub fn exceptional_candidates(e: &EmbeddedField, limit: usize) -> Vec<FieldElement> {
    let n = e.degree();
    let one = e.field().one();
    let mut out = Vec::new();
    let max_nonzero = if n <= 6 { n } else { 2 };
    for support in 1..=max_nonzero {
        let mut coords = vec![0i64; n];
        enumerate(&mut coords, 0, support, &mut |c| {
            if out.len() >= limit {
                return;
            }
            let z = FieldElement::from_coords(
                e.field(),
                c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
            )
            .expect("degree matches");
            if z.as_rational().is_some() || out.contains(&z) {
                return;
            }
            if smooth23(&z.norm()) && smooth23(&(&one - &z).norm()) {
                out.push(z);
            }
        });
    }
    out
}

fn enumerate(c: &mut Vec<i64>, from: usize, left: usize, f: &mut dyn FnMut(&[i64])) {
    if left == 0 {
        f(c);
        return;
    }
    for i in from..c.len() {
        for v in [1, -1, 2, -2] {
            c[i] = v;
            enumerate(c, i + 1, left - 1, f);
        }
        c[i] = 0;
    }
}
