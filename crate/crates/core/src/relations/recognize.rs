//! Rational recognition by continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{BlochError, Result};
use crate::numeric::{PrecisionContext, Real};

/// Convergents p/q of the continued fraction of `x` with q <= `max_den`.
pub fn convergents(x: &BigRational, max_den: &BigInt) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = r.numer().div_floor(r.denom());
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    out
}

/// Returns p/q with q <= `max_denominator` and |x - p/q| <= 2^(-prec/2),
/// choosing the continued-fraction convergent with smallest denominator.
pub fn rational_recognize(x: &Real, max_denominator: &BigInt, ctx: &PrecisionContext) -> Result<Option<BigRational>> {
    if !max_denominator.is_positive() {
        return Err(BlochError::InvalidInput("max_denominator must be positive".into()));
    }
    let half = (ctx.prec_bits / 2) as i64;
    if let Some(e) = x.exponent() {
        if e > (ctx.prec_bits / 4) as i64 {
            return Err(BlochError::InvalidInput(format!(
                "|x| must be below 2^{} for rational recognition",
                ctx.prec_bits / 4
            )));
        }
    }
    let q = x.to_rational();
    let tol = BigRational::new(BigInt::one(), BigInt::one() << half as usize);
    Ok(convergents(&q, max_denominator).into_iter().find(|c| (c - &q).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_dyadic() {
        let ctx = PrecisionContext::bits(128);
        let r = rational_recognize(&Real::from_f64(0.75, 128), &BigInt::from(100), &ctx).unwrap();
        assert_eq!(r, Some(BigRational::new(3.into(), 4.into())));
    }

    #[test]
    fn negative_values() {
        let ctx = PrecisionContext::bits(128);
        let x = Real::from_i64(-7, 128) / 3;
        let r = rational_recognize(&x, &BigInt::from(100), &ctx).unwrap();
        assert_eq!(r, Some(BigRational::new((-7).into(), 3.into())));
    }

    #[test]
    fn convergents_of_golden_ratio_are_fibonacci() {
        let phi = BigRational::new(BigInt::from(832040 + 514229), BigInt::from(832040));
        let c = convergents(&phi, &BigInt::from(100));
        let dens: Vec<i64> = c.iter().map(|q| q.denom().try_into().unwrap()).collect();
        assert_eq!(dens, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
    }

    #[test]
    fn oversized_input_rejected() {
        let ctx = PrecisionContext::bits(64);
        let x = Real::pow2(40, 64);
        assert!(rational_recognize(&x, &BigInt::from(10), &ctx).is_err());
    }
}
