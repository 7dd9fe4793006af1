//! Irreducibility over Q at desk scale.
//!
//! Factor degrees modulo several good primes restrict the degrees a
//! rational factor could have. The surviving degrees are then settled by
//! trying every conjugation-closed subset of the complex roots of that
//! size: a rational factor of a monic integer polynomial is monic integral,
//! so rounding the numeric product and dividing exactly decides it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::QPoly;
use super::roots::{isolate_roots, RootKind};
use crate::error::{BlochError, Result};
use crate::numeric::Complex;

const PRIMES: [u64; 25] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101];
const SUBSET_LIMIT: u64 = 2_000_000;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &Fp, f: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let df = f.len() - 1;
    let inv = mod_inv(f[df], p);
    while r.len() > df {
        let lead = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - df;
        for (j, c) in f.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - lead * c % p) % p;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(c)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let inv = mod_inv(l, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn fp_div(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = mod_inv(b[db], p);
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let lead = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - db;
        q[shift] = lead;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - lead * c % p) % p;
        }
        r = trim(r);
    }
    trim(q)
}

fn fp_powmod(base: &Fp, mut e: u64, f: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = fp_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), f, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Degrees of the irreducible factors of a squarefree `f` modulo p.
fn factor_degrees_mod_p(f: &Fp, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while f.len() > 1 && 2 * i <= f.len() - 1 {
        h = fp_powmod(&h, p, &f, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = fp_gcd(&trim(hx), &f, p);
        let dg = g.len() - 1;
        if dg > 0 {
            out.extend(std::iter::repeat(i).take(dg / i));
            f = fp_div(&f, &g, p);
            h = fp_rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

fn to_fp(g: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(g.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced mod p")).collect())
}

/// Verifies that the monic polynomial `f` is irreducible over Q.
pub fn check_irreducible(f: &QPoly) -> Result<()> {
    let n = f.degree();
    if n <= 1 {
        return Ok(());
    }
    let (_, g) = f.integral_monic();
    if !g.is_squarefree() {
        return Err(BlochError::ReduciblePolynomial(format!("{f} has a repeated factor")));
    }
    let gi: Vec<BigInt> = g.coeffs().iter().map(|c| c.to_integer()).collect();
    let disc = g.discriminant().to_integer();
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for &p in &PRIMES {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let sums = subset_sums(&factor_degrees_mod_p(&to_fp(&gi, p), p), n);
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
        used += 1;
        if used >= 10 {
            break;
        }
    }
    let candidates: Vec<usize> = (1..=n / 2).filter(|&k| allowed[k]).collect();
    if candidates.is_empty() {
        return Ok(());
    }
    if let Some(h) = find_factor(&g, &candidates)? {
        return Err(BlochError::ReduciblePolynomial(format!("{f} has a factor of degree {}", h.degree())));
    }
    Ok(())
}

fn find_factor(g: &QPoly, degrees: &[usize]) -> Result<Option<QPoly>> {
    let n = g.degree();
    // coefficients of a factor are bounded by 2^n * max|root|^n
    let root_bits = g
        .coeffs()
        .iter()
        .map(|c| c.numer().bits())
        .max()
        .unwrap_or(1) as usize
        + 2;
    let prec = 128 + 2 * n * root_bits;
    let t = isolate_roots(g, prec)?;
    let reals: Vec<usize> = (0..t.len()).filter(|&i| t.kinds[i] == RootKind::Real).collect();
    let uppers: Vec<usize> = (0..t.len()).filter(|&i| matches!(t.kinds[i], RootKind::Upper { .. })).collect();
    let mut tried = 0u64;
    for &k in degrees {
        for pairs in 0..=k / 2 {
            let nreal = k - 2 * pairs;
            if nreal > reals.len() || pairs > uppers.len() {
                continue;
            }
            let mut found = None;
            for_each_combination(reals.len(), nreal, &mut |rs| {
                for_each_combination(uppers.len(), pairs, &mut |ps| {
                    tried += 1;
                    if found.is_some() || tried > SUBSET_LIMIT {
                        return;
                    }
                    let mut prod = vec![Complex::one(prec)];
                    let mut push = |z: &Complex| {
                        let mut next = vec![Complex::zero(prec); prod.len() + 1];
                        for (i, c) in prod.iter().enumerate() {
                            next[i + 1] = &next[i + 1] + c;
                            next[i] = &next[i] - &(c * z);
                        }
                        prod = next;
                    };
                    for &i in rs {
                        push(t.root(reals[i]));
                    }
                    for &i in ps {
                        let u = t.root(uppers[i]);
                        push(u);
                        push(&u.conj());
                    }
                    let coeffs: Vec<BigInt> = prod.iter().map(|c| c.re.round_bigint()).collect();
                    let h = QPoly::from_bigints(&coeffs);
                    if h.degree() == k && g.div_exact(&h).is_some() {
                        found = Some(h);
                    }
                });
            });
            if tried > SUBSET_LIMIT {
                return Err(BlochError::UnsupportedDegree(n, super::field::MAX_DEGREE));
            }
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
