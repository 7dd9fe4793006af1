//! A number field with a chosen complex embedding, and the conjugation
//! taxonomy attached to it: stability, commuting pairs, CM tests, the real
//! subfield, the intersection with the conjugate field and the compositum.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::{FieldElement, NumberField};
use super::poly::QPoly;
use super::roots::{isolate_roots, RootDisk, RootKind, RootTable};
use crate::error::{BlochError, Result};
use crate::numeric::{Complex, PrecisionContext, Real};
use crate::relations::{find_integer_relation, relation_lattice, required_precision, QMatrix, RelationOutcome};

/// A number field with the embedding a -> roots[root_index].
#[derive(Clone)]
pub struct EmbeddedField {
    field: NumberField,
    root_index: usize,
    stability: Arc<OnceLock<Stability>>,
}

impl std::fmt::Debug for EmbeddedField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EmbeddedField({:?}, root {})", self.field, self.root_index)
    }
}

impl PartialEq for EmbeddedField {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.root_index == other.root_index
    }
}

/// Result of the stability test.
#[derive(Debug, Clone)]
pub struct Stability {
    pub stable: bool,
    /// The automorphism a -> g induced by complex conjugation.
    pub conj_auto: Option<FieldElement>,
    /// Height bound under which non-stability was certified.
    pub height_bound: BigInt,
    pub prec_bits: usize,
}

/// Root counts and pairing for a field, plus r2' when defined.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingTable {
    pub r1: usize,
    pub r2: usize,
    pub roots: Vec<EmbeddingEntry>,
    pub r2_prime: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingEntry {
    pub index: usize,
    pub re: String,
    pub im: String,
    pub kind: RootKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingClass {
    TotallyReal,
    CmField,
    CmEmbedding,
    StableNonCm,
    NonStable,
}

impl EmbeddingClass {
    pub fn label(&self) -> &'static str {
        match self {
            Self::TotallyReal => "totally_real",
            Self::CmField => "cm_field",
            Self::CmEmbedding => "cm_embedding",
            Self::StableNonCm => "stable_non_cm",
            Self::NonStable => "non_stable",
        }
    }
}

/// The Q-subspace of elements with real image.
#[derive(Debug, Clone)]
pub struct RealSubfield {
    pub degree: usize,
    pub totally_real: bool,
    pub basis: Vec<FieldElement>,
}

/// sigma(F) intersected with its complex conjugate.
#[derive(Debug, Clone)]
pub struct ConjugateIntersection {
    pub degree: usize,
    /// Whether the intersection lies in R under the embedding.
    pub is_real: bool,
    pub basis: Vec<FieldElement>,
}

fn decimal(r: &Real) -> String {
    r.to_decimal(20)
}

/// Table of roots and pairing for `field` (r2' left undefined).
pub fn embeddings(field: &NumberField, ctx: &PrecisionContext) -> Result<EmbeddingTable> {
    let t = field.roots(ctx)?;
    Ok(EmbeddingTable {
        r1: t.r1,
        r2: t.r2,
        roots: (0..t.len())
            .map(|i| EmbeddingEntry { index: i, re: decimal(&t.root(i).re), im: decimal(&t.root(i).im), kind: t.kinds[i] })
            .collect(),
        r2_prime: None,
    })
}

/// Index of the root of `p` at which `z` sits, certified by disk location.
fn locate_in(p: &QPoly, z: &Complex, prec: usize) -> Result<(Arc<RootTable>, usize)> {
    let t = Arc::new(isolate_roots(&p.monic(), prec)?);
    let i = t
        .nearest(z)
        .ok_or_else(|| BlochError::CertificationFailed(format!("value {z} is not near a root of {p}")))?;
    Ok((t, i))
}

/// Certifies that sigma(x) is real: it is a root of min_poly(x), so it is
/// real exactly when the root it isolates to is a real one.
fn certify_real(x: &FieldElement, value: &Complex, prec: usize) -> Result<bool> {
    if x.as_rational().is_some() {
        return Ok(true);
    }
    let (t, i) = locate_in(&x.min_poly(), value, prec)?;
    Ok(t.kinds[i] == RootKind::Real)
}

impl EmbeddedField {
    pub fn new(field: NumberField, root_index: usize) -> Result<Self> {
        if root_index >= field.degree() {
            return Err(BlochError::InvalidInput(format!(
                "root index {root_index} out of range for degree {}",
                field.degree()
            )));
        }
        Ok(EmbeddedField { field, root_index, stability: Arc::new(OnceLock::new()) })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// sigma(a) at `ctx.working()` bits.
    pub fn root(&self, ctx: &PrecisionContext) -> Result<Complex> {
        Ok(self.field.roots(ctx)?.root(self.root_index).clone())
    }

    pub fn root_region(&self, ctx: &PrecisionContext) -> Result<RootDisk> {
        Ok(self.field.roots(ctx)?.disks[self.root_index].clone())
    }

    pub fn is_real_embedding(&self, ctx: &PrecisionContext) -> Result<bool> {
        Ok(self.field.roots(ctx)?.kinds[self.root_index] == RootKind::Real)
    }

    /// sigma(x).
    pub fn embed(&self, x: &FieldElement, ctx: &PrecisionContext) -> Result<Complex> {
        Ok(x.embed(&self.root(ctx)?))
    }

    /// tau_i(x) for every root i.
    pub fn embed_all(&self, x: &FieldElement, ctx: &PrecisionContext) -> Result<Vec<Complex>> {
        let t = self.field.roots(ctx)?;
        Ok((0..t.len()).map(|i| x.embed(t.root(i))).collect())
    }

    pub fn embedding_table(&self, ctx: &PrecisionContext) -> Result<EmbeddingTable> {
        let mut t = embeddings(&self.field, ctx)?;
        if !self.is_real_embedding(ctx)? && self.is_conjugation_stable(ctx)?.stable {
            t.r2_prime = Some(self.commuting_pairs(ctx)?);
        }
        Ok(t)
    }

    /// Height bound for the relation disc * conj(b) = sum c_i b^i with
    /// b = D a integral: |c_i| <= |disc| |V^-1|_inf max|b_j|, with
    /// Gautschi's bound on the inverse Vandermonde norm.
    fn stability_height_bound(&self, ctx: &PrecisionContext) -> Result<(BigInt, BigInt, QPoly)> {
        let (d, g) = self.field.min_poly().integral_monic();
        let disc = g.discriminant().to_integer().abs();
        let t = self.field.roots(ctx)?;
        let df = d.to_f64().unwrap_or(f64::MAX);
        let roots: Vec<(f64, f64)> = (0..t.len())
            .map(|i| {
                let (x, y) = t.root(i).to_f64_pair();
                (x * df, y * df)
            })
            .collect();
        let modulus = |z: (f64, f64)| z.0.hypot(z.1);
        let rmax = roots.iter().map(|&z| modulus(z)).fold(0.0, f64::max);
        let mut log_g = 0.0f64;
        for (j, &zj) in roots.iter().enumerate() {
            let mut s = 0.0;
            for (k, &zk) in roots.iter().enumerate() {
                if j != k {
                    s += (1.0 + modulus(zk)).ln() - modulus((zj.0 - zk.0, zj.1 - zk.1)).ln();
                }
            }
            log_g = log_g.max(s);
        }
        let log_factor = (log_g + rmax.max(1e-300).ln()).max(0.0) + 0.01f64.ln_1p();
        let factor = BigInt::from(2).pow((log_factor / std::f64::consts::LN_2).ceil() as u32 + 1);
        Ok((disc * factor + 1, d, g))
    }

    /// Decides whether complex conjugation maps sigma(F) to itself and, if
    /// so, returns the automorphism as an exact element g with
    /// sigma(g) = conj(sigma(a)).
    pub fn is_conjugation_stable(&self, ctx: &PrecisionContext) -> Result<Stability> {
        if let Some(s) = self.stability.get() {
            return Ok(s.clone());
        }
        let s = self.compute_stability(ctx)?;
        let _ = self.stability.set(s.clone());
        Ok(s)
    }

    fn compute_stability(&self, ctx: &PrecisionContext) -> Result<Stability> {
        let n = self.degree();
        let a = self.field.gen();
        if self.is_real_embedding(ctx)? {
            return Ok(Stability { stable: true, conj_auto: Some(a), height_bound: BigInt::one(), prec_bits: ctx.prec_bits });
        }
        let (h, d, _) = self.stability_height_bound(ctx)?;
        let need = required_precision(n + 1, &h) + 64;
        let mut c = ctx.at_least(need);
        let dq = BigRational::from_integer(d.clone());
        for _ in 0..=ctx.retry_doublings {
            let alpha = self.root(&c)?;
            let p = alpha.prec();
            let beta = alpha.scale(&Real::from_bigint(&d, p));
            let mut xs = vec![beta.conj(), Complex::one(p)];
            for _ in 1..n {
                let last = xs.last().expect("nonempty").clone();
                xs.push(&last * &beta);
            }
            let out = match find_integer_relation(&xs, &h, &c) {
                Ok(o) => o,
                Err(BlochError::InsufficientPrecision(_)) => {
                    c = c.doubled();
                    continue;
                }
                Err(e) => return Err(e),
            };
            let rel = match out {
                RelationOutcome::NoneFound { height_bound, prec_bits } => {
                    return Ok(Stability { stable: false, conj_auto: None, height_bound, prec_bits });
                }
                RelationOutcome::Found(r) => r,
            };
            let m = &rel.coefficients;
            if !m[0].is_zero() {
                // conj(a) = conj(b) / D = -sum m_{i+1} D^(i-1) a^i / m_0
                let m0 = BigRational::from_integer(m[0].clone());
                let mut coords = Vec::with_capacity(n);
                let mut dpow = dq.recip();
                for mi in &m[1..] {
                    coords.push(-BigRational::from_integer(mi.clone()) * &dpow / &m0);
                    dpow *= &dq;
                }
                let g = FieldElement::from_coords(&self.field, coords)?;
                if self.verify_involution(&g) {
                    return Ok(Stability { stable: true, conj_auto: Some(g), height_bound: h, prec_bits: c.prec_bits });
                }
            }
            c = c.doubled();
        }
        Err(BlochError::CertificationFailed("conjugation automorphism failed exact verification".into()))
    }

    fn verify_involution(&self, g: &FieldElement) -> bool {
        let a = self.field.gen();
        if *g == a {
            return false;
        }
        let val = self.field.min_poly().coeffs().iter().rev().fold(self.field.zero(), |acc, c| {
            &(&acc * g) + &FieldElement::from_rational(&self.field, c.clone())
        });
        val.is_zero() && g.substitute(g) == a
    }

    /// The conjugation automorphism, or NOT_STABLE.
    pub fn conjugation(&self, ctx: &PrecisionContext) -> Result<FieldElement> {
        self.is_conjugation_stable(ctx)?.conj_auto.ok_or(BlochError::NotStable)
    }

    /// For each root index i with positive imaginary part, the index j of
    /// the root g(root_i), where g is the conjugation automorphism. The
    /// pair through i commutes with conjugation exactly when j is the
    /// conjugate of i.
    pub fn conjugation_images(&self, ctx: &PrecisionContext) -> Result<Vec<(usize, usize)>> {
        let g = self.conjugation(ctx)?;
        let t = self.field.roots(ctx)?;
        let mut out = Vec::new();
        for i in 0..t.len() {
            if !matches!(t.kinds[i], RootKind::Upper { .. }) {
                continue;
            }
            let img = g.embed(t.root(i));
            let j = t
                .nearest(&img)
                .ok_or_else(|| BlochError::CertificationFailed("image of a root is not near a root".into()))?;
            out.push((i, j));
        }
        Ok(out)
    }

    /// Number of conjugate pairs (tau, conj tau) with tau(g) = conj(tau(a)).
    pub fn commuting_pairs(&self, ctx: &PrecisionContext) -> Result<usize> {
        if self.is_real_embedding(ctx)? {
            return Err(BlochError::InvalidInput("commuting pairs are defined for non-real embeddings".into()));
        }
        let t = self.field.roots(ctx)?;
        let count = self.conjugation_images(ctx)?.iter().filter(|&&(i, j)| j == t.conjugate_index(i)).count();
        if (t.r2 - count) % 2 != 0 {
            return Err(BlochError::Internal(format!("r2 - r2' = {} - {count} is odd", t.r2)));
        }
        Ok(count)
    }

    /// Strongest applicable label of the taxonomy.
    pub fn classify(&self, ctx: &PrecisionContext) -> Result<EmbeddingClass> {
        let t = self.field.roots(ctx)?;
        if t.r2 == 0 {
            return Ok(EmbeddingClass::TotallyReal);
        }
        if !self.is_conjugation_stable(ctx)?.stable {
            return Ok(EmbeddingClass::NonStable);
        }
        if self.is_real_embedding(ctx)? {
            return Ok(EmbeddingClass::StableNonCm);
        }
        let rs = self.real_subfield(ctx)?;
        if !(rs.totally_real && 2 * rs.degree == self.degree()) {
            return Ok(EmbeddingClass::StableNonCm);
        }
        if t.r1 == 0 && self.commuting_pairs(ctx)? == t.r2 {
            Ok(EmbeddingClass::CmField)
        } else {
            Ok(EmbeddingClass::CmEmbedding)
        }
    }

    /// F intersected with R under the embedding.
    pub fn real_subfield(&self, ctx: &PrecisionContext) -> Result<RealSubfield> {
        let n = self.degree();
        let powers: Vec<FieldElement> = (0..n).map(|i| self.field.gen().pow(i as i64)).collect::<Result<_>>()?;
        let basis = if self.is_real_embedding(ctx)? {
            powers
        } else if let Some(g) = self.is_conjugation_stable(ctx)?.conj_auto {
            // fixed space of x -> x(g), exact
            let mut m = QMatrix::zeros(n, n);
            let mut gp = self.field.one();
            for j in 0..n {
                for i in 0..n {
                    let v = gp.coords()[i].clone() - if i == j { BigRational::one() } else { BigRational::zero() };
                    m.set(i, j, v);
                }
                gp = &gp * &g;
            }
            m.kernel().into_iter().map(|v| FieldElement::from_coords(&self.field, v)).collect::<Result<_>>()?
        } else {
            self.numeric_real_subspace(ctx)?
        };
        let degree = basis.len();
        let totally_real = subfield_is_totally_real(&basis)?;
        Ok(RealSubfield { degree, totally_real, basis })
    }

    fn numeric_real_subspace(&self, ctx: &PrecisionContext) -> Result<Vec<FieldElement>> {
        let n = self.degree();
        let mut c = *ctx;
        for _ in 0..=ctx.retry_doublings {
            let alpha = self.root(&c)?;
            let p = alpha.prec();
            let mut pw = Complex::one(p);
            let mut vals = Vec::with_capacity(n);
            for _ in 0..n {
                vals.push(vec![pw.im.clone()]);
                pw = &pw * &alpha;
            }
            let lat = relation_lattice(&vals, &c)?;
            let mut basis = Vec::new();
            let mut ok = true;
            for m in &lat.relations {
                let coords = m.iter().map(|v| BigRational::from_integer(v.clone())).collect();
                let x = FieldElement::from_coords(&self.field, coords)?;
                if !certify_real(&x, &self.embed(&x, &c)?, p)? {
                    ok = false;
                    break;
                }
                basis.push(x);
            }
            if ok && n % basis.len().max(1) == 0 && closed_under_products(&basis) {
                return Ok(basis);
            }
            c = c.doubled();
        }
        Err(BlochError::CertificationFailed("real subspace candidates failed exact verification".into()))
    }

    /// sigma(F) intersected with conj(sigma(F)).
    pub fn conjugate_intersection(&self, ctx: &PrecisionContext) -> Result<ConjugateIntersection> {
        let n = self.degree();
        let real = self.is_real_embedding(ctx)?;
        if self.is_conjugation_stable(ctx)?.stable {
            let basis = (0..n).map(|i| self.field.gen().pow(i as i64)).collect::<Result<_>>()?;
            return Ok(ConjugateIntersection { degree: n, is_real: real, basis });
        }
        let mut c = *ctx;
        for _ in 0..=ctx.retry_doublings {
            let alpha = self.root(&c)?;
            let p = alpha.prec();
            let abar = alpha.conj();
            let mut vals = Vec::with_capacity(2 * n);
            let (mut x, mut y) = (Complex::one(p), Complex::one(p));
            let mut pa = Vec::new();
            let mut pb = Vec::new();
            for _ in 0..n {
                pa.push(x.clone());
                pb.push(y.clone());
                x = &x * &alpha;
                y = &y * &abar;
            }
            for z in pa.iter().chain(&pb) {
                vals.push(vec![z.re.clone(), z.im.clone()]);
            }
            let lat = relation_lattice(&vals, &c)?;
            let mut basis = Vec::new();
            let mut ok = true;
            for m in &lat.relations {
                let xs: Vec<BigRational> = m[..n].iter().map(|v| BigRational::from_integer(v.clone())).collect();
                let ys: Vec<BigRational> = m[n..].iter().map(|v| -BigRational::from_integer(v.clone())).collect();
                let xe = FieldElement::from_coords(&self.field, xs)?;
                let ye = FieldElement::from_coords(&self.field, ys)?;
                if !self.certify_conjugate_equal(&xe, &ye, &c)? {
                    ok = false;
                    break;
                }
                basis.push(xe);
            }
            if ok && !basis.is_empty() && n % basis.len() == 0 && closed_under_products(&basis) {
                let mut is_real = true;
                for b in &basis {
                    is_real &= certify_real(b, &self.embed(b, &c)?, p)?;
                }
                return Ok(ConjugateIntersection { degree: basis.len(), is_real, basis });
            }
            c = c.doubled();
        }
        Err(BlochError::CertificationFailed("conjugate intersection failed exact verification".into()))
    }

    /// A generator of the roots of unity of F together with its order: the
    /// largest m with e^(2 pi i/m) in sigma(F), each candidate verified
    /// exactly. Relations are searched up to height 2^32.
    pub fn torsion_generator(&self, ctx: &PrecisionContext) -> Result<(FieldElement, u64)> {
        let n = self.degree();
        let mut ms: Vec<u64> = (3..=(2 * n * n + 2) as u64)
            .filter(|&m| m % 2 == 0 && (n as u64) % super::field::euler_phi(m) == 0)
            .collect();
        ms.sort_unstable_by(|a, b| b.cmp(a));
        if ms.is_empty() || self.is_real_embedding(ctx)? {
            return Ok((self.field.from_i64(-1), 2));
        }
        let h = BigInt::one() << 32;
        let c = ctx.at_least(required_precision(n + 1, &h) + 64);
        let alpha = self.root(&c)?;
        let p = alpha.prec();
        for m in ms {
            let theta = &Real::pi(p).mul_pow2(1) / &Real::from_i64(m as i64, p);
            let mut xs = vec![Complex::cis(&theta), Complex::one(p)];
            for _ in 1..n {
                let last = xs.last().expect("nonempty").clone();
                xs.push(&last * &alpha);
            }
            let RelationOutcome::Found(rel) = find_integer_relation(&xs, &h, &c)? else {
                continue;
            };
            if rel.coefficients[0].is_zero() {
                continue;
            }
            let m0 = BigRational::from_integer(rel.coefficients[0].clone());
            let coords = rel.coefficients[1..].iter().map(|v| -BigRational::from_integer(v.clone()) / &m0).collect();
            let z = FieldElement::from_coords(&self.field, coords)?;
            if z.root_of_unity_order() == Some(m) {
                return Ok((z, m));
            }
        }
        Ok((self.field.from_i64(-1), 2))
    }

    /// The subfield spanned by `basis` as an embedded field in its own right,
    /// with the primitive element sum k^i b_i it is generated by.
    pub fn subfield(&self, basis: &[FieldElement], ctx: &PrecisionContext) -> Result<(EmbeddedField, FieldElement)> {
        let d = basis.len();
        for k in 1..=(d * d + 1) as i64 {
            let mut gamma = self.field.zero();
            let mut w = BigRational::one();
            for b in basis {
                gamma = &gamma + &(b * &FieldElement::from_rational(&self.field, w.clone()));
                w *= BigRational::from_integer(BigInt::from(k));
            }
            let m = gamma.min_poly();
            if m.degree() != d {
                continue;
            }
            let field = NumberField::new(m, "b")?;
            let v = self.embed(&gamma, ctx)?;
            let (_, i) = locate_in(field.min_poly(), &v, v.prec())?;
            return Ok((EmbeddedField::new(field, i)?, gamma));
        }
        Err(BlochError::Internal(format!("no primitive element for a subfield of degree {d}")))
    }

    /// sigma(x) == conj(sigma(y)), decided exactly: both are roots of the
    /// same minimal polynomial and isolate to the same root.
    fn certify_conjugate_equal(&self, x: &FieldElement, y: &FieldElement, ctx: &PrecisionContext) -> Result<bool> {
        match (x.as_rational(), y.as_rational()) {
            (Some(a), Some(b)) => return Ok(a == b),
            (Some(_), None) | (None, Some(_)) => return Ok(false),
            _ => {}
        }
        let p = x.min_poly();
        if p != y.min_poly() {
            return Ok(false);
        }
        let sx = self.embed(x, ctx)?;
        let sy = self.embed(y, ctx)?.conj();
        let prec = sx.prec();
        let (_, i) = locate_in(&p, &sx, prec)?;
        let (_, j) = locate_in(&p, &sy, prec)?;
        Ok(i == j)
    }

    /// An embedded field containing sigma(F) and its conjugate, generated by
    /// gamma = a + t conj(a) for the smallest t that makes gamma primitive.
    pub fn compositum_with_conjugate(&self, ctx: &PrecisionContext) -> Result<EmbeddedField> {
        if self.is_conjugation_stable(ctx)?.stable {
            return Ok(self.clone());
        }
        let n = self.degree();
        let f = self.field.min_poly();
        for t in 1..=(n * n) as i64 {
            let r = conjugate_sum_resultant(f, t);
            if !r.is_squarefree() {
                continue;
            }
            let idx_conj = self.field.roots(ctx)?.conjugate_index(self.root_index);
            return self.compositum_for(t, &r, idx_conj, ctx);
        }
        Err(BlochError::Internal("no primitive element a + t conj(a) with t <= n^2".into()))
    }

    fn compositum_for(&self, t: i64, r: &QPoly, idx_conj: usize, ctx: &PrecisionContext) -> Result<EmbeddedField> {
        let n = self.degree();
        // factor coefficients are bounded by 2^deg |R|_2
        let (_, ri) = r.integral_monic();
        let norm2: BigInt = ri.coeffs().iter().map(|c| c.to_integer().pow(2)).sum::<BigInt>();
        let norm = norm2.sqrt() + 1;
        for k in 2..n {
            let deg = n * k;
            let h = (BigInt::one() << deg) * &norm;
            let c = ctx.at_least(required_precision(deg + 1, &h) + 64);
            let roots = self.field.roots(&c)?;
            let gamma = roots.root(self.root_index) + &roots.root(idx_conj).scale(&Real::from_i64(t, roots.prec));
            let p = gamma.prec();
            let mut xs = vec![Complex::one(p)];
            for _ in 0..deg {
                let last = xs.last().expect("nonempty").clone();
                xs.push(&last * &gamma);
            }
            let RelationOutcome::Found(rel) = find_integer_relation(&xs, &h, &c)? else {
                continue;
            };
            if rel.coefficients[deg].is_zero() {
                continue;
            }
            let q = QPoly::from_bigints(&rel.coefficients).monic();
            if q.degree() != deg || r.div_exact(&q).is_none() {
                continue;
            }
            let field = NumberField::new(q, "g")?;
            let (_, i) = locate_in(field.min_poly(), &gamma, p)?;
            return EmbeddedField::new(field, i);
        }
        Err(BlochError::CertificationFailed("minimal polynomial of the compositum generator not found".into()))
    }
}

/// Res_y(f(y), t^n f((x - y) / t)), whose roots are a_i + t a_j.
pub fn conjugate_sum_resultant(f: &QPoly, t: i64) -> QPoly {
    let n = f.degree();
    let tq = BigRational::from_integer(BigInt::from(t));
    let points: Vec<(BigRational, BigRational)> = (0..=(n * n) as i64)
        .map(|x0| {
            let xq = BigRational::from_integer(BigInt::from(x0));
            // g(y) = t^n f((x0 - y)/t) = sum c_k t^(n-k) (x0 - y)^k
            let lin = QPoly::new(vec![xq.clone(), -BigRational::one()]);
            let mut g = QPoly::zero();
            for (k, ck) in f.coeffs().iter().enumerate() {
                let s = ck * num_traits::pow(tq.clone(), n - k);
                g = g.add(&lin.pow(k as u32).scale(&s));
            }
            (xq, f.resultant(&g))
        })
        .collect();
    QPoly::interpolate(&points)
}

fn closed_under_products(basis: &[FieldElement]) -> bool {
    if basis.is_empty() {
        return false;
    }
    let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coords().to_vec()).collect();
    let r = basis.len();
    for i in 0..r {
        for j in i..r {
            let p = &basis[i] * &basis[j];
            let mut ext = rows.clone();
            ext.push(p.coords().to_vec());
            if QMatrix::from_rows(ext).map(|m| m.rank()).unwrap_or(0) != r {
                return false;
            }
        }
    }
    true
}

/// Decides total realness of the subfield spanned by `basis` through a
/// primitive element's minimal polynomial and an exact Sturm count.
fn subfield_is_totally_real(basis: &[FieldElement]) -> Result<bool> {
    let d = basis.len();
    if d <= 1 {
        return Ok(true);
    }
    for k in 1..=(4 * d * d) as i64 {
        let mut x = basis[0].field().zero();
        let mut w = BigRational::one();
        for b in basis {
            x = &x + &(&FieldElement::from_rational(b.field(), w.clone()) * b);
            w *= BigRational::from_integer(BigInt::from(k));
        }
        let p = x.min_poly();
        if p.degree() == d {
            return Ok(p.real_root_count() == d);
        }
    }
    Err(BlochError::Internal("no primitive element found for the subfield".into()))
}
