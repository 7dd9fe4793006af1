//! Acceptance run: one PASS/FAIL line per criterion, with the measured
//! runtime against its budget. Exits non-zero when any criterion fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use blochlab::blochgrp::{eigenspace_split, five_term, mu, FormalSum, MuVerdict, DEFAULT_HEIGHT};
use blochlab::manifold::{analyze, ManifoldRecord, Verdict};
use blochlab::milnor::{milnor_scan, plant_relation, relation_scan, scan_context};
use blochlab::numberfield::{EmbeddedField, FieldElement, NumberField};
use blochlab::numeric::{bloch_wigner_d2, li2, Complex, PrecisionContext, Real};
use blochlab::regulator::{
    borel_matrix, d2_tolerance, default_sample, embedding_representatives, rho_class, verify_theorem_b,
    DEFAULT_MAX_DENOMINATOR,
};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ef(p: &str, i: usize) -> EmbeddedField {
    EmbeddedField::new(NumberField::parse(p).unwrap(), i).unwrap()
}

fn upper(p: &str) -> EmbeddedField {
    let e = ef(p, 0);
    let r = embedding_representatives(&e, &PrecisionContext::bits(256)).unwrap()[0];
    ef(p, r)
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn d2(z: &Complex, c: &PrecisionContext) -> Real {
    bloch_wigner_d2(z, c).unwrap()
}

fn dilogarithm() -> Outcome {
    let c = PrecisionContext::bits(256);
    let g = catalan_oracle();
    let at_i = agreeing_digits(&d2(&Complex::i(256), &c).to_rational(), &g);
    check(at_i >= 60, format!("D2(i) agrees with Catalan to {at_i} digits"))?;
    let half = d2(&Complex::from_f64(0.5, 0.0, 256), &c);
    check(half.is_zero(), format!("D2(1/2) = {}", half.to_decimal(20)))?;
    let li = li2(&Complex::from_f64(0.5, 0.0, 256), &c).unwrap();
    let pi = pi_oracle();
    let l2 = ln2_oracle(400);
    let expect = &pi * &pi / rat(12, 1) - &l2 * &l2 / rat(2, 1);
    let lh = agreeing_digits(&li.re.to_rational(), &expect);
    check(lh >= 60, format!("li2(1/2) agrees with the closed form to {lh} digits"))?;
    Ok(format!("D2(i) {at_i} digits, D2(1/2) = 0, li2(1/2) {lh} digits"))
}

fn functional_equations() -> Outcome {
    let bits = 128usize;
    let c = PrecisionContext::bits(bits);
    let tol = Real::pow2(1 - bits as i64 + 8, bits);
    let one = Complex::one(bits);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let point = |rng: &mut ChaCha8Rng| Complex::from_f64(rng.gen_range(-3.0..3.0), rng.gen_range(0.01..3.0), bits);
    let mut worst = Real::zero(bits);
    for k in 0..10_000 {
        let z = point(&mut rng);
        let a = d2(&z, &c);
        let b = d2(&(&one - &z.recip()), &c);
        let d = d2(&(&one - &z).recip(), &c);
        let dev = (&a - &b).abs().max(&(&a - &d).abs());
        check(dev <= tol, format!("cross-ratio symmetry off by {:.3e} at point {k}", dev.to_f64()))?;
        worst = worst.max(&dev);

        let x = z;
        let y = point(&mut rng);
        let terms = [
            (x.clone(), 1i64),
            (y.clone(), -1),
            (&y / &x, 1),
            (&(&one - &x.recip()) / &(&one - &y.recip()), -1),
            (&(&one - &x) / &(&one - &y), 1),
        ];
        let mut s = Real::zero(bits);
        for (w, n) in &terms {
            s = &s + &(&d2(w, &c) * &Real::from_i64(*n, bits));
        }
        let dev = s.abs();
        check(dev <= tol, format!("five-term equation off by {:.3e} at point {k}", dev.to_f64()))?;
        worst = worst.max(&dev);
    }
    Ok(format!("10000 points, worst deviation {:.3e} <= {:.3e}", worst.to_f64(), tol.to_f64()))
}

fn random_element(e: &EmbeddedField, rng: &mut ChaCha8Rng) -> FieldElement {
    let n = e.field().degree();
    let coords = (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
    FieldElement::from_coords(e.field(), coords).unwrap()
}

fn mu_exactness() -> Outcome {
    let c = PrecisionContext::bits(256);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut done = 0;
    let mut skipped = 0;
    for (poly, want) in [("x^2 - x + 1", 50), ("x^4 + x^3 + x^2 + x + 1", 50)] {
        let e = upper(poly);
        let mut k = 0;
        while k < want {
            let (x, y) = (random_element(&e, &mut rng), random_element(&e, &mut rng));
            let Ok(b) = five_term(&e, &x, &y) else {
                skipped += 1;
                continue;
            };
            let r = mu(&b, &c).map_err(|err| format!("mu failed on ({x}, {y}): {err}"))?;
            check(r.verdict == MuVerdict::ZeroExact, format!("mu(five_term({x}, {y})) = {:?}", r.verdict))?;
            k += 1;
        }
        done += k;
    }
    Ok(format!("{done} five-term elements ZERO_EXACT ({skipped} degenerate draws redrawn)"))
}

fn theorem_b() -> Outcome {
    let c = PrecisionContext::bits(256);
    let mut out = Vec::new();
    for (poly, root, pred, obs_exact) in [
        ("x^4 + x^3 + x^2 + x + 1", None, (2, 0), true),
        ("x^4 - 2", Some(3), (1, 0), true),
        ("x^6 + 108", None, (2, 1), false),
    ] {
        let e = match root {
            Some(i) => ef(poly, i),
            None => upper(poly),
        };
        let s = default_sample(&e, &c).map_err(|err| format!("{poly}: {err}"))?;
        let r = verify_theorem_b(&e, &s, &c).map_err(|err| format!("{poly}: {err}"))?;
        let p = (r.predicted_minus.clone(), r.predicted_plus.clone());
        let want = (BigRational::from_integer(pred.0.into()), BigRational::from_integer(pred.1.into()));
        check(p == want, format!("{poly}: predicted ({}, {})", p.0, p.1))?;
        let (om, op) = (r.observed_minus.unwrap(), r.observed_plus.unwrap());
        if obs_exact {
            check((om, op) == (pred.0 as usize, pred.1 as usize), format!("{poly}: observed ({om}, {op})"))?;
        } else {
            check(om >= 1, format!("{poly}: observed_minus {om}"))?;
        }
        let zb = r.zero_block.as_ref().ok_or(format!("{poly}: no zero-block report"))?;
        check(zb.passes, format!("{poly}: zero block max {:.3e}, pair symmetry {:.3e}", zb.plus_block_max, zb.pair_symmetry_max))?;
        check(r.consistent, format!("{poly}: inconsistent"))?;
        out.push(format!("{poly} predicted ({}, {}) observed ({om}, {op})", p.0, p.1));
    }
    Ok(format!("{}; zero blocks pass; samples from the exact mu-kernel", out.join(", ")))
}

fn theorem_a() -> Outcome {
    let c = PrecisionContext::bits(256);
    let src = std::fs::read_to_string(data("fig8.json")).map_err(|e| e.to_string())?;
    let mut m = ManifoldRecord::from_json_str(&src, &BigInt::from(DEFAULT_HEIGHT), &c).map_err(|e| e.to_string())?;
    m.validate(&c).map_err(|e| e.to_string())?;
    let r = analyze(&m, &BigInt::from(DEFAULT_MAX_DENOMINATOR), &c).map_err(|e| e.to_string())?;
    let oracle = fig8_volume_oracle();
    let digits = agreeing_digits(&r.cs.volume.to_rational(), &oracle);
    check(digits >= 40, format!("volume agrees with the oracle to {digits} digits"))?;
    let bound = Real::pow2(-(c.prec_bits as i64) / 2, c.prec_bits);
    check(
        r.cs.volume_discrepancy <= bound,
        format!("sum D2 vs Im rho discrepancy {:.3e}", r.cs.volume_discrepancy.to_f64()),
    )?;
    let q = r.cs.rationality.value().ok_or("cs not recognised as rational")?;
    check(q.denom() <= &BigInt::from(24), format!("cs denominator {}", q.denom()))?;
    let rep: BigRational = r.cs.representative_rational.as_deref().ok_or("no representative")?.parse().unwrap();
    check(rep.denom() <= &BigInt::from(24), format!("representative denominator {}", rep.denom()))?;
    check(r.classification.label.label() == "cm_field", format!("classification {}", r.classification.label.label()))?;
    check(r.verdict == Verdict::RationalByTheoremA, format!("verdict {:?}", r.verdict))?;
    Ok(format!(
        "volume {} digits, discrepancy {:.1e}, cs RATIONAL mod Q (representative {rep}), cm_field",
        digits,
        r.cs.volume_discrepancy.to_f64()
    ))
}

fn verdicts() -> Outcome {
    let c = PrecisionContext::bits(256);
    let mut out = Vec::new();
    for (file, want, reason) in [
        ("cubic.json", Verdict::ConjecturedIrrational, Some("odd_degree")),
        ("galois-closure.json", Verdict::Unknown, None),
    ] {
        let src = std::fs::read_to_string(data(file)).map_err(|e| e.to_string())?;
        let mut m =
            ManifoldRecord::from_json_str(&src, &BigInt::from(DEFAULT_HEIGHT), &c).map_err(|e| format!("{file}: {e}"))?;
        m.validate(&c).map_err(|e| format!("{file}: {e}"))?;
        let r = analyze(&m, &BigInt::from(DEFAULT_MAX_DENOMINATOR), &c).map_err(|e| format!("{file}: {e}"))?;
        check(r.verdict == want, format!("{file}: verdict {:?}", r.verdict))?;
        if let Some(why) = reason {
            check(r.verdict_reason.contains(why), format!("{file}: reason {}", r.verdict_reason))?;
        }
        out.push(format!("{file} {:?}", r.verdict));
    }
    Ok(out.join(", "))
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn milnor() -> Outcome {
    let c = PrecisionContext::bits(256);
    let h = BigInt::from(1_000_000);
    let mut planted_ok = 0;
    for n in 3u64..=30 {
        let s = milnor_scan(n, &h, &c).map_err(|e| format!("N = {n}: {e}"))?;
        check(s.values.len() as u64 == phi(n) / 2, format!("N = {n}: {} values", s.values.len()))?;
        check(s.relations_found.is_empty(), format!("N = {n}: {} relations found", s.relations_found.len()))?;
        let vals: Vec<Real> = s.values.iter().map(|(_, v)| v.clone()).collect();
        let idx = vals.len() / 2;
        let planted = plant_relation(&vals, idx, 7);
        let sc = scan_context(planted.len(), &h, &c);
        let found = relation_scan(&planted, &h, &sc).map_err(|e| format!("N = {n}: {e}"))?;
        check(found.len() == 1, format!("N = {n}: {} relations after planting", found.len()))?;
        let mut coeffs = found[0].coefficients.clone();
        if coeffs[idx].is_negative() {
            coeffs.iter_mut().for_each(|x| *x = -x.clone());
        }
        let mut expect = vec![BigInt::zero(); planted.len()];
        expect[idx] = BigInt::from(7);
        expect[planted.len() - 1] = -BigInt::one();
        check(coeffs == expect, format!("N = {n}: planted relation recovered as {coeffs:?}"))?;
        planted_ok += 1;
    }
    Ok(format!("N = 3..30: phi(N)/2 values, no relations at height 10^6, {planted_ok} planted relations exact"))
}

fn eigenspace_kernel() -> Outcome {
    let c = PrecisionContext::bits(256);
    let e = upper("x^4 + x^3 + x^2 + x + 1");
    let basis = default_sample(&e, &c).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut worst_ratio = 0.0f64;
    for k in 0..50 {
        let mut beta = FormalSum::zero(&e);
        while beta.is_zero() {
            for b in &basis {
                beta = &beta + &b.scale(&rat(rng.gen_range(-3..=3), 1));
            }
        }
        check(mu(&beta, &c).unwrap().verdict == MuVerdict::ZeroExact, format!("combination {k}: mu nonzero"))?;
        let (plus, minus) = eigenspace_split(&beta, &c).map_err(|e| e.to_string())?;
        let m = borel_matrix(std::slice::from_ref(&plus), &e, &c).map_err(|e| e.to_string())?;
        let tol = d2_tolerance(&plus, &c);
        for v in &m.values[0] {
            check(v.abs() <= tol, format!("combination {k}: plus D2 {:.3e}", v.to_f64()))?;
            worst_ratio = worst_ratio.max(v.abs().to_f64() / tol.to_f64());
        }
        let cls = rho_class(&minus, &c).map_err(|e| format!("combination {k}: {e}"))?;
        let v = cls.rationality.value().ok_or(format!("combination {k}: minus cs not rational"))?;
        check(v.is_zero(), format!("combination {k}: minus cs class {v}"))?;
    }
    Ok(format!("50 combinations, plus D2 at most {worst_ratio:.1e} x tol, minus cs RATIONAL(0)"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("dilogarithm correctness", 1, dilogarithm),
        ("functional equations", 30, functional_equations),
        ("mu exactness", 60, mu_exactness),
        ("rank formulas", 300, theorem_b),
        ("figure-eight pipeline", 10, theorem_a),
        ("verdict logic", 60, verdicts),
        ("Milnor scans", 300, milnor),
        ("eigenspace kernel", 120, eigenspace_kernel),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let within = el <= Duration::from_secs(*budget);
        let (status, detail) = match (&r, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the time budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{}] {name}: {detail} ({:.2} s, budget {budget} s)", i + 1, el.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
