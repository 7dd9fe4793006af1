mod common;

use blochlab::blochgrp::{eigenspace_split, five_term, mu, FormalSum, MuVerdict};
use blochlab::numberfield::{EmbeddedField, FieldElement, NumberField};
use blochlab::numeric::PrecisionContext;
use blochlab::regulator::*;
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::bits(256)
}

fn ef(p: &str, i: usize) -> EmbeddedField {
    EmbeddedField::new(NumberField::parse(p).unwrap(), i).unwrap()
}

/// The embedding of `p` whose generator has positive imaginary part, or
/// root `i` when given.
fn upper(p: &str) -> EmbeddedField {
    let e = ef(p, 0);
    let r = embedding_representatives(&e, &ctx()).unwrap()[0];
    ef(p, r)
}

fn q(n: i64) -> BigRational {
    rat(n, 1)
}

fn sum(e: &EmbeddedField, terms: Vec<(FieldElement, i64)>) -> FormalSum {
    FormalSum::from_terms(e, terms.into_iter().map(|(z, c)| (z, q(c)))).unwrap()
}

fn fig8() -> FormalSum {
    let e = upper("x^2 - x + 1");
    sum(&e, vec![(e.field().gen(), 2)])
}

fn frac(a: &BigRational) -> String {
    a.to_string()
}

#[test]
fn figure_eight_oracle_sanity() {
    let v = fig8_volume_oracle();
    let f = num_traits::ToPrimitive::to_f64(&v).unwrap();
    assert!((f - 2.029883212819307).abs() < 1e-14, "{f}");
}

#[test]
fn representatives_are_upper_half_plane_roots() {
    let c = ctx();
    assert_eq!(embedding_representatives(&ef("x^2 + 1", 0), &c).unwrap(), vec![1]);
    assert_eq!(embedding_representatives(&ef("x^4 - 2", 0), &c).unwrap(), vec![3]);
    assert_eq!(embedding_representatives(&ef("x^3 - x^2 + 1", 0), &c).unwrap(), vec![2]);
    assert_eq!(embedding_representatives(&ef("x^2 - 2", 0), &c).unwrap_err().code(), "TOTALLY_REAL");
    let e = ef("x^6 + 108", 0);
    let t = e.field().roots(&c).unwrap();
    let reps = embedding_representatives(&e, &c).unwrap();
    assert_eq!(reps.len(), 3);
    for r in reps {
        assert!(t.root(r).im.to_f64() > 0.0);
    }
}

#[test]
fn borel_matrix_of_figure_eight_matches_clausen_oracle() {
    let b = fig8();
    let c = ctx();
    let m = borel_matrix(std::slice::from_ref(&b), b.parent(), &c).unwrap();
    assert_eq!(m.values.len(), 1);
    assert_eq!(m.values[0].len(), 1);
    let got = m.values[0][0].to_rational();
    assert!(agreeing_digits(&got, &fig8_volume_oracle()) >= 60);
    assert_eq!(m.qrank(&c).rank, 1);
    assert!(m.torsion_candidates().is_empty());
    let s = m.summary();
    assert_eq!(s.reps, m.reps);
}

#[test]
fn real_symbols_are_torsion_candidates() {
    let e = upper("x^2 + 1");
    let c = ctx();
    let two = FieldElement::from_rational(e.field(), q(2));
    let b = sum(&e, vec![(two, 1)]);
    let m = borel_matrix(&[b], &e, &c).unwrap();
    assert_eq!(m.torsion_candidates(), vec![0]);
    assert_eq!(m.qrank(&c).rank, 0);
    let empty = borel_matrix(&[], &e, &c).unwrap();
    assert_eq!(empty.qrank(&c).rank, 0);
}

#[test]
fn predicted_ranks_examples() {
    let c = ctx();
    let check = |p: &str, i: usize, minus: i64, plus: i64, basis: PredictionBasis| {
        let r = predicted_ranks(&ef(p, i), &c).unwrap();
        assert_eq!(frac(&r.predicted_minus), minus.to_string(), "{p} root {i}");
        assert_eq!(frac(&r.predicted_plus), plus.to_string(), "{p} root {i}");
        assert_eq!(r.prediction, basis, "{p} root {i}");
        r
    };
    let z5 = check("x^4 + x^3 + x^2 + x + 1", 0, 2, 0, PredictionBasis::TheoremB);
    assert_eq!((z5.r2, z5.r2_prime), (2, Some(2)));
    let q4 = check("x^4 - 2", 3, 1, 0, PredictionBasis::TheoremB);
    assert_eq!((q4.r2, q4.r2_prime), (1, Some(1)));
    let g = check("x^6 + 108", 0, 2, 1, PredictionBasis::TheoremB);
    assert_eq!((g.r2, g.r2_prime), (3, Some(1)));
    check("x^3 - x^2 + 1", 2, 0, 0, PredictionBasis::NonStableReduction);
    check("x^4 - 2", 0, 0, 1, PredictionBasis::RealEmbedding);
    check("x^3 - x^2 + 1", 0, 0, 1, PredictionBasis::RealEmbedding);
    assert_eq!(predicted_ranks(&ef("x^2 - 2", 0), &c).unwrap_err().code(), "TOTALLY_REAL");
}

#[test]
fn theorem_b_for_cyclotomic_symbols() {
    let e = upper("x^4 + x^3 + x^2 + x + 1");
    let c = ctx();
    let z = e.field().gen();
    let sample: Vec<FormalSum> = (1..=4).map(|k| sum(&e, vec![(z.pow(k).unwrap(), 1)])).collect();
    let r = verify_theorem_b(&e, &sample, &c).unwrap();
    assert_eq!((r.observed_minus, r.observed_plus), (Some(2), Some(0)));
    assert!(r.consistent);
    let zb = r.zero_block.unwrap();
    assert!(zb.passes);
    assert_eq!(zb.commuting_columns.len(), 2);
    assert!(zb.pair_columns.is_empty());
    assert!(zb.plus_block_max < 1e-60);
}

#[test]
fn theorem_b_for_figure_eight_and_empty_sample() {
    let b = fig8();
    let e = b.parent().clone();
    let c = ctx();
    let r = verify_theorem_b(&e, &[b], &c).unwrap();
    assert_eq!((r.observed_minus, r.observed_plus), (Some(1), Some(0)));
    let r = verify_theorem_b(&e, &[], &c).unwrap();
    assert_eq!((r.observed_minus, r.observed_plus), (Some(0), Some(0)));
    assert!(r.consistent);
}

#[test]
fn theorem_b_rejects_bad_samples() {
    let c = ctx();
    let e = upper("x^2 - x + 1");
    let three = FieldElement::from_rational(e.field(), q(3));
    let err = verify_theorem_b(&e, &[sum(&e, vec![(three, 1)])], &c).unwrap_err();
    assert_eq!(err.code(), "MU_NONZERO");
    let cubic = ef("x^3 - x^2 + 1", 2);
    let a = cubic.field().gen();
    let err = verify_theorem_b(&cubic, &[sum(&cubic, vec![(a, 1)])], &c).unwrap_err();
    assert_eq!(err.code(), "NOT_STABLE");
    let other = upper("x^2 + 1");
    let half = FieldElement::from_rational(other.field(), rat(1, 2));
    let err = verify_theorem_b(&e, &[sum(&other, vec![(half, 1)])], &c).unwrap_err();
    assert_eq!(err.code(), "INVALID_INPUT");
}

#[test]
fn default_samples_reach_the_prediction() {
    let c = PrecisionContext::bits(128);
    for (p, i, minus) in [("x^4 + x^3 + x^2 + x + 1", 0, 2), ("x^4 - 2", 3, 1), ("x^2 - x + 1", 0, 1)] {
        let e = ef(p, i);
        let s = default_sample(&e, &c).unwrap();
        let r = verify_theorem_b(&e, &s, &c).unwrap();
        assert_eq!((r.observed_minus, r.observed_plus), (Some(minus), Some(0)), "{p}");
        assert!(r.consistent, "{p}");
    }
    let e = ef("x^4 - 2", 0);
    let s = default_sample(&e, &c).unwrap();
    let r = verify_theorem_b(&e, &s, &c).unwrap();
    assert_eq!((r.observed_minus, r.observed_plus), (Some(0), Some(1)));
    assert!(r.zero_block.is_none());
}

#[test]
fn galois_closure_of_cube_root_of_two() {
    let c = PrecisionContext::bits(128);
    let e = ef("x^6 + 108", 0);
    let s = default_sample(&e, &c).unwrap();
    let r = verify_theorem_b(&e, &s, &c).unwrap();
    assert!(r.observed_minus.unwrap() >= 1);
    assert!(r.consistent);
    assert!(r.zero_block.unwrap().passes);
}

/// Automorphisms gamma -> zeta^k gamma of Q(gamma), gamma^6 = -108, with
/// zeta = 1/2 - gamma^3/12 a primitive sixth root of unity.
fn automorphisms(e: &EmbeddedField) -> Vec<FieldElement> {
    let f = e.field();
    let g = f.gen();
    let zeta = f.element("1/2 - 1/12*x^3").unwrap();
    assert_eq!(zeta.pow(6).unwrap(), f.one());
    assert_ne!(zeta.pow(2).unwrap(), f.one());
    assert_ne!(zeta.pow(3).unwrap(), f.one());
    let ims: Vec<FieldElement> = (0..6).map(|k| &zeta.pow(k).unwrap() * &g).collect();
    for im in &ims {
        // exact check that the image is a root of x^6 + 108
        assert_eq!(&im.pow(6).unwrap() + &FieldElement::from_rational(f, q(108)), f.zero());
    }
    ims
}

fn average(b: &FormalSum, group: &[&FieldElement]) -> FormalSum {
    let mut acc = FormalSum::zero(b.parent());
    for g in group {
        acc = &acc + &b.map_symbols(|z| z.substitute(g)).unwrap();
    }
    acc
}

#[test]
fn fixed_field_averages_have_fixed_field_rank() {
    // Elements of B(E)^H have regulator rank at most r2(E^H). For the
    // rotation subgroup E^H = Q(sqrt -3); for a reflection E^H is a cubic
    // field with one complex place. Both have r2 = 1.
    let c = PrecisionContext::bits(128);
    let e = ef("x^6 + 108", 0);
    let ims = automorphisms(&e);
    let sample = default_sample(&e, &c).unwrap();
    let full = borel_matrix(&sample, &e, &c).unwrap().qrank(&c).rank;
    for group in [vec![&ims[0], &ims[2], &ims[4]], vec![&ims[0], &ims[1]]] {
        let avg: Vec<FormalSum> = sample.iter().map(|b| average(b, &group)).collect();
        for a in &avg {
            assert_eq!(mu(a, &c).unwrap().verdict, MuVerdict::ZeroExact);
        }
        let rank = borel_matrix(&avg, &e, &c).unwrap().qrank(&c).rank;
        assert!(rank <= 1, "rank {rank}");
        assert!(rank <= full);
    }
}

#[test]
fn figure_eight_volume_and_chern_simons() {
    let cls = rho_class(&fig8(), &ctx()).unwrap();
    let oracle = fig8_volume_oracle();
    assert!(agreeing_digits(&cls.volume.to_rational(), &oracle) >= 40);
    assert!(agreeing_digits(&cls.d2_sum.to_rational(), &oracle) >= 60);
    assert_eq!(cls.rationality, Rationality::Rational { value: q(0) });
    assert!(cls.cs_over_pi2.is_zero());
    // the representative for the canonical basis
    assert_eq!(cls.representative_rational.as_deref(), Some("1/6"));
    assert!(agreeing_digits(&cls.cs_representative.to_rational(), &rat(1, 6)) >= 40);
    assert_eq!(cls.identification, IDENTIFICATION);
    let j = serde_json::to_value(&cls).unwrap();
    assert_eq!(j["rationality"]["status"], "RATIONAL");
    assert_eq!(j["rationality"]["value"], "0");
    let v = j["volume"].as_str().unwrap();
    let (int, fr) = v.split_once('.').unwrap();
    let digits: BigInt = format!("{int}{fr}").parse().unwrap();
    let parsed = BigRational::new(digits, BigInt::from(10).pow(fr.len() as u32));
    assert!(agreeing_digits(&parsed, &oracle) >= 45, "{v}");
}

#[test]
fn five_term_relation_has_trivial_class() {
    let e = upper("x^2 - x + 1");
    let c = ctx();
    let f = e.field();
    for (x, y) in [("2", "3"), ("x", "2"), ("1 - x", "-1"), ("2*x", "x + 1")] {
        let b = five_term(&e, &f.element(x).unwrap(), &f.element(y).unwrap()).unwrap();
        let cls = rho_class(&b, &c).unwrap();
        assert!(cls.volume.abs().to_f64() < 1e-60, "{x}, {y}");
        assert_eq!(cls.rationality, Rationality::Rational { value: q(0) }, "{x}, {y}");
    }
}

#[test]
fn minus_part_of_a_cm_class_is_rational() {
    let e = upper("x^4 + x^3 + x^2 + x + 1");
    let c = ctx();
    let z = e.field().gen();
    let b = sum(&e, vec![(z.clone(), 3), (z.pow(2).unwrap(), -1)]);
    let (_, minus) = eigenspace_split(&b, &c).unwrap();
    let cls = rho_class(&minus, &c).unwrap();
    assert!(cls.rationality.is_rational());
    assert!(cls.volume.abs().to_f64() > 0.1);
}

#[test]
fn rho_class_requires_vanishing_mu() {
    let e = upper("x^2 - x + 1");
    let three = FieldElement::from_rational(e.field(), q(3));
    assert_eq!(rho_class(&sum(&e, vec![(three, 1)]), &ctx()).unwrap_err().code(), "MU_NONZERO");
}

#[test]
fn rationality_reports() {
    let c = ctx();
    let p = c.prec_bits;
    let h = BigInt::from(DEFAULT_MAX_DENOMINATOR);
    let quarter = blochlab::Real::from_rational(&rat(1, 4), p);
    assert_eq!(cs_rationality_report(&quarter, &h, &c).unwrap(), Rationality::Rational { value: rat(1, 4) });
    let zero = blochlab::Real::zero(p);
    assert_eq!(cs_rationality_report(&zero, &h, &c).unwrap(), Rationality::Rational { value: q(0) });
    let seven_thirds = blochlab::Real::from_rational(&rat(7, 3), p);
    assert_eq!(cs_rationality_report(&seven_thirds, &h, &c).unwrap().value(), Some(&rat(1, 3)));
    let pi = blochlab::Real::pi(p);
    let r = cs_rationality_report(&pi, &h, &c).unwrap();
    assert!(!r.is_rational());
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["status"], "NO_RELATION_FOUND");
}

fn zeta5_combo(coeffs: &[i64]) -> FormalSum {
    let e = upper("x^4 + x^3 + x^2 + x + 1");
    let z = e.field().gen();
    let terms = coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, &c)| (z.pow(k as i64 + 1).unwrap(), c)).collect();
    sum(&e, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cm_classes_are_rational_with_volume_equal_to_d2(coeffs in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let b = zeta5_combo(&coeffs);
        let c = PrecisionContext::bits(192);
        let cls = rho_class(&b, &c).unwrap();
        prop_assert!(cls.rationality.is_rational());
        prop_assert!(cls.volume_discrepancy.to_f64() < 1e-40);
        let d = d2_at(&b, &b.parent().root(&c).unwrap(), &c).unwrap();
        prop_assert!((&cls.volume - &d).abs().to_f64() < 1e-40);
    }

    #[test]
    fn plus_parts_vanish_at_commuting_columns(coeffs in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let b = zeta5_combo(&coeffs);
        let c = PrecisionContext::bits(192);
        let (plus, _) = eigenspace_split(&b, &c).unwrap();
        let m = borel_matrix(&[plus], b.parent(), &c).unwrap();
        prop_assert_eq!(m.torsion_candidates(), vec![0]);
    }

    #[test]
    fn observed_ranks_never_exceed_predictions(
        field in prop::sample::select(vec![("x^4 + x^3 + x^2 + x + 1", 0usize), ("x^4 - 2", 3), ("x^2 - x + 1", 0), ("x^4 - 2", 0)]),
        mask in prop::collection::vec(any::<bool>(), 24),
    ) {
        let c = PrecisionContext::bits(128);
        let e = ef(field.0, field.1);
        let s: Vec<FormalSum> = default_sample(&e, &c).unwrap().into_iter().zip(mask.iter().cycle()).filter(|(_, m)| **m).map(|(b, _)| b).collect();
        let r = verify_theorem_b(&e, &s, &c).unwrap();
        prop_assert!(BigRational::from_integer(r.observed_minus.unwrap().into()) <= r.predicted_minus);
        prop_assert!(BigRational::from_integer(r.observed_plus.unwrap().into()) <= r.predicted_plus);
        prop_assert!(r.consistent);
    }
}
