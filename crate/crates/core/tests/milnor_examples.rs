mod common;

use blochlab::blochgrp::eigenspace_split;
use blochlab::milnor::*;
use blochlab::numeric::{bloch_wigner_d2, Complex, PrecisionContext, Real};
use blochlab::regulator::borel_matrix;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::bits(256)
}

fn million() -> BigInt {
    BigInt::from(1_000_000)
}

#[test]
fn basis_sizes() {
    let c = PrecisionContext::bits(128);
    for (n, k) in [(5, 2), (4, 1), (6, 1), (12, 2), (7, 3), (30, 4)] {
        let (e, b) = cyclotomic_basis(n, &c).unwrap();
        assert_eq!(b.len(), k, "N = {n}");
        // the embedding sends the generator to e^(2 pi i/N)
        let got = e.root(&c).unwrap().to_f64_pair();
        let th = 2.0 * std::f64::consts::PI / n as f64;
        assert!((got.0 - th.cos()).abs() < 1e-12 && (got.1 - th.sin()).abs() < 1e-12, "N = {n}");
    }
    assert_eq!(cyclotomic_basis(2, &c).unwrap_err().code(), "INVALID_INPUT");
    assert_eq!(cyclotomic_exponents(12), vec![1, 5]);
}

#[test]
fn scan_n4_is_catalan() {
    let s = milnor_scan(4, &million(), &ctx()).unwrap();
    assert_eq!(s.values.len(), 1);
    assert_eq!(s.values[0].0, 1);
    assert!(agreeing_digits(&s.values[0].1.to_rational(), &catalan_oracle()) >= 60);
    assert!(s.consistent_with_conjecture);
    assert_eq!(s.regulator_rank, 1);
}

#[test]
fn scan_n6_is_half_the_figure_eight_volume() {
    let s = milnor_scan(6, &million(), &ctx()).unwrap();
    let half = fig8_volume_oracle() / rat(2, 1);
    assert!(agreeing_digits(&s.values[0].1.to_rational(), &half) >= 60);
}

#[test]
fn scan_n5_and_n12_are_consistent() {
    for n in [5, 12] {
        let s = milnor_scan(n, &million(), &ctx()).unwrap();
        assert_eq!(s.values.len(), 2);
        assert!(s.consistent_with_conjecture, "N = {n}");
        assert!(s.relations_found.is_empty());
        assert_eq!(s.regulator_rank, 2, "N = {n}");
        assert!(s.clausen_agreement.to_f64() < 1e-70);
        assert!(s.prec_bits >= 256);
        assert!(scan_summary(&s).contains("not a proof"));
    }
}

#[test]
fn cm_cyclotomic_plus_parts_vanish() {
    let c = ctx();
    let (e, b) = cyclotomic_basis(12, &c).unwrap();
    let plus: Vec<_> = b.iter().map(|x| eigenspace_split(x, &c).unwrap().0).collect();
    let m = borel_matrix(&plus, &e, &c).unwrap();
    assert_eq!(m.torsion_candidates(), vec![0, 1]);
    assert_eq!(m.qrank(&c).rank, 0);
}

#[test]
fn planted_relations_are_found_exactly() {
    let c = ctx();
    for n in [5u64, 7, 11] {
        let s = milnor_scan(n, &million(), &c).unwrap();
        let vals: Vec<Real> = s.values.iter().map(|(_, v)| v.clone()).collect();
        let planted = plant_relation(&vals, 1, 7);
        let sc = scan_context(planted.len(), &million(), &c);
        let found = relation_scan(&planted, &million(), &sc).unwrap();
        assert_eq!(found.len(), 1, "N = {n}");
        let mut coeffs = found[0].coefficients.clone();
        if coeffs[1] < BigInt::from(0) {
            coeffs.iter_mut().for_each(|x| *x = -x.clone());
        }
        let mut expect = vec![BigInt::from(0); planted.len()];
        expect[1] = BigInt::from(7);
        expect[planted.len() - 1] = BigInt::from(-1);
        assert_eq!(coeffs, expect, "N = {n}");
    }
}

#[test]
fn conjugate_values_give_a_relation() {
    // D2(zeta^(N-j)) = -D2(zeta^j)
    let c = ctx();
    let p = c.working();
    let th = |k: i64| Complex::cis(&(&Real::pi(p).mul_pow2(1) * &Real::from_i64(k, p) / &Real::from_i64(5, p)));
    let a = bloch_wigner_d2(&th(1), &c).unwrap();
    let b = bloch_wigner_d2(&th(4), &c).unwrap();
    let r = relation_scan(&[a, b], &million(), &c).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].coefficients[0], r[0].coefficients[1]);
}

#[test]
fn scan_json_carries_bounds() {
    let s = milnor_scan(5, &million(), &ctx()).unwrap();
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j["N"], 5);
    assert_eq!(j["height"], "1000000");
    assert_eq!(j["values"].as_array().unwrap().len(), 2);
    assert_eq!(j["consistent_with_conjecture"], true);
    assert!(j["prec_bits"].as_u64().unwrap() >= 256);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn plus_parts_of_cyclotomic_symbols_vanish(n in 3u64..=20) {
        let c = PrecisionContext::bits(128);
        let (e, b) = cyclotomic_basis(n, &c).unwrap();
        let plus: Vec<_> = b.iter().map(|x| eigenspace_split(x, &c).unwrap().0).collect();
        let m = borel_matrix(&plus, &e, &c).unwrap();
        prop_assert_eq!(m.torsion_candidates().len(), plus.len());
        let full = borel_matrix(&b, &e, &c).unwrap();
        prop_assert_eq!(full.qrank(&c).rank, b.len());
    }
}
