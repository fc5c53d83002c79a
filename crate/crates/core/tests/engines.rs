mod common;

use betti_core::{
    betti_table, betti_table_direct, betti_table_monomial, koszul::betti_table_with_field,
    koszul::CapSource, BettiOptions, ExecMode, GradedIdeal, PrimeField,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_agrees_with_upper_koszul(ideal in monomial_ideal_strategy(4, 4, 5)) {
        let koszul = betti_table(&graded(&ideal), &BettiOptions::default()).unwrap();
        prop_assert!(!koszul.truncated);
        prop_assert_eq!(koszul.table, betti_table_monomial(&ideal));
    }

    #[test]
    fn koszul_agrees_with_direct_formula(ideal in binomial_ideal_strategy(3, 3, 3)) {
        let koszul = betti_table(&ideal, &BettiOptions::default()).unwrap();
        let direct = betti_table_direct(&ideal, koszul.cap.cap).unwrap();
        prop_assert_eq!(koszul.table, direct);
    }

    #[test]
    fn prime_field_agrees_on_monomial_ideals(ideal in monomial_ideal_strategy(3, 4, 4)) {
        let field = PrimeField::new(betti_core::field::DEFAULT_PRIME).unwrap();
        let rational = betti_table(&graded(&ideal), &BettiOptions::default()).unwrap();
        let modular = betti_table_with_field(&graded(&ideal), field, &BettiOptions::default()).unwrap();
        prop_assert!(modular.heuristic);
        prop_assert_eq!(rational.table, modular.table);
    }
}

#[test]
fn sequential_and_parallel_modes_agree() {
    let ideal: GradedIdeal = reference_ideal().power(1);
    let seq = betti_table(&ideal, &BettiOptions::default().exec(ExecMode::Sequential)).unwrap();
    let par = betti_table(&ideal, &BettiOptions::default().exec(ExecMode::Parallel)).unwrap();
    assert_eq!(seq.table, par.table);
    assert_eq!(seq.cap, par.cap);
}

#[test]
fn explicit_cap_matches_proven_cap() {
    let ideal = reference_ideal();
    let proven = betti_table(&ideal, &BettiOptions::default()).unwrap();
    let wide = betti_table(&ideal, &BettiOptions::with_cap(proven.cap.cap + 3)).unwrap();
    assert_eq!(proven.table, wide.table);
}

#[test]
fn low_cap_keeps_exact_entries_and_flags_truncation() {
    let ideal = reference_ideal();
    let full = betti_table(&ideal, &BettiOptions::default()).unwrap().table;
    let low = betti_table(&ideal, &BettiOptions::with_cap(6)).unwrap();
    assert!(low.truncated);
    assert_eq!(low.cap.source, CapSource::User);
    let below: Vec<_> = full.entries().filter(|((_, j), _)| *j <= 6).collect();
    assert_eq!(low.table.entries().collect::<Vec<_>>(), below);
    assert!(low.complete().is_err());
}

#[test]
fn user_cap_above_a_certificate_is_proven() {
    let certified = betti_table(&reference_ideal(), &BettiOptions::with_cap(20)).unwrap();
    assert!(!certified.truncated);
    assert_eq!(certified.cap.cap, 20);
    assert!(certified.cap.source.is_proven());
    let lcm = betti_table(
        &graded(&monomial_ideal(&[&[3, 0], &[2, 2], &[0, 3]])),
        &BettiOptions::with_cap(6),
    )
    .unwrap();
    assert_eq!(lcm.cap.source, CapSource::LcmBound);
}
