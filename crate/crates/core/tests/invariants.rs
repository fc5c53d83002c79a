mod common;

use betti_core::monomial::binomial;
use betti_core::monomial_ideal::DEFAULT_NODE_BUDGET;
use betti_core::{
    betti_table, has_linear_quotients, hilbert_w, is_componentwise_linear, koszul::ideal_hilbert,
    power_product, BettiOptions, Monomial,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn zeroth_betti_numbers_count_minimal_generators(ideal in monomial_ideal_strategy(4, 4, 5)) {
        let table = betti_table(&graded(&ideal), &BettiOptions::default()).unwrap().table;
        let mut counts = std::collections::BTreeMap::new();
        for g in ideal.gens() {
            *counts.entry(g.degree()).or_insert(0u64) += 1;
        }
        prop_assert_eq!(table.generator_degrees(), counts);
    }

    #[test]
    fn projective_dimension_below_nvars(ideal in monomial_ideal_strategy(4, 4, 5)) {
        let table = betti_table(&graded(&ideal), &BettiOptions::default()).unwrap().table;
        prop_assert!(table.max_index().unwrap() < ideal.nvars());
    }

    /// The alternating sum of the resolution recovers `dim I_d`.
    #[test]
    fn betti_numbers_determine_hilbert_function(ideal in binomial_ideal_strategy(3, 3, 3)) {
        let comp = betti_table(&ideal, &BettiOptions::default()).unwrap();
        let n = ideal.nvars();
        for d in 0..=comp.cap.cap {
            let mut euler: i64 = 0;
            for ((i, j), b) in comp.table.entries() {
                if j <= d {
                    let free = binomial(n - 1 + (d - j) as usize, n - 1) as i64;
                    euler += if i % 2 == 0 { 1 } else { -1 } * b as i64 * free;
                }
            }
            prop_assert_eq!(euler, ideal_dim(&ideal, d) as i64);
        }
    }

    #[test]
    fn quotient_tower_matches_component_basis(ideal in binomial_ideal_strategy(3, 3, 3)) {
        let slice = ideal_hilbert(&ideal, 6).unwrap();
        for d in 0..=6 {
            prop_assert_eq!(slice.get(d), ideal_dim(&ideal, d));
        }
    }

    #[test]
    fn power_products_add(ideal in monomial_ideal_strategy(3, 3, 4), a in 0u32..3, b in 0u32..3) {
        prop_assert_eq!(power_product(&power_product(&ideal, a), b), power_product(&ideal, a + b));
    }

    #[test]
    fn graded_power_matches_monomial_power(ideal in monomial_ideal_strategy(3, 3, 4), k in 0u32..3) {
        let g = graded(&ideal).power(k);
        let m = graded(&power_product(&ideal, k));
        let top = ideal.gens().iter().map(Monomial::degree).max().unwrap() + k + 1;
        for d in 0..=top {
            prop_assert_eq!(ideal_dim(&g, d), ideal_dim(&m, d));
        }
    }

    #[test]
    fn colon_times_gcd_recovers_monomial(u in monomial_strategy(4, 6), v in monomial_strategy(4, 6)) {
        prop_assert_eq!(u.colon(&v).mul(&u.gcd(&v)), u.clone());
        prop_assert_eq!(u.gcd(&v).mul(&u.lcm(&v)), u.mul(&v));
    }

    /// `dim (W_k)_j = dim (m^k I)_j - dim (m^{k+1} I)_j`.
    #[test]
    fn w_dimensions_match_component_bases(ideal in binomial_ideal_strategy(3, 3, 3), k in 0u32..3) {
        let w = hilbert_w(&ideal, k).unwrap();
        let lower = ideal.power(k);
        let upper = ideal.power(k + 1);
        let top = ideal.max_generator_degree() + k + 1;
        for j in 0..=top {
            prop_assert_eq!(w.get(j), ideal_dim(&lower, j) - ideal_dim(&upper, j));
        }
    }

    #[test]
    fn linear_quotients_imply_componentwise_linear(ideal in monomial_ideal_strategy(3, 3, 4)) {
        if let betti_core::monomial_ideal::LinearQuotients::Admissible(_) =
            has_linear_quotients(&ideal, DEFAULT_NODE_BUDGET)
        {
            prop_assert!(is_componentwise_linear(&graded(&ideal)).unwrap());
        }
    }

    #[test]
    fn componentwise_linear_regularity_is_top_generator_degree(ideal in monomial_ideal_strategy(3, 4, 4)) {
        let g = graded(&ideal);
        if is_componentwise_linear(&g).unwrap() {
            let table = betti_table(&g, &BettiOptions::default()).unwrap().table;
            prop_assert_eq!(table.regularity().unwrap(), g.max_generator_degree());
        }
    }
}

#[test]
fn reference_w_dimensions() {
    let ideal = reference_ideal();
    let w = hilbert_w(&ideal, 2).unwrap();
    let lower = ideal.power(2);
    let upper = ideal.power(3);
    for j in 0..=8 {
        assert_eq!(
            w.get(j),
            ideal_dim(&lower, j) - ideal_dim(&upper, j),
            "degree {j}"
        );
    }
    assert_eq!(
        w.values.into_iter().collect::<Vec<_>>(),
        vec![(3, 10), (5, 6), (6, 6)]
    );
}
