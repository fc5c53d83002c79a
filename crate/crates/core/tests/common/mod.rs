#![allow(dead_code)]

use betti_core::{minimal_generators, GradedIdeal, Monomial, MonomialIdeal, Polynomial};
use proptest::prelude::*;

/// `(x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)` in four variables.
pub fn reference_ideal() -> GradedIdeal {
    GradedIdeal::new(
        4,
        vec![
            Polynomial::from_int_terms(4, [(vec![1, 3, 0, 0], 1), (vec![0, 0, 4, 0], 1)]),
            Polynomial::from_int_terms(
                4,
                [
                    (vec![1, 0, 0, 0], 1),
                    (vec![0, 1, 0, 0], 1),
                    (vec![0, 0, 0, 1], 1),
                ],
            ),
            Polynomial::from_int_terms(4, [(vec![0, 3, 0, 0], 1)]),
        ],
    )
    .unwrap()
}

pub fn monomial_ideal(gens: &[&[u32]]) -> MonomialIdeal {
    let gens: Vec<Monomial> = gens.iter().map(|e| Monomial::new(e.to_vec())).collect();
    minimal_generators(&gens).unwrap()
}

pub fn graded(ideal: &MonomialIdeal) -> GradedIdeal {
    GradedIdeal::from_monomial_ideal(ideal)
}

/// Exponent vectors of total degree in `1..=max_degree`.
pub fn monomial_strategy(n: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_degree, n)
        .prop_filter("degree in range", move |e| {
            let d: u32 = e.iter().sum();
            d >= 1 && d <= max_degree
        })
        .prop_map(Monomial::new)
}

pub fn monomial_ideal_strategy(
    max_n: usize,
    max_degree: u32,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(monomial_strategy(n, max_degree), 1..=max_gens)
            .prop_map(|gens| minimal_generators(&gens).unwrap())
    })
}

/// Homogeneous binomials `u + c v` with `c` in `{-1, 1}`.
pub fn binomial_ideal_strategy(
    n: usize,
    max_degree: u32,
    max_gens: usize,
) -> impl Strategy<Value = GradedIdeal> {
    let gen = (1..=max_degree).prop_flat_map(move |d| {
        let exact = move || {
            prop::collection::vec(0..=d, n)
                .prop_filter("exact degree", move |e| e.iter().sum::<u32>() == d)
        };
        (exact(), exact(), prop::bool::ANY)
    });
    prop::collection::vec(gen, 1..=max_gens).prop_filter_map("nonzero ideal", move |gens| {
        let polys: Vec<Polynomial> = gens
            .into_iter()
            .map(|(u, v, plus)| {
                Polynomial::from_int_terms(n, [(u, 1), (v, if plus { 1 } else { -1 })])
            })
            .filter(|p| !p.is_zero())
            .collect();
        GradedIdeal::new(n, polys).ok()
    })
}

/// `dim_K I_d` by row reduction of all monomial multiples of the generators.
pub fn ideal_dim(ideal: &GradedIdeal, d: u32) -> usize {
    ideal.component_basis(d).dimension
}
