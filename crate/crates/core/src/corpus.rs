//! Seeded random ideals. Every ideal is drawn from its own ChaCha stream,
//! so a record can be regenerated from `(seed, index)` alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ideal::GradedIdeal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::monomial_ideal::{minimal_generators, MonomialIdeal};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub n: usize,
    pub max_degree: u32,
    pub min_generators: usize,
    pub max_generators: usize,
    /// Binomial generators `+-u +-v` instead of monomials.
    pub general: bool,
}

impl CorpusSpec {
    pub fn monomial(n: usize, max_degree: u32) -> Self {
        CorpusSpec {
            n,
            max_degree,
            min_generators: 2,
            max_generators: 6,
            general: false,
        }
    }
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform over the monomials of degree `1..=max_degree`.
pub fn random_monomial(rng: &mut impl Rng, n: usize, max_degree: u32) -> Monomial {
    let pool: Vec<Monomial> = (1..=max_degree)
        .flat_map(|d| monomials_of_degree(n, d))
        .collect();
    pool.choose(rng).unwrap().clone()
}

pub fn random_monomial_ideal(rng: &mut impl Rng, spec: &CorpusSpec) -> MonomialIdeal {
    let count = rng.gen_range(spec.min_generators..=spec.max_generators);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| random_monomial(rng, spec.n, spec.max_degree))
        .collect();
    minimal_generators(&gens).unwrap()
}

/// Each generator is `+-u +-v` for two distinct monomials of one random degree.
pub fn random_binomial_ideal(rng: &mut impl Rng, spec: &CorpusSpec) -> GradedIdeal {
    let count = rng.gen_range(spec.min_generators..=spec.max_generators);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let d = rng.gen_range(1..=spec.max_degree);
        let pool = monomials_of_degree(spec.n, d);
        let u = pool.choose(rng).unwrap();
        let v = pool.choose(rng).unwrap();
        if u == v {
            continue;
        }
        let sign = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { 1 } else { -1 };
        let su = sign(rng);
        let sv = sign(rng);
        gens.push(Polynomial::from_int_terms(
            spec.n,
            [(u.exponents().to_vec(), su), (v.exponents().to_vec(), sv)],
        ));
    }
    GradedIdeal::new(spec.n, gens).unwrap()
}

pub fn random_ideal(seed: u64, index: u64, spec: &CorpusSpec) -> GradedIdeal {
    let mut rng = rng_for(seed, index);
    if spec.general {
        random_binomial_ideal(&mut rng, spec)
    } else {
        GradedIdeal::from_monomial_ideal(&random_monomial_ideal(&mut rng, spec))
    }
}

/// Monomial ideals with the variable count drawn from `2..=max_n` per entry.
pub fn mixed_monomial_corpus(
    seed: u64,
    count: usize,
    max_n: usize,
    max_degree: u32,
) -> Vec<MonomialIdeal> {
    (0..count as u64)
        .map(|index| {
            let mut rng = rng_for(seed, index);
            let n = rng.gen_range(2..=max_n);
            random_monomial_ideal(&mut rng, &CorpusSpec::monomial(n, max_degree))
        })
        .collect()
}
