use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::linalg::Echelon;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::monomial_ideal::{minimal_generators, power_product, MonomialIdeal};
use crate::polynomial::Polynomial;

/// A homogeneous ideal of `K[x_1..x_n]` given by nonzero homogeneous
/// generators, stored in ascending degree order.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    n: usize,
    gens: Vec<Polynomial>,
    cap_hint: u32,
}

/// `(sum of generator degrees) - (number of generators) + 1 + n`.
pub fn heuristic_cap(degrees: &[u32], n: usize) -> u32 {
    let sum: u32 = degrees.iter().sum();
    (sum + 1 + n as u32).saturating_sub(degrees.len() as u32)
}

impl GradedIdeal {
    pub fn new(n: usize, gens: Vec<Polynomial>) -> Result<Self> {
        let mut checked = Vec::with_capacity(gens.len());
        for (index, g) in gens.into_iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::VariableCount {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous {
                    index,
                    degrees: g.term_degrees(),
                });
            }
            if !checked.contains(&g) {
                checked.push(g);
            }
        }
        if checked.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        checked.sort_by_key(|g| g.degree().unwrap());
        let degrees: Vec<u32> = checked.iter().map(|g| g.degree().unwrap()).collect();
        Ok(GradedIdeal {
            n,
            cap_hint: heuristic_cap(&degrees, n),
            gens: checked,
        })
    }

    pub fn from_monomial_ideal(ideal: &MonomialIdeal) -> Self {
        let gens: Vec<Polynomial> = ideal
            .gens()
            .iter()
            .cloned()
            .map(Polynomial::from_monomial)
            .collect();
        let degrees: Vec<u32> = ideal.gens().iter().map(Monomial::degree).collect();
        GradedIdeal {
            n: ideal.nvars(),
            cap_hint: heuristic_cap(&degrees, ideal.nvars()),
            gens,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Heuristic degree cap carried along through powers and truncations.
    pub fn cap_hint(&self) -> u32 {
        self.cap_hint
    }

    pub fn with_cap_hint(mut self, hint: u32) -> Self {
        self.cap_hint = hint;
        self
    }

    /// Degrees of the listed generators (not necessarily minimal).
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree().unwrap()).collect()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.last().and_then(Polynomial::degree).unwrap()
    }

    /// The initial degree: smallest `j` with `I_j != 0`.
    pub fn initial_degree(&self) -> u32 {
        self.gens[0].degree().unwrap()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.as_monomial().is_some())
    }

    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let monos: Option<Vec<Monomial>> =
            self.gens.iter().map(|g| g.as_monomial().cloned()).collect();
        minimal_generators(&monos?).ok()
    }

    /// Generators of `m^k I`.
    pub fn power(&self, k: u32) -> GradedIdeal {
        if k == 0 {
            return self.clone();
        }
        if let Some(mono) = self.as_monomial_ideal() {
            return GradedIdeal::from_monomial_ideal(&power_product(&mono, k))
                .with_cap_hint(self.cap_hint + k);
        }
        let multipliers = monomials_of_degree(self.n, k);
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for g in &self.gens {
            for u in &multipliers {
                let p = g.mul_monomial(u);
                if seen.insert(p.clone()) {
                    gens.push(p);
                }
            }
        }
        gens.sort_by_key(|g| g.degree().unwrap());
        GradedIdeal {
            n: self.n,
            gens,
            cap_hint: self.cap_hint + k,
        }
    }

    /// A basis of `I_d` obtained by row reducing all monomial multiples of
    /// the generators over the monomial basis of `S_d`.
    pub fn component_basis(&self, d: u32) -> DegreeComponentBasis {
        let monos = monomials_of_degree(self.n, d);
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(Rationals, monos.len());
        for g in &self.gens {
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            for u in monomials_of_degree(self.n, d - gd) {
                let mut v: Vec<(usize, BigRational)> = g
                    .terms()
                    .map(|(m, c)| (index[&m.mul(&u)], c.clone()))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                ech.insert(v);
                if ech.rank() == monos.len() {
                    break;
                }
            }
        }
        let basis: Vec<Vec<BigRational>> = ech
            .reduced_rows()
            .into_iter()
            .map(|row| {
                let mut dense = vec![BigRational::zero(); monos.len()];
                for (c, v) in row {
                    dense[c] = v;
                }
                dense
            })
            .collect();
        DegreeComponentBasis {
            degree: d,
            dimension: basis.len(),
            basis,
        }
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Basis of a graded piece `I_d`, as coefficient vectors over the monomial
/// basis of `S_d` in graded lexicographic order (largest monomial first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComponentBasis {
    pub degree: u32,
    pub basis: Vec<Vec<BigRational>>,
    pub dimension: usize,
}
