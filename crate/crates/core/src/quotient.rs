//! Degree-by-degree normal forms for `S/I`.
//!
//! Each graded piece `(S/I)_d` is represented by a set of standard
//! monomials together with the normal form of every monomial of degree `d`.
//! Degree `d + 1` is built from degree `d` alone: a monomial `M` is
//! congruent to `x_t * NF(M / x_t)` for every variable `x_t` dividing it,
//! and the differences between these representatives (plus the generators
//! of degree `d + 1`) span exactly the relations among the products
//! `x_t * s` with `s` standard.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::BigRational;

use crate::error::Result;
use crate::field::{Field, Rationals};
use crate::ideal::GradedIdeal;
use crate::linalg::{Echelon, SparseVec};
use crate::monomial::{binomial, monomials_of_degree, Monomial};
use crate::polynomial::Polynomial;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level<E> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Monomial indices of the standard monomials, ascending.
    standard: Vec<usize>,
    /// Position of each monomial among the standard ones, or `NONE`.
    std_pos: Vec<u32>,
    /// Normal form of each monomial over standard positions. Empty in the
    /// monomial fast path, where it is read off `std_pos`.
    nf: Vec<SparseVec<E>>,
}

type GeneratorsByDegree<E> = HashMap<u32, Vec<Vec<(Monomial, E)>>>;

/// Lazily extended tower of the graded pieces of `S/I`.
#[derive(Debug, Clone)]
pub struct QuotientTower<F: Field> {
    field: F,
    n: usize,
    gens_by_degree: GeneratorsByDegree<F::Elem>,
    monomial_gens: Option<HashSet<Monomial>>,
    levels: Vec<Level<F::Elem>>,
    new_generators: Vec<usize>,
}

impl<F: Field> QuotientTower<F> {
    pub fn new(ideal: &GradedIdeal, field: F) -> Result<Self> {
        let mut gens_by_degree: GeneratorsByDegree<F::Elem> = HashMap::new();
        for g in ideal.gens() {
            let terms = g
                .terms()
                .map(|(m, c)| Ok((m.clone(), field.from_rational(c)?)))
                .collect::<Result<Vec<_>>>()?;
            gens_by_degree
                .entry(g.degree().unwrap())
                .or_default()
                .push(terms);
        }
        let monomial_gens = ideal.is_monomial().then(|| {
            ideal
                .gens()
                .iter()
                .map(|g| g.as_monomial().unwrap().clone())
                .collect()
        });
        Ok(QuotientTower {
            field,
            n: ideal.nvars(),
            gens_by_degree,
            monomial_gens,
            levels: Vec::new(),
            new_generators: Vec::new(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial_gens.is_some()
    }

    /// Highest degree built so far.
    pub fn top(&self) -> Option<u32> {
        self.levels.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn extend_to(&mut self, d: u32) {
        while self.levels.len() <= d as usize {
            let next = self.levels.len() as u32;
            let (level, fresh) = if next == 0 {
                self.build_zero()
            } else {
                self.build_next(next)
            };
            self.levels.push(level);
            self.new_generators.push(fresh);
        }
    }

    fn level(&mut self, d: u32) -> &Level<F::Elem> {
        self.extend_to(d);
        &self.levels[d as usize]
    }

    /// `dim_K (S/I)_d`.
    pub fn hilbert(&mut self, d: u32) -> usize {
        self.level(d).standard.len()
    }

    /// `dim_K I_d`.
    pub fn ideal_dim(&mut self, d: u32) -> usize {
        let l = self.level(d);
        l.monomials.len() - l.standard.len()
    }

    /// Number of minimal generators of `I` in degree `d`.
    pub fn minimal_generators_in_degree(&mut self, d: u32) -> usize {
        self.extend_to(d);
        self.new_generators[d as usize]
    }

    /// Degrees (with multiplicity) of a minimal generating set, found by
    /// scanning up to the largest listed generator degree.
    pub fn minimal_generator_degrees(&mut self) -> Vec<(u32, usize)> {
        let top = self.gens_by_degree.keys().copied().max().unwrap_or(0);
        self.extend_to(top);
        (0..=top)
            .filter(|&d| self.new_generators[d as usize] > 0)
            .map(|d| (d, self.new_generators[d as usize]))
            .collect()
    }

    pub fn standard_monomials(&mut self, d: u32) -> Vec<Monomial> {
        let l = self.level(d);
        l.standard.iter().map(|&i| l.monomials[i].clone()).collect()
    }

    /// Normal form of a monomial of degree `d` over the standard positions.
    pub fn normal_form(&mut self, m: &Monomial) -> SparseVec<F::Elem> {
        let d = m.degree();
        self.extend_to(d);
        let idx = self.levels[d as usize].index[m];
        self.nf_at(d, idx)
    }

    fn nf_at(&self, d: u32, idx: usize) -> SparseVec<F::Elem> {
        let l = &self.levels[d as usize];
        if self.monomial_gens.is_some() {
            match l.std_pos[idx] {
                NONE => Vec::new(),
                p => vec![(p as usize, self.field.one())],
            }
        } else {
            l.nf[idx].clone()
        }
    }

    /// Matrices of multiplication by each variable, `(S/I)_d -> (S/I)_{d+1}`:
    /// entry `[t][s]` is the normal form of `x_t * s` for the `s`-th standard
    /// monomial of degree `d`.
    pub fn multiplication(&mut self, d: u32) -> Vec<Vec<SparseVec<F::Elem>>> {
        self.extend_to(d + 1);
        let lo = &self.levels[d as usize];
        let hi = &self.levels[d as usize + 1];
        (0..self.n)
            .map(|t| {
                lo.standard
                    .iter()
                    .map(|&s| {
                        let target = hi.index[&lo.monomials[s].mul_var(t)];
                        self.nf_at(d + 1, target)
                    })
                    .collect()
            })
            .collect()
    }

    fn build_zero(&self) -> (Level<F::Elem>, usize) {
        let one = Monomial::one(self.n);
        let unit = self.gens_by_degree.contains_key(&0);
        let mut index = HashMap::new();
        index.insert(one.clone(), 0);
        let level = Level {
            monomials: vec![one],
            index,
            standard: if unit { vec![] } else { vec![0] },
            std_pos: vec![if unit { NONE } else { 0 }],
            nf: if unit || self.monomial_gens.is_some() {
                vec![Vec::new()]
            } else {
                vec![vec![(0, self.field.one())]]
            },
        };
        (level, usize::from(unit))
    }

    fn empty_level(&self, d: u32) -> Level<F::Elem> {
        let monomials = monomials_of_degree(self.n, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let len = monomials.len();
        Level {
            monomials,
            index,
            standard: Vec::new(),
            std_pos: vec![NONE; len],
            nf: if self.monomial_gens.is_some() {
                Vec::new()
            } else {
                vec![Vec::new(); len]
            },
        }
    }

    fn build_next(&self, d: u32) -> (Level<F::Elem>, usize) {
        let prev = &self.levels[d as usize - 1];
        let mut level = self.empty_level(d);
        if prev.standard.is_empty() {
            return (level, 0);
        }
        match &self.monomial_gens {
            Some(gens) => {
                let fresh = self.build_monomial(prev, &mut level, gens);
                (level, fresh)
            }
            None => {
                let fresh = self.build_general(prev, &mut level, d);
                (level, fresh)
            }
        }
    }

    fn build_monomial(
        &self,
        prev: &Level<F::Elem>,
        level: &mut Level<F::Elem>,
        gens: &HashSet<Monomial>,
    ) -> usize {
        let mut candidates = BTreeSet::new();
        for &s in &prev.standard {
            for t in 0..self.n {
                candidates.insert(level.index[&prev.monomials[s].mul_var(t)]);
            }
        }
        let mut fresh = 0;
        for c in candidates {
            let m = &level.monomials[c];
            let parents_standard = (0..self.n).all(|t| {
                m.div_var(t)
                    .is_none_or(|p| prev.std_pos[prev.index[&p]] != NONE)
            });
            if !parents_standard {
                continue;
            }
            if gens.contains(m) {
                fresh += 1;
                continue;
            }
            level.std_pos[c] = level.standard.len() as u32;
            level.standard.push(c);
        }
        fresh
    }

    fn build_general(&self, prev: &Level<F::Elem>, level: &mut Level<F::Elem>, d: u32) -> usize {
        let f = &self.field;
        // up[t][s]: index in this level of x_t times the s-th standard monomial below
        let up: Vec<Vec<usize>> = (0..self.n)
            .map(|t| {
                prev.standard
                    .iter()
                    .map(|&s| level.index[&prev.monomials[s].mul_var(t)])
                    .collect()
            })
            .collect();
        let psi = |m: &Monomial, t: usize| -> SparseVec<F::Elem> {
            let below = prev.index[&m.div_var(t).unwrap()];
            let mut v: SparseVec<F::Elem> = prev.nf[below]
                .iter()
                .map(|(s, c)| (up[t][*s], c.clone()))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let width = level.monomials.len();
        let mut ech = Echelon::new(f.clone(), width);
        let mut canonical: Vec<SparseVec<F::Elem>> = Vec::with_capacity(width);
        for m in &level.monomials {
            let support: Vec<usize> = (0..self.n).filter(|&t| m.exponents()[t] > 0).collect();
            let base = psi(m, support[0]);
            for &t in &support[1..] {
                let other = psi(m, t);
                if other != base {
                    ech.insert(sub_sparse(f, &base, &other));
                }
            }
            canonical.push(base);
        }
        let candidate_cols: BTreeSet<usize> = up.iter().flatten().copied().collect();
        let before = candidate_cols.len() - ech.rank();
        if let Some(gens) = self.gens_by_degree.get(&d) {
            for g in gens {
                let mut acc: HashMap<usize, F::Elem> = HashMap::new();
                for (m, c) in g {
                    for (col, v) in &canonical[level.index[m]] {
                        let slot = acc.entry(*col).or_insert_with(|| f.zero());
                        *slot = f.add(slot, &f.mul(c, v));
                    }
                }
                let mut v: SparseVec<F::Elem> =
                    acc.into_iter().filter(|(_, e)| !f.is_zero(e)).collect();
                v.sort_by_key(|(i, _)| *i);
                ech.insert(v);
            }
        }
        let after = candidate_cols.len() - ech.rank();
        for &c in &candidate_cols {
            if !ech.is_pivot(c) {
                level.std_pos[c] = level.standard.len() as u32;
                level.standard.push(c);
            }
        }
        for (idx, base) in canonical.into_iter().enumerate() {
            let reduced = ech.reduce(base);
            level.nf[idx] = reduced
                .into_iter()
                .map(|(c, e)| (level.std_pos[c] as usize, e))
                .collect();
        }
        before - after
    }
}

fn sub_sparse<F: Field>(
    f: &F,
    a: &SparseVec<F::Elem>,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&b[j].1)));
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl QuotientTower<Rationals> {
    /// Basis of `I_d`: `M - NF(M)` for every non-standard monomial `M`.
    pub fn ideal_basis(&mut self, d: u32) -> Vec<Polynomial> {
        self.extend_to(d);
        let n = self.n;
        let l = &self.levels[d as usize];
        (0..l.monomials.len())
            .filter(|&i| l.std_pos[i] == NONE)
            .map(|i| {
                let m = l.monomials[i].clone();
                let nf = self.nf_at(d, i);
                let mut terms: Vec<(Monomial, BigRational)> = vec![(m, Rationals.one())];
                terms.extend(
                    nf.into_iter()
                        .map(|(p, c)| (l.monomials[l.standard[p]].clone(), -c)),
                );
                Polynomial::from_terms(n, terms)
            })
            .collect()
    }
}

/// Macaulay's upper bound `h^<d>` on the Hilbert function in degree `d + 1`
/// of a standard graded algebra with `h` in degree `d`.
pub fn macaulay_upper(h: usize, d: u32) -> usize {
    if h == 0 || d == 0 {
        return if d == 0 && h > 0 { usize::MAX } else { 0 };
    }
    let mut rest = h;
    let mut out = 0;
    let mut i = d as usize;
    while rest > 0 && i > 0 {
        // largest k with C(k, i) <= rest
        let mut k = i;
        while binomial(k + 1, i) <= rest {
            k += 1;
        }
        rest -= binomial(k, i);
        out += binomial(k + 1, i + 1);
        i -= 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_PRIME};

    fn reference_ideal() -> GradedIdeal {
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

    #[test]
    fn hilbert_function_agrees_with_component_basis() {
        let i = reference_ideal();
        let mut tower = QuotientTower::new(&i, Rationals).unwrap();
        for d in 0..8 {
            let dim_s = binomial(d as usize + 3, 3);
            assert_eq!(
                tower.ideal_dim(d),
                i.component_basis(d).dimension,
                "degree {d}"
            );
            assert_eq!(tower.hilbert(d) + tower.ideal_dim(d), dim_s);
        }
        // complete intersection of degrees 4, 1, 3: Hilbert polynomial 12
        assert_eq!(tower.hilbert(9), 12);
        assert_eq!(
            tower.minimal_generator_degrees(),
            vec![(1, 1), (3, 1), (4, 1)]
        );
    }

    #[test]
    fn prime_field_tower_matches_rationals() {
        let i = reference_ideal().power(2);
        let mut q = QuotientTower::new(&i, Rationals).unwrap();
        let mut p = QuotientTower::new(&i, PrimeField::new(DEFAULT_PRIME).unwrap()).unwrap();
        for d in 0..10 {
            assert_eq!(q.hilbert(d), p.hilbert(d));
        }
    }

    #[test]
    fn ideal_basis_spans_the_component() {
        let i = reference_ideal();
        let mut tower = QuotientTower::new(&i, Rationals).unwrap();
        let basis = tower.ideal_basis(4);
        let trunc = GradedIdeal::new(4, basis).unwrap();
        assert_eq!(
            trunc.component_basis(4).dimension,
            i.component_basis(4).dimension
        );
        assert_eq!(
            trunc.component_basis(5).dimension,
            i.component_basis(5).dimension
        );
    }

    #[test]
    fn macaulay_bound_examples() {
        // 10 = C(5,3) in degree 3 grows to C(6,4) = 15
        assert_eq!(macaulay_upper(10, 3), 15);
        // constant 12 in degree 12 persists
        assert_eq!(macaulay_upper(12, 12), 12);
        assert_eq!(macaulay_upper(0, 4), 0);
        // 3d = (d+1) + d + (d-1) grows to 3d + 3
        assert_eq!(macaulay_upper(15, 5), 18);
    }
}
