//! Monomial ideals and the linear-quotients machinery: colon ideals of
//! generator prefixes, lambda invariants, admissible-order search, and the
//! order-lifting construction from `I` to `m I`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Degree ascending, ties broken by the exponent vector with larger
/// vectors (in lex order) first, so `x^3` comes before `y^3`.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exponents().cmp(a.exponents()))
}

/// A monomial ideal stored by its minimal generating set `G(I)`, in
/// canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Minimal generating set of the ideal generated by `gens`.
pub fn minimal_generators(gens: &[Monomial]) -> Result<MonomialIdeal> {
    let first = gens.first().ok_or(Error::ZeroIdeal)?;
    let n = first.nvars();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::VariableCount {
            expected: n,
            found: bad.nvars(),
        });
    }
    Ok(MonomialIdeal {
        n,
        gens: minimalize(gens.to_vec()),
    })
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // a divisor never has larger degree, so checking earlier entries suffices
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn lcm(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    pub fn generator_degrees(&self) -> BTreeSet<u32> {
        self.gens.iter().map(Monomial::degree).collect()
    }

    /// `G(m I)`.
    pub fn times_maximal(&self) -> MonomialIdeal {
        let cands = self
            .gens
            .iter()
            .flat_map(|g| (0..self.n).map(move |t| g.mul_var(t)))
            .collect();
        MonomialIdeal {
            n: self.n,
            gens: minimalize(cands),
        }
    }

    /// The canonical degree-ascending order on `G(I)`.
    pub fn canonical_order(&self) -> GeneratorOrder {
        GeneratorOrder {
            sequence: self.gens.clone(),
        }
    }
}

/// `G(m^k I)`.
pub fn power_product(ideal: &MonomialIdeal, k: u32) -> MonomialIdeal {
    (0..k).fold(ideal.clone(), |acc, _| acc.times_maximal())
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An ordering `u_1 < ... < u_r` of the minimal generators of an ideal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GeneratorOrder {
    sequence: Vec<Monomial>,
}

impl GeneratorOrder {
    /// Validate that `sequence` is a permutation of `G(I)`.
    pub fn new(ideal: &MonomialIdeal, sequence: Vec<Monomial>) -> Result<Self> {
        let want: HashSet<&Monomial> = ideal.gens.iter().collect();
        let got: HashSet<&Monomial> = sequence.iter().collect();
        if sequence.len() != ideal.gens.len() || want != got {
            return Err(Error::InvalidOrder);
        }
        Ok(GeneratorOrder { sequence })
    }

    pub fn sequence(&self) -> &[Monomial] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn is_degree_ascending(&self) -> bool {
        self.first_degree_descent().is_none()
    }

    fn first_degree_descent(&self) -> Option<usize> {
        self.sequence
            .windows(2)
            .position(|w| w[0].degree() > w[1].degree())
            .map(|p| p + 1)
    }

    /// Minimal generators of `(u_1, ..., u_{i-1}) : u_i`, with `position`
    /// the 0-based index of `u_i` (so `1 <= position < r`).
    pub fn colon_prefix(&self, position: usize) -> Result<Vec<Monomial>> {
        if position == 0 || position >= self.sequence.len() {
            return Err(Error::IndexOutOfRange {
                index: position,
                lo: 1,
                hi: self.sequence.len().saturating_sub(1),
            });
        }
        Ok(prefix_colon(
            &self.sequence[..position],
            &self.sequence[position],
        ))
    }
}

fn prefix_colon(prefix: &[Monomial], u: &Monomial) -> Vec<Monomial> {
    minimalize(prefix.iter().map(|v| v.colon(u)).collect())
}

/// Per-generator lambda values; entry 0 belongs to `u_1` and is always 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LambdaProfile {
    pub values: Vec<u32>,
}

impl LambdaProfile {
    pub fn max(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn is_admissible(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// `lambda_i = sum over the minimal generators w of the i-th colon of (deg w - 1)`.
pub fn lambda_invariant(order: &GeneratorOrder) -> LambdaProfile {
    let seq = &order.sequence;
    let values = (0..seq.len())
        .map(|i| {
            if i == 0 {
                0
            } else {
                prefix_colon(&seq[..i], &seq[i])
                    .iter()
                    .map(|w| w.degree() - 1)
                    .sum()
            }
        })
        .collect();
    LambdaProfile { values }
}

/// Outcome of the admissible-order search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinearQuotients {
    Admissible(GeneratorOrder),
    None,
    Inconclusive { nodes: u64 },
}

/// Generator counts up to this size are searched exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 12;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000;

/// Backtracking search for an admissible order. Dead prefixes are memoized
/// by their generator set, since the colon of a prefix does not depend on the
/// prefix order.
pub fn has_linear_quotients(ideal: &MonomialIdeal, node_budget: u64) -> LinearQuotients {
    let gens = &ideal.gens;
    let r = gens.len();
    let exhaustive = r <= EXHAUSTIVE_LIMIT;
    let mut search = Search {
        gens,
        dead: HashSet::new(),
        nodes: 0,
        budget: if exhaustive { u64::MAX } else { node_budget },
        out_of_budget: false,
    };
    let mut chosen = vec![false; r];
    let mut order = Vec::with_capacity(r);
    if search.dfs(&mut chosen, &mut order) {
        let sequence = order.iter().map(|&i| gens[i].clone()).collect();
        return LinearQuotients::Admissible(GeneratorOrder { sequence });
    }
    if search.out_of_budget {
        LinearQuotients::Inconclusive {
            nodes: search.nodes,
        }
    } else {
        LinearQuotients::None
    }
}

struct Search<'a> {
    gens: &'a [Monomial],
    dead: HashSet<Vec<bool>>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Search<'_> {
    fn dfs(&mut self, chosen: &mut Vec<bool>, order: &mut Vec<usize>) -> bool {
        if order.len() == self.gens.len() {
            return true;
        }
        if self.dead.contains(chosen) {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return false;
        }
        for g in 0..self.gens.len() {
            if chosen[g] || !self.extends(order, g) {
                continue;
            }
            chosen[g] = true;
            order.push(g);
            if self.dfs(chosen, order) {
                return true;
            }
            order.pop();
            chosen[g] = false;
            if self.out_of_budget {
                return false;
            }
        }
        self.dead.insert(chosen.clone());
        false
    }

    fn extends(&self, order: &[usize], g: usize) -> bool {
        let u = &self.gens[g];
        let colons: Vec<Monomial> = order.iter().map(|&i| self.gens[i].colon(u)).collect();
        let vars: Vec<usize> = colons
            .iter()
            .filter(|c| c.is_variable())
            .filter_map(Monomial::first_var)
            .collect();
        colons
            .iter()
            .all(|c| vars.iter().any(|&t| c.exponents()[t] > 0))
    }
}

/// One entry `f_{i,j} = x_{s_{i,j}} u_i` of the lifted order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Candidate {
    /// 0-based position `i` of the parent generator in the input order.
    pub parent: usize,
    /// 0-based position `j` inside the parent's variable sequence.
    pub slot: usize,
    /// The variable `s_{i,j}`.
    pub var: usize,
    pub monomial: Monomial,
    /// `n_i`, the number of variables in the colon support of the parent.
    pub support_size: usize,
    /// The parent's full variable sequence `s_{i,1}, ..., s_{i,n}`.
    pub var_sequence: Vec<usize>,
    /// Minimal in `G(m I)` and not a repeat of an earlier candidate.
    pub kept: bool,
}

/// Result of lifting a degree-ascending order on `G(I)` to `G(m I)`.
#[derive(Clone, Debug)]
pub struct LiftedOrder {
    pub ideal: MonomialIdeal,
    pub order: GeneratorOrder,
    pub candidates: Vec<Candidate>,
}

/// Build the order `O_1` on `G(m I)` from a degree-ascending order on
/// `G(I)`: each parent lists the variables of its colon support first, then
/// the remaining variables (both ascending); non-minimal candidates and
/// repeats are dropped.
pub fn construct_order_o1(order: &GeneratorOrder) -> Result<LiftedOrder> {
    if let Some(position) = order.first_degree_descent() {
        return Err(Error::OrderNotDegreeAscending { position });
    }
    let seq = &order.sequence;
    let n = seq.first().ok_or(Error::ZeroIdeal)?.nvars();
    let ideal = MonomialIdeal {
        n,
        gens: minimalize(
            seq.iter()
                .flat_map(|g| (0..n).map(move |t| g.mul_var(t)))
                .collect(),
        ),
    };
    let minimal: HashSet<&Monomial> = ideal.gens.iter().collect();
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut candidates = Vec::with_capacity(seq.len() * n);
    for (i, u) in seq.iter().enumerate() {
        let (var_sequence, support_size) = if i == 0 {
            ((0..n).collect::<Vec<_>>(), n)
        } else {
            let support: BTreeSet<usize> = prefix_colon(&seq[..i], u)
                .iter()
                .flat_map(Monomial::support)
                .collect();
            let mut s: Vec<usize> = support.iter().copied().collect();
            s.extend((0..n).filter(|t| !support.contains(t)));
            (s, support.len())
        };
        for (slot, &var) in var_sequence.iter().enumerate() {
            let f = u.mul_var(var);
            let kept = minimal.contains(&f) && seen.insert(f.clone());
            candidates.push(Candidate {
                parent: i,
                slot,
                var,
                monomial: f,
                support_size,
                var_sequence: var_sequence.clone(),
                kept,
            });
        }
    }
    let sequence: Vec<Monomial> = candidates
        .iter()
        .filter(|c| c.kept)
        .map(|c| c.monomial.clone())
        .collect();
    if sequence.len() != ideal.gens.len() {
        return Err(Error::Internal(
            "lifted order misses minimal generators of m I".into(),
        ));
    }
    Ok(LiftedOrder {
        ideal,
        order: GeneratorOrder { sequence },
        candidates,
    })
}

/// Witness that `m^t I` has linear quotients.
#[derive(Clone, Debug)]
pub struct LinearQuotientsPower {
    pub t: u32,
    pub ideal: MonomialIdeal,
    pub order: GeneratorOrder,
    /// Maximal lambda of `O_0, O_1, ..., O_t`.
    pub trajectory: Vec<u32>,
}

/// Iterate the order lifting from the canonical order of `G(I)` until the
/// order is admissible. The maximal lambda must drop strictly at every step
/// while positive, so `cap >= max lambda(O_0)` always suffices.
pub fn find_linear_quotients_power(
    ideal: &MonomialIdeal,
    cap: u32,
) -> Result<LinearQuotientsPower> {
    let mut current_ideal = ideal.clone();
    let mut order = ideal.canonical_order();
    let mut trajectory: Vec<u32> = Vec::new();
    for t in 0..=cap {
        let profile = lambda_invariant(&order);
        let max = profile.max();
        if let Some(&prev) = trajectory.last() {
            if max >= prev {
                return Err(Error::Internal(format!(
                    "lambda maximum did not drop at step {t}: {prev} -> {max}"
                )));
            }
        }
        trajectory.push(max);
        if max == 0 {
            return Ok(LinearQuotientsPower {
                t,
                ideal: current_ideal,
                order,
                trajectory,
            });
        }
        if t == cap {
            break;
        }
        let lifted = construct_order_o1(&order)?;
        current_ideal = lifted.ideal;
        order = lifted.order;
    }
    if cap >= trajectory[0] {
        Err(Error::Internal(format!(
            "no admissible order within {cap} steps despite initial lambda maximum {}",
            trajectory[0]
        )))
    } else {
        Err(Error::CapExceeded { cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        minimal_generators(&gens.iter().map(|e| m(e)).collect::<Vec<_>>()).unwrap()
    }

    fn ordered(gens: &[&[u32]]) -> GeneratorOrder {
        let i = ideal(gens);
        GeneratorOrder::new(&i, gens.iter().map(|e| m(e)).collect()).unwrap()
    }

    #[test]
    fn minimalization_examples() {
        let i = ideal(&[&[4, 0], &[3, 1], &[3, 2], &[2, 3], &[1, 3], &[0, 4]]);
        assert_eq!(i.gens(), &[m(&[4, 0]), m(&[3, 1]), m(&[1, 3]), m(&[0, 4])]);
        let j = ideal(&[&[3, 0], &[2, 2], &[0, 3]]);
        assert_eq!(j.len(), 3);
        let k = ideal(&[&[2, 0], &[2, 1], &[0, 1]]);
        assert_eq!(k.gens(), &[m(&[0, 1]), m(&[2, 0])]);
        assert!(minimal_generators(&[]).is_err());
    }

    #[test]
    fn power_product_examples() {
        let i = ideal(&[&[3, 0], &[2, 2], &[0, 3]]);
        assert_eq!(power_product(&i, 0), i);
        assert_eq!(
            power_product(&i, 1),
            ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]])
        );
        let m5 = ideal(&[&[5, 0], &[4, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 5]]);
        assert_eq!(power_product(&i, 2), m5);
    }

    #[test]
    fn colon_prefix_examples() {
        let o = ordered(&[&[3, 0], &[0, 3], &[2, 2]]);
        assert_eq!(o.colon_prefix(2).unwrap(), vec![m(&[1, 0]), m(&[0, 1])]);
        assert_eq!(o.colon_prefix(1).unwrap(), vec![m(&[3, 0])]);
        let xy = ordered(&[&[1, 0], &[0, 1]]);
        assert_eq!(xy.colon_prefix(1).unwrap(), vec![m(&[1, 0])]);
        assert!(matches!(
            o.colon_prefix(0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            o.colon_prefix(3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(
            lambda_invariant(&ordered(&[&[1, 1, 0, 0], &[0, 0, 1, 1]])).values,
            vec![0, 1]
        );
        assert_eq!(
            lambda_invariant(&ordered(&[&[1, 0], &[0, 1]])).values,
            vec![0, 0]
        );
        assert_eq!(
            lambda_invariant(&ordered(&[&[3, 0], &[0, 3], &[2, 2]])).values,
            vec![0, 2, 0]
        );
    }

    #[test]
    fn linear_quotient_search_examples() {
        assert!(matches!(
            has_linear_quotients(&ideal(&[&[1, 0], &[0, 1]]), 10),
            LinearQuotients::Admissible(_)
        ));
        assert_eq!(
            has_linear_quotients(&ideal(&[&[3, 0], &[2, 2], &[0, 3]]), 10),
            LinearQuotients::None
        );
        assert_eq!(
            has_linear_quotients(&ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]), 10),
            LinearQuotients::None
        );
    }

    #[test]
    fn lifted_order_examples() {
        let lifted = construct_order_o1(&ordered(&[&[3, 0], &[0, 3], &[2, 2]])).unwrap();
        assert_eq!(
            lifted.order.sequence(),
            &[m(&[4, 0]), m(&[3, 1]), m(&[1, 3]), m(&[0, 4])]
        );
        assert_eq!(lambda_invariant(&lifted.order).max(), 1);

        let principal = construct_order_o1(&ordered(&[&[2, 0]])).unwrap();
        assert_eq!(principal.order.sequence(), &[m(&[3, 0]), m(&[2, 1])]);
        assert!(lambda_invariant(&principal.order).is_admissible());

        let ci = construct_order_o1(&ordered(&[&[1, 1, 0, 0], &[0, 0, 1, 1]])).unwrap();
        assert!(lambda_invariant(&ci.order).is_admissible());
    }

    #[test]
    fn lifting_rejects_degree_descents() {
        let o = ordered(&[&[2, 2], &[3, 0], &[0, 3]]);
        assert!(matches!(
            construct_order_o1(&o),
            Err(Error::OrderNotDegreeAscending { position: 1 })
        ));
    }

    #[test]
    fn linear_quotient_power_examples() {
        let w = find_linear_quotients_power(&ideal(&[&[3, 0], &[2, 2], &[0, 3]]), 5).unwrap();
        assert_eq!(w.t, 2);
        assert_eq!(w.trajectory, vec![2, 1, 0]);
        assert_eq!(w.ideal.len(), 6);
        let stable = find_linear_quotients_power(&ideal(&[&[2, 0], &[1, 1]]), 3).unwrap();
        assert_eq!(stable.t, 0);
        let ci = find_linear_quotients_power(&ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]), 3).unwrap();
        assert_eq!(ci.t, 1);
        assert_eq!(ci.trajectory, vec![1, 0]);
    }

    #[test]
    fn cap_below_initial_lambda_is_reported() {
        let r = find_linear_quotients_power(&ideal(&[&[3, 0], &[2, 2], &[0, 3]]), 1);
        assert_eq!(r.unwrap_err(), Error::CapExceeded { cap: 1 });
    }
}
