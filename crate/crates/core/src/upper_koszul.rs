//! Multigraded Betti numbers of monomial ideals from upper Koszul
//! simplicial complexes: `beta_{i,b}(I) = dim H~_{i-1}(K^b(I))` with
//! `K^b = { F subset of supp(b) : x^(b - F) in I }`. Only multidegrees in
//! the lcm lattice of the generators can contribute.

use std::collections::{BTreeMap, BTreeSet};

use crate::betti::BettiTable;
use crate::field::Rationals;
use crate::linalg::{sparse_rank, SparseMatrix};
use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Lcms of all nonempty subsets of the generators.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> BTreeSet<Monomial> {
    let mut lattice: BTreeSet<Monomial> = ideal.gens().iter().cloned().collect();
    let mut frontier: Vec<Monomial> = lattice.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in ideal.gens() {
                let l = a.lcm(g);
                if lattice.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    lattice
}

/// Dimensions of the reduced homology `H~_k`, `k = -1..`, of the upper
/// Koszul complex at `b`, indexed from `k = -1`.
pub fn upper_koszul_homology(ideal: &MonomialIdeal, b: &Monomial) -> Vec<usize> {
    let support: Vec<usize> = b.support().into_iter().collect();
    let s = support.len();
    let in_face = |mask: u32| -> bool {
        let mut e = b.exponents().to_vec();
        for (bit, &v) in support.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                e[v] -= 1;
            }
        }
        ideal.contains(&Monomial::new(e))
    };
    // faces[k + 1] holds faces with k + 1 vertices
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for mask in 0..(1u32 << s) {
        if in_face(mask) {
            faces[mask.count_ones() as usize].push(mask);
        }
    }
    let position: Vec<BTreeMap<u32, usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    // rank of the boundary from faces of size `size` to size `size - 1`
    let rank = |size: usize| -> usize {
        if size == 0 || size > s || faces[size].is_empty() || faces[size - 1].is_empty() {
            return 0;
        }
        let mut m = SparseMatrix::new(faces[size - 1].len());
        for &face in &faces[size] {
            let mut col = Vec::new();
            let mut p = 0;
            for bit in 0..s {
                if face & (1 << bit) == 0 {
                    continue;
                }
                if let Some(&r) = position[size - 1].get(&(face ^ (1 << bit))) {
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    col.push((r, BigRational::from_integer(BigInt::from(sign))));
                }
                p += 1;
            }
            col.sort_by_key(|(r, _)| *r);
            m.push_col(col);
        }
        sparse_rank(&Rationals, &m)
    };
    (0..=s)
        .map(|size| faces[size].len() - rank(size) - rank(size + 1))
        .collect()
}

/// Betti table of a monomial ideal, independent of the Koszul engine.
pub fn betti_table_monomial(ideal: &MonomialIdeal) -> BettiTable {
    let mut table = BettiTable::new(ideal.nvars());
    for b in lcm_lattice(ideal) {
        for (size, dim) in upper_koszul_homology(ideal, &b).into_iter().enumerate() {
            if dim > 0 {
                let j = b.degree();
                table.set(size, j, table.get(size, j) + dim as u64);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_ideal::minimal_generators;

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        minimal_generators(
            &gens
                .iter()
                .map(|e| Monomial::new(e.to_vec()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn three_generators() {
        let b = betti_table_monomial(&ideal(&[&[3, 0], &[2, 2], &[0, 3]]));
        assert_eq!(
            b.entries().collect::<Vec<_>>(),
            vec![((0, 3), 2), ((0, 4), 1), ((1, 5), 2)]
        );
    }

    #[test]
    fn principal() {
        let b = betti_table_monomial(&ideal(&[&[2, 1]]));
        assert_eq!(b.entries().collect::<Vec<_>>(), vec![((0, 3), 1)]);
    }

    #[test]
    fn m_times_i() {
        // four generators in two variables have three minimal syzygies
        let b = betti_table_monomial(&ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]));
        assert_eq!(
            b.entries().collect::<Vec<_>>(),
            vec![((0, 4), 4), ((1, 5), 2), ((1, 6), 1)]
        );
    }

    #[test]
    fn koszul_on_three_variables() {
        let b = betti_table_monomial(&ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(
            b.entries().collect::<Vec<_>>(),
            vec![((0, 1), 3), ((1, 2), 3), ((2, 3), 1)]
        );
    }

    #[test]
    fn lattice_of_two_coprime_generators() {
        let l = lcm_lattice(&ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
        assert_eq!(l.len(), 3);
    }
}
