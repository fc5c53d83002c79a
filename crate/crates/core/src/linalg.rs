//! Exact linear algebra: fraction-free rank, sparse rank with singleton
//! peeling and block splitting, and an incremental sparse echelon form.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Field, Rationals};

/// Rank by Bareiss fraction-free elimination. Every intermediate entry is a
/// minor of the input, so the division in the update is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let nrows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // smallest nonzero entry keeps the numbers a little tamer
        let pivot = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].bits());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[col];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for c in col + 1..ncols {
                let v = pv * &row[c] - &lead * &prow[c];
                row[c] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        let rows = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        Rationals.rank(rows, self.cols)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Column-major sparse matrix over a field.
#[derive(Debug, Clone)]
pub struct SparseMatrix<E> {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols: 0,
            cols: Vec::new(),
        }
    }

    pub fn push_col(&mut self, col: Vec<(usize, E)>) {
        debug_assert!(col.iter().all(|(r, _)| *r < self.nrows));
        self.cols.push(col);
        self.ncols += 1;
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Exact rank of a sparse matrix. Rows or columns with a single live entry
/// are peeled off first (each contributes one to the rank); the remaining
/// core is split into connected blocks that are ranked densely.
pub fn sparse_rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    let nrows = m.nrows;
    let ncols = m.ncols;
    let mut values: HashMap<(usize, usize), F::Elem> = HashMap::new();
    let mut row_adj: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    let mut col_adj: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (c, col) in m.cols.iter().enumerate() {
        for (r, v) in col {
            if field.is_zero(v) {
                continue;
            }
            let slot = values.entry((*r, c)).or_insert_with(|| field.zero());
            *slot = field.add(slot, v);
        }
    }
    values.retain(|_, v| !field.is_zero(v));
    for &(r, c) in values.keys() {
        row_adj[r].push(c);
        col_adj[c].push(r);
    }
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    let mut row_count: Vec<usize> = row_adj.iter().map(Vec::len).collect();
    let mut col_count: Vec<usize> = col_adj.iter().map(Vec::len).collect();

    let mut rank = 0;
    // singleton queues hold (is_row, index)
    let mut queue: Vec<(bool, usize)> = Vec::new();
    queue.extend((0..nrows).filter(|&r| row_count[r] == 1).map(|r| (true, r)));
    queue.extend(
        (0..ncols)
            .filter(|&c| col_count[c] == 1)
            .map(|c| (false, c)),
    );
    while let Some((is_row, idx)) = queue.pop() {
        let (r, c) = if is_row {
            if !row_alive[idx] || row_count[idx] != 1 {
                continue;
            }
            let c = *row_adj[idx].iter().find(|&&c| col_alive[c]).unwrap();
            (idx, c)
        } else {
            if !col_alive[idx] || col_count[idx] != 1 {
                continue;
            }
            let r = *col_adj[idx].iter().find(|&&r| row_alive[r]).unwrap();
            (r, idx)
        };
        rank += 1;
        row_alive[r] = false;
        col_alive[c] = false;
        for &cc in &row_adj[r] {
            if col_alive[cc] {
                col_count[cc] -= 1;
                if col_count[cc] == 1 {
                    queue.push((false, cc));
                }
            }
        }
        for &rr in &col_adj[c] {
            if row_alive[rr] {
                row_count[rr] -= 1;
                if row_count[rr] == 1 {
                    queue.push((true, rr));
                }
            }
        }
    }

    // connected blocks of what is left
    let mut uf = UnionFind::new(nrows + ncols);
    for &(r, c) in values.keys() {
        if row_alive[r] && col_alive[c] {
            uf.union(r, nrows + c);
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for r in (0..nrows).filter(|&r| row_alive[r] && row_count[r] > 0) {
        blocks.entry(uf.find(r)).or_default().0.push(r);
    }
    for c in (0..ncols).filter(|&c| col_alive[c] && col_count[c] > 0) {
        blocks.entry(uf.find(nrows + c)).or_default().1.push(c);
    }
    for (rows, cols) in blocks.into_values() {
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let col_pos: HashMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|&r| {
                let mut row = vec![field.zero(); cols.len()];
                for &c in &row_adj[r] {
                    if let Some(&p) = col_pos.get(&c) {
                        row[p] = values[&(r, c)].clone();
                    }
                }
                row
            })
            .collect();
        rank += field.rank(dense, cols.len());
    }
    rank
}

/// Sparse vector as a sorted list of (index, value) pairs.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Incremental row echelon form over sparse vectors. The pivot of a row is
/// its smallest column index and rows only carry entries at or after their
/// pivot, so a single ascending sweep fully reduces any vector.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    pivots: Vec<Option<SparseVec<F::Elem>>>,
    rank: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon {
            field,
            width,
            pivots: vec![None; width],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots[col].is_some()
    }

    /// Reduce `v` until none of its columns is a pivot column.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<usize, F::Elem> =
            v.into_iter().filter(|(_, e)| !f.is_zero(e)).collect();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivots[**c].is_some())
                .map(|(c, e)| (*c, e.clone()));
            let Some((col, coeff)) = next else { break };
            let row = self.pivots[col].as_ref().unwrap();
            for (c, e) in row {
                let t = f.mul(&coeff, e);
                let slot = work.entry(*c).or_insert_with(|| f.zero());
                *slot = f.sub(slot, &t);
                if f.is_zero(slot) {
                    work.remove(c);
                }
            }
            cursor = col + 1;
        }
        work.into_iter().collect()
    }

    /// Insert a vector; returns true when it raised the rank.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let reduced = self.reduce(v);
        let Some((pivot, lead)) = reduced.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let row: SparseVec<F::Elem> = reduced
            .into_iter()
            .map(|(c, e)| (c, self.field.mul(&e, &inv)))
            .collect();
        self.pivots[pivot] = Some(row);
        self.rank += 1;
        true
    }

    /// Pivot rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<F::Elem>> {
        self.pivots.iter().flatten()
    }

    /// Rows brought to reduced echelon form (each pivot column cleared in
    /// every other row).
    pub fn reduced_rows(&self) -> Vec<SparseVec<F::Elem>> {
        let mut out: Vec<SparseVec<F::Elem>> = Vec::with_capacity(self.rank);
        let cols: Vec<usize> = (0..self.width)
            .filter(|&c| self.pivots[c].is_some())
            .collect();
        let mut done: Echelon<F> = Echelon::new(self.field.clone(), self.width);
        // back-substitute from the last pivot so later rows are already clean
        for &c in cols.iter().rev() {
            let row = self.pivots[c].clone().unwrap();
            let (head, tail) = row.split_first().unwrap();
            let cleaned = done.reduce(tail.to_vec());
            let mut full = vec![head.clone()];
            full.extend(cleaned);
            done.pivots[c] = Some(full);
            done.rank += 1;
        }
        for &c in &cols {
            out.push(done.pivots[c].clone().unwrap());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_PRIME};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        let z = RationalMatrix::zeros(2, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_dim(), 4);
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
    }

    #[test]
    fn bareiss_handles_skipped_columns() {
        let m =
            RationalMatrix::from_i64_rows(&[vec![0, 2, 4, 1], vec![0, 1, 2, 7], vec![0, 3, 6, 8]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rational_entries() {
        let m = RationalMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(1), q(2)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows = vec![
            vec![1, 0, 0, 2, 0],
            vec![0, 1, 1, 0, 0],
            vec![1, 1, 1, 2, 0],
            vec![0, 0, 0, 0, 3],
            vec![0, 2, 2, 0, 3],
        ];
        let dense = RationalMatrix::from_i64_rows(&rows);
        let mut sp = SparseMatrix::new(rows.len());
        for c in 0..5 {
            sp.push_col(
                (0..rows.len())
                    .filter(|&r| rows[r][c] != 0)
                    .map(|r| (r, q(rows[r][c])))
                    .collect(),
            );
        }
        assert_eq!(sparse_rank(&Rationals, &sp), dense.rank());
        assert_eq!(dense.rank(), 3);
    }

    #[test]
    fn echelon_reduces_and_counts() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut e = Echelon::new(f, 4);
        assert!(e.insert(vec![(1, 1), (2, 1)]));
        assert!(e.insert(vec![(0, 1), (1, 1)]));
        assert!(!e.insert(vec![(0, 1), (2, f.neg(&1))]));
        assert_eq!(e.rank(), 2);
        let r = e.reduce(vec![(1, 5)]);
        assert_eq!(r, vec![(2, f.neg(&5))]);
        let rr = e.reduced_rows();
        assert_eq!(rr[0], vec![(0, 1), (2, f.neg(&1))]);
    }
}
