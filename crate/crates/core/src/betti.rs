//! Graded Betti tables, strands and Hilbert slices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonzero graded Betti numbers `beta_{i,j}` of an ideal in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, u32), u64>,
}

/// The row `beta_{i, i + ell}` for `i = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub ell: u32,
    pub values: Vec<u64>,
}

impl Strand {
    pub fn is_nonzero(&self) -> bool {
        self.values.iter().any(|&v| v > 0)
    }

    /// Nonzero in every homological index `0..n`.
    pub fn is_full(&self) -> bool {
        !self.values.is_empty() && self.values.iter().all(|&v| v > 0)
    }
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        BettiTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Sets an entry; zero removes it.
    pub fn set(&mut self, i: usize, j: u32, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries as `((i, j), beta)` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest homological index with a nonzero entry.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().map(|&(_, j)| j).max()
    }

    /// The strand `ell` with values for `i = 0..n`.
    pub fn strand(&self, ell: u32) -> Strand {
        let values = (0..self.n).map(|i| self.get(i, i as u32 + ell)).collect();
        Strand { ell, values }
    }

    pub fn nonzero_strands(&self) -> BTreeSet<u32> {
        self.entries.keys().map(|&(i, j)| j - i as u32).collect()
    }

    pub fn strands(&self) -> Vec<Strand> {
        self.nonzero_strands()
            .into_iter()
            .map(|ell| self.strand(ell))
            .collect()
    }

    /// Support as `(i, ell)` pairs; two tables have the same shape up to a
    /// shift when these sets differ by a constant in `ell`.
    pub fn shape(&self) -> BTreeSet<(usize, u32)> {
        self.entries
            .keys()
            .map(|&(i, j)| (i, j - i as u32))
            .collect()
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> Result<u32> {
        self.nonzero_strands()
            .last()
            .copied()
            .ok_or(Error::EmptyTable)
    }

    /// Column sums for `i = 0..=max_index`.
    pub fn totals(&self) -> Vec<u64> {
        let Some(top) = self.max_index() else {
            return Vec::new();
        };
        let mut out = vec![0; top + 1];
        for (&(i, _), &v) in &self.entries {
            out[i] += v;
        }
        out
    }

    /// Degree distribution of the minimal generators, `j -> beta_{0,j}`.
    pub fn generator_degrees(&self) -> BTreeMap<u32, u64> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == 0)
            .map(|(&(_, j), &v)| (j, v))
            .collect()
    }

    /// True when every entry lies on the single strand `d`.
    pub fn is_linear(&self, d: u32) -> bool {
        self.entries.keys().all(|&(i, j)| j == i as u32 + d)
    }
}

/// A finitely supported function `degree -> dimension`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HilbertSlice {
    pub values: BTreeMap<u32, usize>,
}

impl HilbertSlice {
    pub fn get(&self, d: u32) -> usize {
        self.values.get(&d).copied().unwrap_or(0)
    }

    pub fn set(&mut self, d: u32, v: usize) {
        if v == 0 {
            self.values.remove(&d);
        } else {
            self.values.insert(d, v);
        }
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.values.keys().copied().collect()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.values.keys().next_back().copied()
    }
}
