//! Graded Betti numbers through Koszul homology.
//!
//! The main engine uses `Tor_i(K, I) = Tor_{i+1}(K, S/I)` and computes the
//! homology of the Koszul complex on `S/I`, whose terms are small once the
//! quotient is represented by standard monomials. The literal complex on the
//! graded pieces of `I` is kept as [`betti_table_direct`] for cross-checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::betti::{BettiTable, HilbertSlice};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::ideal::GradedIdeal;
use crate::linalg::{sparse_rank, SparseMatrix, SparseVec};
use crate::monomial::{binomial, monomials_of_degree};
use crate::par::{map_vec, ExecMode};
use crate::quotient::{macaulay_upper, QuotientTower};

/// Where a degree cap came from. `User` and `Heuristic` mark caps that no
/// bound certifies, so the table may miss entries above them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapSource {
    User,
    /// Taylor bound: every Betti degree divides the lcm of the generators.
    LcmBound,
    /// Maximal Hilbert function growth certifies the regularity.
    Gotzmann,
    /// A regularity bound supplied by the caller.
    RegularityBound,
    Heuristic,
}

impl CapSource {
    pub fn is_proven(self) -> bool {
        matches!(
            self,
            CapSource::LcmBound | CapSource::Gotzmann | CapSource::RegularityBound
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct BettiOptions {
    /// Explicit internal degree cap.
    pub cap: Option<u32>,
    /// Known upper bound on `reg(I)`; must be a proven bound.
    pub regularity_bound: Option<u32>,
    pub exec: ExecMode,
}

impl BettiOptions {
    pub fn with_cap(cap: u32) -> Self {
        BettiOptions {
            cap: Some(cap),
            ..Default::default()
        }
    }

    pub fn with_regularity_bound(bound: u32) -> Self {
        BettiOptions {
            regularity_bound: Some(bound),
            ..Default::default()
        }
    }

    pub fn exec(mut self, exec: ExecMode) -> Self {
        self.exec = exec;
        self
    }
}

/// A resolved internal degree cap together with the regularity bound used to
/// prune entries that cannot be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCap {
    pub cap: u32,
    pub source: CapSource,
    pub regularity_bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiComputation {
    pub table: BettiTable,
    pub cap: DegreeCap,
    /// The cap is not proven to cover every nonzero entry. Entries up to the
    /// cap are exact either way.
    pub truncated: bool,
    pub engine: String,
    pub heuristic: bool,
}

impl BettiComputation {
    /// The table, or `Error::Truncated` when it may be incomplete.
    pub fn complete(self) -> Result<BettiTable> {
        if self.truncated {
            return Err(Error::Truncated { cap: self.cap.cap });
        }
        Ok(self.table)
    }
}

/// Betti table over the rationals.
pub fn betti_table(ideal: &GradedIdeal, opts: &BettiOptions) -> Result<BettiComputation> {
    betti_table_with_field(ideal, Rationals, opts)
}

pub fn betti_table_with_field<F: Field>(
    ideal: &GradedIdeal,
    field: F,
    opts: &BettiOptions,
) -> Result<BettiComputation> {
    let mut tower = QuotientTower::new(ideal, field)?;
    betti_from_tower(ideal, &mut tower, opts)
}

/// As [`betti_table_with_field`], reusing an existing tower for `ideal`.
pub fn betti_from_tower<F: Field>(
    ideal: &GradedIdeal,
    tower: &mut QuotientTower<F>,
    opts: &BettiOptions,
) -> Result<BettiComputation> {
    let n = ideal.nvars();
    let engine = tower.field().label();
    let heuristic = tower.field().is_heuristic();
    if tower.hilbert(0) == 0 {
        let mut table = BettiTable::new(n);
        table.set(0, 0, 1);
        let cap = DegreeCap {
            cap: opts.cap.unwrap_or(0),
            source: CapSource::RegularityBound,
            regularity_bound: 0,
        };
        return Ok(BettiComputation {
            table,
            cap,
            truncated: false,
            engine,
            heuristic,
        });
    }
    let cap = resolve_cap(ideal, tower, opts)?;
    let reg = cap.regularity_bound;
    let table = koszul_entries(
        tower,
        cap.cap,
        opts.exec,
        |j| (j.saturating_sub(reg) as usize + 1, n),
        false,
    )
    .0;
    let truncated = !cap.source.is_proven();
    Ok(BettiComputation {
        table,
        cap,
        truncated,
        engine,
        heuristic,
    })
}

/// Picks the smallest degree cap this crate can justify.
pub fn resolve_cap<F: Field>(
    ideal: &GradedIdeal,
    tower: &mut QuotientTower<F>,
    opts: &BettiOptions,
) -> Result<DegreeCap> {
    let n = ideal.nvars() as u32;
    let top = ideal.max_generator_degree();
    let lcm = ideal.as_monomial_ideal().map(|m| m.lcm().degree());
    if let Some(cap) = opts.cap {
        if cap < top {
            return Err(Error::CapBelowGenerators {
                cap,
                max_degree: top,
            });
        }
        // A user cap is kept as given; it counts as proven when a bound fits under it.
        let certified = if let Some(r) = opts
            .regularity_bound
            .map(|r| r.max(top))
            .filter(|r| r + n - 1 <= cap)
        {
            Some((CapSource::RegularityBound, r))
        } else if let Some(l) = lcm.filter(|&l| l <= cap) {
            Some((CapSource::LcmBound, l.max(top)))
        } else {
            gotzmann_certificate(tower, top, (cap + 2).saturating_sub(n))
                .map(|e| (CapSource::Gotzmann, e))
        };
        let (source, regularity_bound) = certified.unwrap_or((CapSource::User, cap));
        return Ok(DegreeCap {
            cap,
            source,
            regularity_bound,
        });
    }
    if let Some(r) = opts.regularity_bound {
        let r = r.max(top);
        return Ok(DegreeCap {
            cap: r + n - 1,
            source: CapSource::RegularityBound,
            regularity_bound: r,
        });
    }
    let limit = match lcm {
        Some(l) => l.saturating_sub(n - 1),
        None => ideal.cap_hint().max(top) + n + 4,
    };
    if let Some(e) = gotzmann_certificate(tower, top, limit) {
        return Ok(DegreeCap {
            cap: e + n - 1,
            source: CapSource::Gotzmann,
            regularity_bound: e,
        });
    }
    if let Some(l) = lcm {
        return Ok(DegreeCap {
            cap: l.max(top),
            source: CapSource::LcmBound,
            regularity_bound: l.max(top),
        });
    }
    let cap = ideal.cap_hint().max(top);
    Ok(DegreeCap {
        cap,
        source: CapSource::Heuristic,
        regularity_bound: cap,
    })
}

/// Smallest `e` in `[from, to)` at which the Hilbert function of `S/I` grows
/// maximally from `e` to `e + 1`. With all generators in degree `<= e`,
/// Gotzmann persistence makes `I_{>=e}` a Gotzmann ideal, which has an
/// `e`-linear resolution, hence `reg(I) <= e`.
pub fn gotzmann_certificate<F: Field>(
    tower: &mut QuotientTower<F>,
    from: u32,
    to: u32,
) -> Option<u32> {
    (from.max(1)..to).find(|&e| tower.hilbert(e + 1) == macaulay_upper(tower.hilbert(e), e))
}

struct Subsets {
    by_size: Vec<Vec<u32>>,
    index: Vec<usize>,
}

impl Subsets {
    /// Subsets of `{0..n}` grouped by size, each group in bitmask order.
    fn new(n: usize) -> Self {
        let mut by_size = vec![Vec::new(); n + 1];
        let mut index = vec![0; 1 << n];
        for mask in 0..(1u32 << n) {
            let s = mask.count_ones() as usize;
            index[mask as usize] = by_size[s].len();
            by_size[s].push(mask);
        }
        Subsets { by_size, index }
    }
}

type MultMaps<E> = Vec<Vec<Vec<SparseVec<E>>>>;

/// Rank of `d_h : wedge^h (x) (S/I)_{j-h} -> wedge^{h-1} (x) (S/I)_{j-h+1}`.
#[allow(clippy::needless_range_loop)]
fn koszul_rank<F: Field>(
    field: &F,
    subsets: &Subsets,
    mult: &MultMaps<F::Elem>,
    q: &[usize],
    h: usize,
    j: u32,
) -> usize {
    let n = subsets.by_size.len() - 1;
    if h == 0 || h > n || (j as usize) < h {
        return 0;
    }
    let d = j as usize - h;
    let (lo, hi) = (q[d], q[d + 1]);
    if lo == 0 || hi == 0 {
        return 0;
    }
    let mut m = SparseMatrix::new(subsets.by_size[h - 1].len() * hi);
    for &mask in &subsets.by_size[h] {
        for s in 0..lo {
            let mut col = Vec::new();
            let mut p = 0;
            for t in 0..n {
                if mask & (1 << t) == 0 {
                    continue;
                }
                let base = subsets.index[(mask ^ (1 << t)) as usize] * hi;
                for (r, c) in &mult[d][t][s] {
                    col.push((base + r, if p % 2 == 1 { field.neg(c) } else { c.clone() }));
                }
                p += 1;
            }
            col.sort_by_key(|(r, _)| *r);
            m.push_col(col);
        }
    }
    sparse_rank(field, &m)
}

/// Betti numbers `beta_{h-1, j}` for `j <= cap` and `h` in `band(j)`
/// (inclusive). With `stop_on_first`, degrees are scanned in order and the
/// scan ends at the first degree with a nonzero entry; the flag returned is
/// true when that happened.
fn koszul_entries<F: Field>(
    tower: &mut QuotientTower<F>,
    cap: u32,
    exec: ExecMode,
    band: impl Fn(u32) -> (usize, usize) + Sync,
    stop_on_first: bool,
) -> (BettiTable, bool) {
    let n = tower.nvars();
    tower.extend_to(cap);
    let q: Vec<usize> = (0..=cap).map(|d| tower.hilbert(d)).collect();
    let mult: MultMaps<F::Elem> = (0..cap).map(|d| tower.multiplication(d)).collect();
    let subsets = Subsets::new(n);
    let field = tower.field().clone();
    let degree_entries = |j: u32| -> Vec<(usize, u64)> {
        let (lo, hi) = band(j);
        let (lo, hi) = (lo.max(1), hi.min(n).min(j as usize));
        if lo > hi {
            return Vec::new();
        }
        let ranks: Vec<usize> = (lo..=hi + 1)
            .map(|h| koszul_rank(&field, &subsets, &mult, &q, h, j))
            .collect();
        (lo..=hi)
            .filter_map(|h| {
                let dim = binomial(n, h) * q[j as usize - h];
                let v = dim - ranks[h - lo] - ranks[h - lo + 1];
                (v > 0).then_some((h - 1, v as u64))
            })
            .collect()
    };
    let mut table = BettiTable::new(n);
    if stop_on_first {
        for j in 1..=cap {
            let found = degree_entries(j);
            if !found.is_empty() {
                for (i, v) in found {
                    table.set(i, j, v);
                }
                return (table, true);
            }
        }
        return (table, false);
    }
    let degrees: Vec<u32> = (1..=cap).collect();
    let per_degree = map_vec(exec, degrees, |j| (j, degree_entries(j)));
    for (j, found) in per_degree {
        for (i, v) in found {
            table.set(i, j, v);
        }
    }
    (table, false)
}

/// Outcome of a linear-resolution test for an ideal generated in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Linearity {
    Linear,
    /// Carries a witness `(i, j)` with `beta_{i,j} != 0` and `j - i > d`.
    Nonlinear {
        i: usize,
        j: u32,
    },
    /// No off-strand entry below an unproven cap.
    Unknown {
        cap: u32,
    },
}

/// Decides whether an ideal generated in degree `d` has a `d`-linear
/// resolution by scanning only the entries off the strand `d`.
pub fn linearity_from_tower<F: Field>(
    ideal: &GradedIdeal,
    tower: &mut QuotientTower<F>,
    d: u32,
    opts: &BettiOptions,
) -> Result<Linearity> {
    if tower.hilbert(0) == 0 {
        return Ok(Linearity::Linear);
    }
    let cap = resolve_cap(ideal, tower, opts)?;
    if cap.source.is_proven() && cap.regularity_bound <= d {
        return Ok(Linearity::Linear);
    }
    let reg = cap.regularity_bound;
    // entries with d < j - i <= reg, i.e. j - reg + 1 <= h <= j - d
    let (table, hit) = koszul_entries(
        tower,
        cap.cap,
        opts.exec,
        |j| {
            (
                j.saturating_sub(reg) as usize + 1,
                j.saturating_sub(d) as usize,
            )
        },
        true,
    );
    if hit {
        let ((i, j), _) = table.entries().next().unwrap();
        return Ok(Linearity::Nonlinear { i, j });
    }
    if cap.source.is_proven() {
        Ok(Linearity::Linear)
    } else {
        Ok(Linearity::Unknown { cap: cap.cap })
    }
}

/// The literal Koszul complex on the graded pieces of `I`: the term in
/// homological index `i` and degree `j` is `C(n, i)` copies of `I_{j-i}`.
/// Exact but slow; meant for cross-checking small inputs.
pub fn betti_table_direct(ideal: &GradedIdeal, cap: u32) -> Result<BettiTable> {
    let top = ideal.max_generator_degree();
    if cap < top {
        return Err(Error::CapBelowGenerators {
            cap,
            max_degree: top,
        });
    }
    let n = ideal.nvars();
    let subsets = Subsets::new(n);
    let bases: Vec<_> = (0..=cap).map(|d| ideal.component_basis(d)).collect();
    let monos: Vec<_> = (0..=cap + 1).map(|d| monomials_of_degree(n, d)).collect();
    let index: Vec<HashMap<_, usize>> = monos
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    // rank of wedge^i (x) I_{j-i} -> wedge^{i-1} (x) S_{j-i+1}
    let rank = |i: usize, j: u32| -> usize {
        if i == 0 || i > n || (j as usize) < i {
            return 0;
        }
        let d = j as usize - i;
        let basis = &bases[d].basis;
        if basis.is_empty() {
            return 0;
        }
        let width = monos[d + 1].len();
        let mut m = SparseMatrix::new(subsets.by_size[i - 1].len() * width);
        for &mask in &subsets.by_size[i] {
            for v in basis {
                let mut col = Vec::new();
                let mut p = 0;
                for t in 0..n {
                    if mask & (1 << t) == 0 {
                        continue;
                    }
                    let base = subsets.index[(mask ^ (1 << t)) as usize] * width;
                    for (k, c) in v.iter().enumerate() {
                        if c == &num_traits::Zero::zero() {
                            continue;
                        }
                        let row = base + index[d + 1][&monos[d][k].mul_var(t)];
                        col.push((row, if p % 2 == 1 { -c.clone() } else { c.clone() }));
                    }
                    p += 1;
                }
                col.sort_by_key(|(r, _)| *r);
                m.push_col(col);
            }
        }
        sparse_rank(&Rationals, &m)
    };
    let mut table = BettiTable::new(n);
    for j in 0..=cap {
        for i in 0..=n.min(j as usize) {
            let dim = binomial(n, i) * bases[j as usize - i].dimension;
            if dim == 0 {
                continue;
            }
            let v = dim - rank(i, j) - rank(i + 1, j);
            table.set(i, j, v as u64);
        }
    }
    Ok(table)
}

/// The ideal generated by `I_d`, or `None` when `I_d = 0`.
pub fn truncation_component(ideal: &GradedIdeal, d: u32) -> Result<Option<GradedIdeal>> {
    let mut tower = QuotientTower::new(ideal, Rationals)?;
    truncation_from_tower(ideal, &mut tower, d)
}

pub fn truncation_from_tower(
    ideal: &GradedIdeal,
    tower: &mut QuotientTower<Rationals>,
    d: u32,
) -> Result<Option<GradedIdeal>> {
    let basis = tower.ideal_basis(d);
    if basis.is_empty() {
        return Ok(None);
    }
    let hint = ideal.cap_hint().max(d + ideal.nvars() as u32);
    Ok(Some(
        GradedIdeal::new(ideal.nvars(), basis)?.with_cap_hint(hint),
    ))
}

/// `alpha(I)`, the smallest degree of a nonzero element.
pub fn initial_degree(ideal: &GradedIdeal) -> u32 {
    ideal.initial_degree()
}

/// `j -> dim I_j` for `j <= top`.
pub fn ideal_hilbert(ideal: &GradedIdeal, top: u32) -> Result<HilbertSlice> {
    let mut tower = QuotientTower::new(ideal, Rationals)?;
    let mut slice = HilbertSlice::default();
    for d in 0..=top {
        slice.set(d, tower.ideal_dim(d));
    }
    Ok(slice)
}

/// Graded dimensions of `W_k = m^k I / m^{k+1} I`. Since
/// `(m^{k+1} I)_j = m_1 (m^k I)_{j-1}`, the value in degree `j` is the number
/// of minimal generators of `m^k I` in degree `j`, so the support ends at the
/// largest generator degree.
pub fn hilbert_w(ideal: &GradedIdeal, k: u32) -> Result<HilbertSlice> {
    let power = ideal.power(k);
    let mut tower = QuotientTower::new(&power, Rationals)?;
    Ok(w_from_tower(&mut tower))
}

pub fn w_from_tower<F: Field>(tower: &mut QuotientTower<F>) -> HilbertSlice {
    let mut slice = HilbertSlice::default();
    for (d, count) in tower.minimal_generator_degrees() {
        slice.set(d, count);
    }
    slice
}
