//! Homology dimension tables.
//!
//! Every computation goes through one routine: ordered column reduction of
//! the coboundary `δ^k` of a `(k, u)` slice, with basis elements ordered by
//! filtration value. The resulting (column, pivot) pairs give plain ranks
//! and, for a filtered complex, every page of its spectral sequence. Pairs
//! are memoized in a [`PairStore`], keyed by the complex, the filtration
//! values, `k` and `u`.
//!
//! Columns whose index was a pivot row of `δ^{k-1}` are skipped: their
//! reduced form is a combination of earlier columns.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras::{conjugacy_data, group_algebra, AlgebraError, FiniteGroup, StructuredBialgebra};
use crate::complexes::{BigradedComplex, Coefficients, ComplexError, Direction, Normalization};
use crate::f2linalg::{reduce_pairs, SparseColumns};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degree {0} is beyond the computed range")]
    OutOfRange(usize),
    #[error("differential out of ({n}, {u}) does not preserve weights")]
    NotGraded { n: usize, u: u32 },
}

/// `(column, pivot row)` pairs of one reduced slice.
pub type Pairs = Arc<Vec<(u32, u32)>>;

pub trait PairStore: Send + Sync {
    fn get(&self, key: &str) -> Option<Pairs>;
    fn put(&self, key: &str, pairs: Pairs);
}

#[derive(Default)]
pub struct MemoryStore {
    map: Mutex<HashMap<String, Pairs>>,
}

impl MemoryStore {
    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl PairStore for MemoryStore {
    fn get(&self, key: &str) -> Option<Pairs> {
        self.map.lock().unwrap().get(key).cloned()
    }

    fn put(&self, key: &str, pairs: Pairs) {
        self.map.lock().unwrap().insert(key.to_string(), pairs);
    }
}

fn shared_store() -> Arc<MemoryStore> {
    static STORE: OnceLock<Arc<MemoryStore>> = OnceLock::new();
    STORE.get_or_init(|| Arc::new(MemoryStore::default())).clone()
}

/// Visiting order of a slice: filtration key descending (key = −value),
/// ties by index. `rank[i]` is the row rank used when the slice is the
/// target of a coboundary, so that the pivot is the lowest-key entry.
#[derive(Clone, Debug)]
pub struct SliceOrder {
    pub keys: Vec<i64>,
    pub order: Vec<u32>,
    pub rank: Vec<u32>,
}

/// Slice orders and reductions for one complex and one filtration.
#[derive(Clone)]
pub struct Engine {
    store: Arc<dyn PairStore>,
}

impl Default for Engine {
    /// Engine backed by a process-wide in-memory store.
    fn default() -> Self {
        Engine { store: shared_store() }
    }
}

impl Engine {
    pub fn with_store(store: Arc<dyn PairStore>) -> Self {
        Engine { store }
    }

    pub fn store(&self) -> &Arc<dyn PairStore> {
        &self.store
    }

    pub fn slice_order(cx: &BigradedComplex, values: Option<&[u32]>, k: usize, u: u32) -> SliceOrder {
        let s = cx.slice(k, u);
        let keys: Vec<i64> = match values {
            None => vec![0; s.len()],
            Some(v) => s
                .codes
                .iter()
                .map(|&c| -(cx.decode(c, k).iter().map(|&i| v[i as usize] as i64).sum::<i64>()))
                .collect(),
        };
        let mut order: Vec<u32> = (0..s.len() as u32).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(keys[i as usize]), i));
        let n = order.len() as u32;
        let mut rank = vec![0u32; s.len()];
        for (pos, &i) in order.iter().enumerate() {
            rank[i as usize] = n - 1 - pos as u32;
        }
        SliceOrder { keys, order, rank }
    }

    fn key(cx: &BigradedComplex, values: Option<&[u32]>, k: usize, u: u32) -> String {
        match values {
            None => format!("{}|plain|k{k}|u{u}", cx.cache_tag()),
            Some(v) => format!("{}|values{v:?}|k{k}|u{u}", cx.cache_tag()),
        }
    }

    /// Pairs of `δ^k` on slice `u` (cohomological orientation).
    pub fn pairs(&self, cx: &BigradedComplex, values: Option<&[u32]>, k: usize, u: u32) -> Pairs {
        let key = Self::key(cx, values, k, u);
        if let Some(p) = self.store.get(&key) {
            return p;
        }
        let cleared: Vec<u32> = if k == 0 {
            Vec::new()
        } else {
            self.pairs(cx, values, k - 1, u).iter().map(|&(_, r)| r).collect()
        };
        let src = Self::slice_order(cx, values, k, u);
        let tgt = Self::slice_order(cx, values, k + 1, u);
        let delta = cx.coboundary(k, u);
        let pairs = Arc::new(reduce_pairs(&delta, &src.order, &tgt.rank, &cleared));
        self.store.put(&key, pairs.clone());
        pairs
    }

    /// `rank δ^k` on slice `u`.
    pub fn coboundary_rank(&self, cx: &BigradedComplex, k: usize, u: u32) -> usize {
        self.pairs(cx, None, k, u).len()
    }

    /// Homology of slice `(n, u)`: `dim C − rank δ^n − rank δ^{n−1}`.
    pub fn slice_homology(&self, cx: &BigradedComplex, n: usize, u: u32) -> usize {
        let c = cx.slice_dim(n, u);
        let out = self.coboundary_rank(cx, n, u);
        let inc = if n == 0 { 0 } else { self.coboundary_rank(cx, n - 1, u) };
        c - out - inc
    }

    pub fn homology_dims(&self, cx: &BigradedComplex) -> DimTable {
        let n_max = cx.n_max();
        let us: Vec<u32> = cx.u_range(n_max + 1).collect();
        let per_u: Vec<Vec<(usize, usize)>> = us
            .par_iter()
            .map(|&u| {
                (0..=n_max)
                    .filter(|&n| u <= cx.top_u(n))
                    .map(|n| (n, self.slice_homology(cx, n, u)))
                    .collect()
            })
            .collect();
        let mut t = DimTable::new(
            &format!("{} {} {} homology of {}", cx.direction(), cx.coefficients(), cx.normalization(), cx.algebra().name()),
            &["n", "u"],
        );
        for (u, row) in us.iter().zip(per_u) {
            for (n, d) in row {
                t.insert(vec![n as u32, *u], d, true);
            }
        }
        t.n_max = Some(n_max);
        t.complete_rows = (0..=n_max).filter(|&n| cx.top_u(n) == cx.algebra().top_degree() * cx.factors(n) as u32).collect();
        t
    }
}

/// Homology of a complex whose differential preserves per-basis weights,
/// by `(n, t, u)` with `t` the total weight. Ranks come from independent
/// weight blocks, without any ordering by weight.
pub fn graded_homology_dims(cx: &BigradedComplex, weights: &[u32]) -> Result<DimTable, HomologyError> {
    let n_max = cx.n_max();
    let weight_of = |c: u64, n: usize| cx.decode(c, n).iter().map(|&i| weights[i as usize]).sum::<u32>();
    let us: Vec<u32> = cx.u_range(n_max + 1).collect();
    // rank of δ^k restricted to each weight, per u
    let per_u: Vec<Result<Vec<(usize, u32, usize)>, HomologyError>> = us
        .par_iter()
        .map(|&u| {
            let mut out = Vec::new();
            let mut prev: HashMap<u32, usize> = HashMap::new();
            for k in 0..=n_max {
                let src = cx.slice(k, u);
                let tgt = cx.slice(k + 1, u);
                let sw: Vec<u32> = src.codes.iter().map(|&c| weight_of(c, k)).collect();
                let tw: Vec<u32> = tgt.codes.iter().map(|&c| weight_of(c, k + 1)).collect();
                let delta = cx.coboundary(k, u);
                let mut ranks: HashMap<u32, usize> = HashMap::new();
                let mut ws: Vec<u32> = sw.clone();
                ws.sort_unstable();
                ws.dedup();
                for &w in &ws {
                    let rows: Vec<usize> = (0..tgt.len()).filter(|&i| tw[i] == w).collect();
                    let mut local = vec![u32::MAX; tgt.len()];
                    for (j, &r) in rows.iter().enumerate() {
                        local[r] = j as u32;
                    }
                    let mut cols = Vec::new();
                    for c in (0..src.len()).filter(|&i| sw[i] == w) {
                        let mut col = Vec::new();
                        for &r in delta.col(c) {
                            if local[r as usize] == u32::MAX {
                                return Err(HomologyError::NotGraded { n: k, u });
                            }
                            col.push(local[r as usize]);
                        }
                        col.sort_unstable();
                        cols.push(col);
                    }
                    ranks.insert(w, SparseColumns::with_columns(rows.len(), cols).rank());
                }
                for &w in &ws {
                    let c = sw.iter().filter(|&&x| x == w).count();
                    let h = c - ranks.get(&w).copied().unwrap_or(0) - prev.get(&w).copied().unwrap_or(0);
                    out.push((k, w, h));
                }
                prev = ranks;
            }
            Ok(out)
        })
        .collect();
    let mut t = DimTable::new(&format!("graded homology of {}", cx.algebra().name()), &["n", "t", "u"]);
    for (u, row) in us.iter().zip(per_u) {
        for (n, w, d) in row? {
            t.insert(vec![n as u32, w, *u], d, true);
        }
    }
    t.n_max = Some(n_max);
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub degree: Vec<u32>,
    pub dim: usize,
    pub exact: bool,
}

/// Dimensions indexed by a degree tuple such as `(n, u)` or `(s, t, u)`.
/// Zero entries are stored too, so absence means "not computed".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub label: String,
    pub axes: Vec<String>,
    pub entries: Vec<DimEntry>,
    pub n_max: Option<usize>,
    /// Rows whose internal-degree range was not truncated.
    pub complete_rows: Vec<usize>,
}

impl DimTable {
    pub fn new(label: &str, axes: &[&str]) -> Self {
        DimTable {
            label: label.into(),
            axes: axes.iter().map(|s| s.to_string()).collect(),
            entries: Vec::new(),
            n_max: None,
            complete_rows: Vec::new(),
        }
    }

    /// Inserts or overwrites, keeping entries sorted.
    pub fn insert(&mut self, degree: Vec<u32>, dim: usize, exact: bool) {
        match self.entries.binary_search_by(|e| e.degree.cmp(&degree)) {
            Ok(i) => self.entries[i] = DimEntry { degree, dim, exact },
            Err(i) => self.entries.insert(i, DimEntry { degree, dim, exact }),
        }
    }

    pub fn get(&self, degree: &[u32]) -> Option<usize> {
        self.entries.binary_search_by(|e| e.degree.as_slice().cmp(degree)).ok().map(|i| self.entries[i].dim)
    }

    /// Dimension, treating uncomputed entries as zero.
    pub fn dim(&self, degree: &[u32]) -> usize {
        self.get(degree).unwrap_or(0)
    }

    /// Sum over entries whose first coordinate is `n`.
    pub fn row_total(&self, n: u32) -> usize {
        self.entries.iter().filter(|e| e.degree[0] == n).map(|e| e.dim).sum()
    }

    pub fn row_totals(&self) -> Vec<usize> {
        let max = self.entries.iter().map(|e| e.degree[0]).max();
        match max {
            None => Vec::new(),
            Some(m) => (0..=m).map(|n| self.row_total(n)).collect(),
        }
    }

    /// Sums out every coordinate except the listed ones.
    pub fn marginal(&self, keep: &[usize]) -> DimTable {
        let mut acc: BTreeMap<Vec<u32>, (usize, bool)> = BTreeMap::new();
        for e in &self.entries {
            let k: Vec<u32> = keep.iter().map(|&i| e.degree[i]).collect();
            let slot = acc.entry(k).or_insert((0, true));
            slot.0 += e.dim;
            slot.1 &= e.exact;
        }
        let axes: Vec<&str> = keep.iter().map(|&i| self.axes[i].as_str()).collect();
        let mut t = DimTable::new(&self.label, &axes);
        t.entries = acc.into_iter().map(|(degree, (dim, exact))| DimEntry { degree, dim, exact }).collect();
        t.n_max = self.n_max;
        t.complete_rows = self.complete_rows.clone();
        t
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &DimEntry> {
        self.entries.iter().filter(|e| e.dim > 0)
    }
}

pub fn homology_dims(cx: &BigradedComplex) -> DimTable {
    Engine::default().homology_dims(cx)
}

/// `HH_*(A, A)` for `n ≤ n_max`, by `(n, u)`.
pub fn hh(a: Arc<StructuredBialgebra>, n_max: usize) -> Result<DimTable, HomologyError> {
    hh_with(a, n_max, Normalization::Full)
}

pub fn hh_with(a: Arc<StructuredBialgebra>, n_max: usize, norm: Normalization) -> Result<DimTable, HomologyError> {
    let cx = BigradedComplex::new(a, Direction::Chain, Coefficients::SelfCoefficients, norm, n_max, None)?;
    let mut t = homology_dims(&cx);
    t.label = format!("HH_*({0}, {0})", cx.algebra().name());
    Ok(t)
}

/// `coHH^*(C, C)` (self) or `Ext_{C*}(k, k)` (ground), by `(n, u)`.
pub fn cohh(c: Arc<StructuredBialgebra>, coeff: Coefficients, n_max: usize) -> Result<DimTable, HomologyError> {
    cohh_with(c, coeff, n_max, None, Normalization::Full)
}

pub fn cohh_with(
    c: Arc<StructuredBialgebra>,
    coeff: Coefficients,
    n_max: usize,
    u_max: Option<u32>,
    norm: Normalization,
) -> Result<DimTable, HomologyError> {
    let cx = BigradedComplex::new(c, Direction::Cochain, coeff, norm, n_max, u_max)?;
    let mut t = homology_dims(&cx);
    t.label = match coeff {
        Coefficients::SelfCoefficients => format!("coHH^*({0}, {0})", cx.algebra().name()),
        Coefficients::Ground => format!("coHH^*({}, k)", cx.algebra().name()),
    };
    Ok(t)
}

/// `Ext_{A(1)}^{s,u}(F2, F2)` for `s ≤ s_max`, `u ≤ u_max`.
pub fn ext_dims(s_max: usize, u_max: u32) -> Result<DimTable, HomologyError> {
    let c = Arc::new(crate::algebras::builtin("a1_dual")?);
    let mut t = cohh_with(c, Coefficients::Ground, s_max, Some(u_max), Normalization::Full)?;
    t.label = "Ext_A(1)(F2, F2)".into();
    t.axes = vec!["s".into(), "u".into()];
    Ok(t)
}

/// `H_*(G; F2)` from the normalized bar complex of `F2[G]` with ground
/// coefficients (the full one has `|G|^{n+1}` columns in a single slice).
pub fn group_homology(g: &FiniteGroup, n_max: usize) -> Result<DimTable, HomologyError> {
    let a = Arc::new(group_algebra(g, &format!("F2[{}]", g.small_group_name())));
    let cx = BigradedComplex::new(a, Direction::Chain, Coefficients::Ground, Normalization::Normalized, n_max, None)?;
    let mut t = homology_dims(&cx);
    t.label = format!("H_*({}; F2)", g.small_group_name());
    Ok(t)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassContribution {
    pub representative: String,
    pub class_size: usize,
    pub centralizer: String,
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BurgheleaReport {
    pub group: String,
    pub classes: Vec<ClassContribution>,
    pub hh: Vec<usize>,
    pub predicted: Vec<usize>,
    pub matches: Vec<bool>,
}

impl BurgheleaReport {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }
}

/// Compares `HH_*(F2[G])` with `⊕ H_*(C_G(g))` over conjugacy classes.
pub fn burghelea_check(g: &FiniteGroup, n_max: usize) -> Result<BurgheleaReport, HomologyError> {
    let a = Arc::new(group_algebra(g, &format!("F2[{}]", g.small_group_name())));
    let hh_t = hh(a, n_max)?;
    let hh_tot: Vec<usize> = (0..=n_max as u32).map(|n| hh_t.row_total(n)).collect();
    let mut classes = Vec::new();
    let mut predicted = vec![0usize; n_max + 1];
    for c in conjugacy_data(g) {
        let z = g.subgroup(&c.centralizer)?;
        let h = group_homology(&z, n_max)?;
        let homology: Vec<usize> = (0..=n_max as u32).map(|n| h.row_total(n)).collect();
        for (p, x) in predicted.iter_mut().zip(&homology) {
            *p += x;
        }
        classes.push(ClassContribution {
            representative: g.names()[c.representative].clone(),
            class_size: c.elements.len(),
            centralizer: z.small_group_name(),
            homology,
        });
    }
    let matches = hh_tot.iter().zip(&predicted).map(|(a, b)| a == b).collect();
    Ok(BurgheleaReport { group: g.small_group_name(), classes, hh: hh_tot, predicted, matches })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub algebra: String,
    /// `(n, u, dim HH, dim coHH)` for every computed slice.
    pub entries: Vec<(u32, u32, usize, usize)>,
}

impl DualityReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.2 == e.3)
    }
}

/// Slice-by-slice comparison of `HH_*(A, A)` with `coHH^*(A*, A*)`.
pub fn duality_check(a: Arc<StructuredBialgebra>, n_max: usize) -> Result<DualityReport, HomologyError> {
    let dual = Arc::new(a.dualize());
    let name = a.name().to_string();
    let h = hh_with(a, n_max, Normalization::Full)?;
    let c = cohh_with(dual, Coefficients::SelfCoefficients, n_max, None, Normalization::Full)?;
    let entries = h
        .entries
        .iter()
        .map(|e| (e.degree[0], e.degree[1], e.dim, c.dim(&e.degree)))
        .collect();
    Ok(DualityReport { algebra: name, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin;

    fn arc(name: &str) -> Arc<StructuredBialgebra> {
        Arc::new(builtin(name).unwrap())
    }

    #[test]
    fn exterior_hh_is_two() {
        let t = hh(arc("exterior1"), 8).unwrap();
        assert_eq!(t.row_totals(), vec![2; 9]);
    }

    #[test]
    fn normalized_agrees_with_full() {
        for name in ["a1", "e0may", "truncpoly2", "d8_group_algebra"] {
            let a = arc(name);
            let n = if name == "d8_group_algebra" { 2 } else { 3 };
            let f = hh_with(a.clone(), n, Normalization::Full).unwrap();
            let g = hh_with(a, n, Normalization::Normalized).unwrap();
            assert_eq!(f.entries, g.entries, "{name}");
        }
    }

    #[test]
    fn group_homology_small() {
        assert_eq!(group_homology(&FiniteGroup::cyclic(2), 5).unwrap().row_totals(), vec![1; 6]);
        assert_eq!(group_homology(&FiniteGroup::klein_four(), 4).unwrap().row_totals(), vec![1, 2, 3, 4, 5]);
        assert_eq!(group_homology(&FiniteGroup::cyclic(4), 4).unwrap().row_totals(), vec![1; 5]);
    }

    #[test]
    fn table_marginals() {
        let mut t = DimTable::new("x", &["s", "t", "u"]);
        t.insert(vec![0, 1, 2], 3, true);
        t.insert(vec![0, 2, 2], 4, true);
        t.insert(vec![1, 0, 1], 1, false);
        let m = t.marginal(&[0, 2]);
        assert_eq!(m.get(&[0, 2]), Some(7));
        assert_eq!(m.row_totals(), vec![7, 1]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<DimTable>(&json).unwrap(), t);
    }
}
