//! Spectral sequences of filtered (co)chain complexes.
//!
//! Pages come from the persistence pairing of each slice (see
//! [`crate::homology::Engine`]): a pair whose ends sit in filtration
//! degrees `t` and `t ∓ r` is a nonzero `d_r`, and an element survives to
//! `E_r` exactly when it is unpaired or its pair has length at least `r`.
//!
//! Conventions: cochain `d_r: (s, t, u) → (s+1, t−r, u)`, chain
//! `d_r: (s, t, u) → (s−1, t+r, u)`, where `t` is the total filtration value
//! of a tuple.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras::{builtin, AlgebraError, StructuredBialgebra};
use crate::complexes::{
    cochain_product, BigradedComplex, Coefficients, Cochain, ComplexError, Direction, FilteredComplex, Normalization,
};
use crate::f2linalg::{subquotient_dim, BitMatrix, BitVector, LinalgError, SparseColumns, Subspace};
use crate::filtrations::{
    abelianizing_filtration, associated_graded, may_filtration, transport_to_graded, FiltrationError,
};
use crate::homology::{graded_homology_dims, DimTable, Engine, HomologyError};

#[derive(Debug, Error)]
pub enum SpecSeqError {
    #[error("r_max must be at least 1")]
    RMax,
    #[error("representative is not homogeneous")]
    NotHomogeneous,
    #[error("representative does not survive to page {0}")]
    NotACycle(u32),
    #[error("probes need a cochain complex")]
    ChainProbe,
    #[error("class {0} is not a cocycle of the associated graded complex")]
    NotGradedCocycle(String),
    #[error("class {name} has tridegree {got:?}, registered as {expected:?}")]
    Tridegree { name: String, got: (u32, u32, u32), expected: (u32, u32, u32) },
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Tridegree = (u32, u32, u32);

/// Per tridegree: pair lengths with the number of pairs whose `d_r`-source
/// (first) or `d_r`-target (second) lies there.
type Ends = BTreeMap<Tridegree, BTreeMap<u32, (usize, usize)>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralPages {
    pub label: String,
    pub direction: Direction,
    pub s_max: usize,
    pub r_max: u32,
    /// `E_0` dimensions by `(s, t, u)`.
    pub e0: DimTable,
    ends: Ends,
}

impl SpectralPages {
    fn lost_before(&self, r: u32, d: Tridegree) -> usize {
        self.ends
            .get(&d)
            .map(|m| m.range(..r).map(|(_, (a, b))| a + b).sum())
            .unwrap_or(0)
    }

    pub fn dim(&self, r: u32, d: Tridegree) -> usize {
        self.e0.dim(&[d.0, d.1, d.2]) - self.lost_before(r, d)
    }

    /// Rank of `d_r` out of `d`.
    pub fn rank_out(&self, r: u32, d: Tridegree) -> usize {
        self.ends.get(&d).and_then(|m| m.get(&r)).map_or(0, |x| x.0)
    }

    /// Rank of `d_r` into `d`.
    pub fn rank_in(&self, r: u32, d: Tridegree) -> usize {
        self.ends.get(&d).and_then(|m| m.get(&r)).map_or(0, |x| x.1)
    }

    /// Target tridegree of `d_r` from `d`, if it has one.
    pub fn target(&self, r: u32, d: Tridegree) -> Option<Tridegree> {
        match self.direction {
            Direction::Cochain => d.1.checked_sub(r).map(|t| (d.0 + 1, t, d.2)),
            Direction::Chain => d.0.checked_sub(1).map(|s| (s, d.1 + r, d.2)),
        }
    }

    pub fn tridegrees(&self) -> impl Iterator<Item = Tridegree> + '_ {
        self.e0.entries.iter().map(|e| (e.degree[0], e.degree[1], e.degree[2]))
    }

    pub fn page(&self, r: u32) -> DimTable {
        let mut t = DimTable::new(&format!("{} E_{r}", self.label), &["s", "t", "u"]);
        for d in self.tridegrees() {
            t.insert(vec![d.0, d.1, d.2], self.dim(r, d), true);
        }
        t.n_max = Some(self.s_max);
        t
    }

    pub fn e_infinity(&self) -> DimTable {
        let mut t = self.page(self.r_max);
        t.label = format!("{} E_inf", self.label);
        t
    }

    /// `Σ_{t,u} dim E_r^{s,t,u}` for each `s`.
    pub fn row_totals(&self, r: u32) -> Vec<usize> {
        (0..=self.s_max as u32)
            .map(|s| self.tridegrees().filter(|d| d.0 == s).map(|d| self.dim(r, d)).sum())
            .collect()
    }

    /// Total rank of `d_r` out of row `s`.
    pub fn differential_rank(&self, r: u32, s: u32) -> usize {
        self.tridegrees().filter(|d| d.0 == s).map(|d| self.rank_out(r, d)).sum()
    }

    /// Longest differential seen.
    pub fn max_length(&self) -> u32 {
        self.ends.values().flat_map(|m| m.keys().copied()).max().unwrap_or(0)
    }

    /// Nonzero differentials `(r, source, target, rank)` on pages `≥ 1`.
    pub fn differentials(&self) -> Vec<(u32, Tridegree, Tridegree, usize)> {
        let mut out = Vec::new();
        for (&d, m) in &self.ends {
            for (&r, &(src, _)) in m {
                if r >= 1 && src > 0 {
                    if let Some(t) = self.target(r, d) {
                        out.push((r, d, t, src));
                    }
                }
            }
        }
        out
    }
}

/// Pages `E_0 … E_{r_max}` for `s ≤ s_max`. Without `r_max`, one more than
/// the largest filtration value present, which is past every differential.
pub fn pages(fcx: &FilteredComplex, s_max: usize, r_max: Option<u32>) -> Result<SpectralPages, SpecSeqError> {
    pages_with(&Engine::default(), fcx, s_max, r_max)
}

pub fn pages_with(
    engine: &Engine,
    fcx: &FilteredComplex,
    s_max: usize,
    r_max: Option<u32>,
) -> Result<SpectralPages, SpecSeqError> {
    if r_max == Some(0) {
        return Err(SpecSeqError::RMax);
    }
    let cx = &*fcx.complex;
    let dir = cx.direction();
    let values = fcx.values.as_slice();
    let us: Vec<u32> = cx.u_range(s_max + 1).collect();
    type SliceOut = (Vec<(Tridegree, usize)>, Vec<(Tridegree, u32, bool)>);
    let per_u: Vec<SliceOut> = us
        .par_iter()
        .map(|&u| {
            let mut e0 = Vec::new();
            let mut ends = Vec::new();
            let mut orders = Vec::new();
            for k in 0..=s_max + 1 {
                orders.push(Engine::slice_order(cx, Some(values), k, u));
            }
            for (k, o) in orders.iter().enumerate().take(s_max + 1) {
                let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
                for &key in &o.keys {
                    *counts.entry((-key) as u32).or_default() += 1;
                }
                e0.extend(counts.into_iter().map(|(t, c)| ((k as u32, t, u), c)));
            }
            for k in 0..=s_max {
                let pairs = engine.pairs(cx, Some(values), k, u);
                for &(c, r) in pairs.iter() {
                    let tc = (-orders[k].keys[c as usize]) as u32;
                    let tr = (-orders[k + 1].keys[r as usize]) as u32;
                    let len = tc - tr;
                    let (k0, k1) = (k as u32, k as u32 + 1);
                    // (tridegree, length, is the d_r source)
                    match dir {
                        Direction::Cochain => {
                            ends.push(((k0, tc, u), len, true));
                            ends.push(((k1, tr, u), len, false));
                        }
                        Direction::Chain => {
                            ends.push(((k1, tr, u), len, true));
                            ends.push(((k0, tc, u), len, false));
                        }
                    }
                }
            }
            (e0, ends)
        })
        .collect();
    let mut table = DimTable::new(&format!("{} E_0", fcx.name), &["s", "t", "u"]);
    let mut ends: Ends = BTreeMap::new();
    let mut max_t = 0;
    for (e0, es) in per_u {
        for (d, c) in e0 {
            max_t = max_t.max(d.1);
            table.insert(vec![d.0, d.1, d.2], c, true);
        }
        for (d, len, src) in es {
            if d.0 as usize > s_max {
                continue;
            }
            let slot = ends.entry(d).or_default().entry(len).or_insert((0, 0));
            if src {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    table.n_max = Some(s_max);
    Ok(SpectralPages {
        label: fcx.name.clone(),
        direction: dir,
        s_max,
        r_max: r_max.unwrap_or(max_t + 1),
        e0: table,
        ends,
    })
}

/// `dim E_r^{s,t,u}` straight from the subquotient formula
/// `Z_r / (Z_{r−1}^{+1} + δZ_{r−1})` with dense subspaces. Slow; for checks.
pub fn page_dim_from_subspaces(fcx: &FilteredComplex, r: u32, d: Tridegree) -> Result<usize, SpecSeqError> {
    if r == 0 {
        return Err(SpecSeqError::RMax);
    }
    let cx = &*fcx.complex;
    let (s, t, u) = (d.0 as usize, d.1 as i64, d.2);
    let keys = |k: usize| Engine::slice_order(cx, Some(&fcx.values), k, u).keys;
    let p = -t;
    let r = r as i64;
    let ks = keys(s);
    let ks1 = keys(s + 1);
    let delta = cx.coboundary(s, u).to_dense();
    // Z_r^q in degree k: x ∈ F^q with δx ∈ F^{q+r}
    let z = |q: i64, rr: i64, k_keys: &[i64], next_keys: &[i64], m: &BitMatrix| -> Subspace {
        let cols: Vec<usize> = (0..k_keys.len()).filter(|&i| k_keys[i] >= q).collect();
        let rows: Vec<usize> = (0..next_keys.len()).filter(|&i| next_keys[i] < q + rr).collect();
        let local = BitMatrix::from_fn(rows.len(), cols.len(), |a, b| m.get(rows[a], cols[b]));
        let ker = local.kernel_basis();
        let vs: Vec<BitVector> = ker
            .basis()
            .iter()
            .map(|v| BitVector::from_indices(k_keys.len(), v.ones().map(|j| cols[j])))
            .collect();
        Subspace::span(k_keys.len(), &vs)
    };
    let zr = z(p, r, &ks, &ks1, &delta);
    let zr1 = z(p + 1, r - 1, &ks, &ks1, &delta);
    let boundaries = if s == 0 {
        Subspace::zero(ks.len())
    } else {
        let km = keys(s - 1);
        let prev = cx.coboundary(s - 1, u).to_dense();
        let zprev = z(p - r + 1, r - 1, &km, &ks, &prev);
        zprev.image_under(&prev.transpose())
    };
    let w = zr1.sum(&boundaries)?;
    Ok(subquotient_dim(&zr, &w)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct E1Report {
    /// `(s, t, u, dim E_1, dim H(E_0))` where they differ.
    pub mismatches: Vec<(u32, u32, u32, usize, usize)>,
    pub compared: usize,
}

impl E1Report {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `E_1` with the weight-graded homology of the associated graded
/// complex, computed independently.
pub fn e1_check(p: &SpectralPages, e0: &BigradedComplex, weights: &[u32]) -> Result<E1Report, SpecSeqError> {
    let h = graded_homology_dims(e0, weights)?;
    let mut keys: Vec<Vec<u32>> = p.e0.entries.iter().map(|e| e.degree.clone()).collect();
    keys.extend(h.entries.iter().filter(|e| e.degree[0] as usize <= p.s_max).map(|e| e.degree.clone()));
    keys.sort();
    keys.dedup();
    let mut mismatches = Vec::new();
    for k in &keys {
        let a = p.dim(1, (k[0], k[1], k[2]));
        let b = h.dim(k);
        if a != b {
            mismatches.push((k[0], k[1], k[2], a, b));
        }
    }
    Ok(E1Report { mismatches, compared: keys.len() })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// `(s, u, Σ_t dim E_∞, dim of abutment)` where they differ.
    pub mismatches: Vec<(u32, u32, usize, usize)>,
    pub compared: usize,
    /// Longest differential, which must be shorter than `r_max`.
    pub max_length: u32,
    pub r_max: u32,
}

impl ConvergenceReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.max_length < self.r_max
    }
}

pub fn convergence_check(p: &SpectralPages, abutment: &DimTable) -> ConvergenceReport {
    let einf = p.e_infinity().marginal(&[0, 2]);
    let mut keys: Vec<Vec<u32>> = einf.entries.iter().map(|e| e.degree.clone()).collect();
    keys.extend(abutment.entries.iter().filter(|e| e.degree[0] as usize <= p.s_max).map(|e| e.degree.clone()));
    keys.sort();
    keys.dedup();
    let mismatches = keys
        .iter()
        .filter_map(|k| {
            let (a, b) = (einf.dim(k), abutment.dim(k));
            (a != b).then_some((k[0], k[1], a, b))
        })
        .collect();
    ConvergenceReport { mismatches, compared: keys.len(), max_length: p.max_length(), r_max: p.r_max }
}

/// A named cocycle of the associated graded complex.
#[derive(Clone, Debug)]
pub struct RegisteredClass {
    pub name: String,
    pub tridegree: Tridegree,
    pub cochain: Cochain,
}

/// Named generators of `E_1`, used to describe probe results. Products
/// are formed with the cochain product of the associated graded complex.
#[derive(Clone, Debug)]
pub struct ClassRegistry {
    pub e0: Arc<BigradedComplex>,
    pub weights: Vec<u32>,
    pub generators: Vec<RegisteredClass>,
}

impl ClassRegistry {
    pub fn new(e0: Arc<BigradedComplex>, weights: Vec<u32>) -> Self {
        ClassRegistry { e0, weights, generators: Vec::new() }
    }

    fn tridegree_of(&self, c: &Cochain) -> Result<Tridegree, SpecSeqError> {
        let mut it = c.codes.iter().map(|&x| {
            let digits = self.e0.decode(x, c.degree);
            let t: u32 = digits.iter().map(|&i| self.weights[i as usize]).sum();
            (t, self.e0.code_degree(x, c.degree))
        });
        let first = it.next().ok_or(SpecSeqError::NotHomogeneous)?;
        if it.any(|x| x != first) {
            return Err(SpecSeqError::NotHomogeneous);
        }
        Ok((c.degree as u32, first.0, first.1))
    }

    pub fn register(&mut self, name: &str, expected: Tridegree, cochain: Cochain) -> Result<(), SpecSeqError> {
        let got = self.tridegree_of(&cochain)?;
        if got != expected {
            return Err(SpecSeqError::Tridegree { name: name.into(), got, expected });
        }
        if !self.e0.apply_differential(&cochain).is_zero() {
            return Err(SpecSeqError::NotGradedCocycle(name.into()));
        }
        self.generators.push(RegisteredClass { name: name.into(), tridegree: expected, cochain });
        Ok(())
    }

    /// Registers the one-term cochain with the given basis indices.
    pub fn register_tuple(&mut self, name: &str, expected: Tridegree, digits: &[u32]) -> Result<(), SpecSeqError> {
        let n = match self.e0.coefficients() {
            Coefficients::SelfCoefficients => digits.len() - 1,
            Coefficients::Ground => digits.len(),
        };
        let c = Cochain { degree: n, codes: vec![self.e0.encode(digits)] };
        self.register(name, expected, c)
    }

    pub fn get(&self, name: &str) -> Option<&RegisteredClass> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Product of generators, e.g. `["x10", "h11"]`; repeats allowed.
    pub fn product(&self, names: &[&str]) -> Result<Cochain, SpecSeqError> {
        let mut acc: Option<Cochain> = None;
        for n in names {
            let g = self.get(n).ok_or_else(|| SpecSeqError::UnknownClass(n.to_string()))?;
            acc = Some(match acc {
                None => g.cochain.clone(),
                Some(a) => cochain_product(&self.e0, &a, &g.cochain)?,
            });
        }
        acc.ok_or_else(|| SpecSeqError::UnknownClass(String::new()))
    }

    /// Monomials in the generators of the given tridegree, with names like
    /// `x10^2 h10`. Fewer `s = 0` factors first.
    pub fn monomials(&self, d: Tridegree) -> Result<Vec<(String, Cochain)>, SpecSeqError> {
        let gens = &self.generators;
        let mut out: Vec<(Vec<u32>, String)> = Vec::new();
        fn rec(gens: &[RegisteredClass], i: usize, left: Tridegree, e: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, String)>) {
            if i == gens.len() {
                if left == (0, 0, 0) {
                    let name = gens
                        .iter()
                        .zip(e.iter())
                        .filter(|(_, &k)| k > 0)
                        .map(|(g, &k)| if k == 1 { g.name.clone() } else { format!("{}^{k}", g.name) })
                        .collect::<Vec<_>>()
                        .join(" ");
                    out.push((e.clone(), name));
                }
                return;
            }
            let (s, t, u) = gens[i].tridegree;
            let mut k = 0;
            let mut l = left;
            loop {
                e.push(k);
                rec(gens, i + 1, l, e, out);
                e.pop();
                if (s, t, u) == (0, 0, 0) || l.0 < s || l.1 < t || l.2 < u {
                    break;
                }
                l = (l.0 - s, l.1 - t, l.2 - u);
                k += 1;
            }
        }
        rec(gens, 0, d, &mut Vec::new(), &mut out);
        let x_count = |e: &[u32]| -> u32 { gens.iter().zip(e).filter(|(g, _)| g.tridegree.0 == 0).map(|(_, &k)| k).sum() };
        out.sort_by_key(|(e, name)| (x_count(e), name.clone()));
        let mut res = Vec::new();
        for (e, name) in out {
            let names: Vec<&str> = gens
                .iter()
                .zip(&e)
                .flat_map(|(g, &k)| std::iter::repeat(g.name.as_str()).take(k as usize))
                .collect();
            res.push((name, self.product(&names)?));
        }
        Ok(res)
    }

    /// The standard classes of the cobar complex of `Ë_0(A(1)_*)`-like
    /// coalgebras, on basis indices `ξ_{1,0} = 1`, `ξ_{1,1} = 2`, `ξ_{2,0} = 4`.
    pub fn a1_standard(e0: Arc<BigradedComplex>, weights: Vec<u32>) -> Result<Self, SpecSeqError> {
        let mut reg = ClassRegistry::new(e0, weights);
        reg.register_tuple("x10", (0, 1, 1), &[1])?;
        reg.register_tuple("x20", (0, 4, 3), &[4])?;
        reg.register_tuple("h10", (1, 1, 1), &[0, 1])?;
        reg.register_tuple("h11", (1, 2, 2), &[0, 2])?;
        reg.register_tuple("h20", (1, 4, 3), &[0, 4])?;
        Ok(reg)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeResult {
    pub r: u32,
    pub source: Tridegree,
    pub target: Tridegree,
    /// `d_r` of the class, as a cochain (before reduction by boundaries).
    pub raw: String,
    pub is_zero: bool,
    /// Combination of registered monomials, when one matches.
    pub expression: Option<String>,
}

fn local_matrix(delta: &SparseColumns, rows: &[usize], cols: &[usize], nrows: usize) -> BitMatrix {
    let mut pos = vec![usize::MAX; nrows];
    for (i, &r) in rows.iter().enumerate() {
        pos[r] = i;
    }
    let mut m = BitMatrix::zeros(rows.len(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for &r in delta.col(c) {
            if pos[r as usize] != usize::MAX {
                m.set(pos[r as usize], j, true);
            }
        }
    }
    m
}

/// The lifted differential of one class, in the coordinates of the
/// target slice restricted to filtration value `t − r`.
struct ProbeCore {
    source: Tridegree,
    target: Tridegree,
    raw: Cochain,
    z: BitVector,
    /// Images of `d_0 … d_{r−1}` in the same coordinates.
    bound: Subspace,
    /// Tuple code → coordinate.
    pos: HashMap<u64, usize>,
}

impl ProbeCore {
    fn vector(&self, c: &Cochain) -> Option<BitVector> {
        let ix = c.codes.iter().map(|x| self.pos.get(x).copied()).collect::<Option<Vec<usize>>>()?;
        Some(BitVector::from_indices(self.z.len(), ix))
    }
}

fn probe_core(fcx: &FilteredComplex, rep: &Cochain, r: u32) -> Result<ProbeCore, SpecSeqError> {
    let cx = &*fcx.complex;
    if cx.direction() != Direction::Cochain {
        return Err(SpecSeqError::ChainProbe);
    }
    if r == 0 {
        return Err(SpecSeqError::RMax);
    }
    let s = rep.degree;
    let (t, u) = {
        let mut it = rep.codes.iter().map(|&c| (fcx.value(c, s), cx.code_degree(c, s)));
        let first = it.next().ok_or(SpecSeqError::NotHomogeneous)?;
        if it.any(|x| x != first) {
            return Err(SpecSeqError::NotHomogeneous);
        }
        first
    };
    if t < r {
        return Err(SpecSeqError::NotACycle(r));
    }
    let src = cx.slice(s, u);
    let tgt = cx.slice(s + 1, u);
    let sv: Vec<u32> = src.codes.iter().map(|&c| fcx.value(c, s)).collect();
    let tv: Vec<u32> = tgt.codes.iter().map(|&c| fcx.value(c, s + 1)).collect();
    let delta = cx.boundary(s, u);
    let y = BitVector::from_indices(src.len(), rep.codes.iter().map(|&c| src.index_of(c).expect("code in slice")));
    let dy = delta.apply(&y);
    let lo = t - r;
    // correction w in values [t−r+1, t−1] cancelling dy above t−r
    let w_cols: Vec<usize> = (0..src.len()).filter(|&i| sv[i] > lo && sv[i] < t).collect();
    let hi_rows: Vec<usize> = (0..tgt.len()).filter(|&i| tv[i] > lo).collect();
    let a = local_matrix(&delta, &hi_rows, &w_cols, tgt.len());
    let b = BitVector::from_indices(hi_rows.len(), hi_rows.iter().enumerate().filter(|(_, &i)| dy.get(i)).map(|(j, _)| j));
    let x = a.solve(&b).ok_or(SpecSeqError::NotACycle(r))?;
    let mut lifted = y;
    for j in x.ones() {
        lifted.flip(w_cols[j]);
    }
    let dl = delta.apply(&lifted);
    let lo_rows: Vec<usize> = (0..tgt.len()).filter(|&i| tv[i] == lo).collect();
    let z = BitVector::from_indices(lo_rows.len(), lo_rows.iter().enumerate().filter(|(_, &i)| dl.get(i)).map(|(j, _)| j));
    let raw = Cochain { degree: s + 1, codes: lo_rows.iter().filter(|&&i| dl.get(i)).map(|&i| tgt.codes[i]).collect() };
    // v of value in [t−r, t−1] whose dv vanishes above t−r
    let v_cols: Vec<usize> = (0..src.len()).filter(|&i| sv[i] >= lo && sv[i] < t).collect();
    let ker = local_matrix(&delta, &hi_rows, &v_cols, tgt.len()).kernel_basis();
    let proj = local_matrix(&delta, &lo_rows, &v_cols, tgt.len());
    let bound = Subspace::span(lo_rows.len(), &ker.basis().iter().map(|k| proj.mul_vec(k)).collect::<Vec<_>>());
    let pos = lo_rows.iter().enumerate().map(|(j, &i)| (tgt.codes[i], j)).collect();
    Ok(ProbeCore { source: (s as u32, t, u), target: (s as u32 + 1, lo, u), raw, z, bound, pos })
}

/// Lift, apply `d`, project: `d_r` of the class of `rep`, a cocycle of the
/// associated graded complex of a filtered cochain complex.
pub fn probe_differential(
    fcx: &FilteredComplex,
    rep: &Cochain,
    r: u32,
    registry: Option<&ClassRegistry>,
) -> Result<ProbeResult, SpecSeqError> {
    let core = probe_core(fcx, rep, r)?;
    let is_zero = core.bound.contains(&core.z);
    let mut expression = None;
    if is_zero {
        expression = Some("0".into());
    } else if let Some(reg) = registry {
        let n = core.z.len();
        let mut span = core.bound.clone();
        let mut chosen: Vec<(String, BitVector)> = Vec::new();
        for (name, c) in reg.monomials(core.target)? {
            let Some(v) = core.vector(&c) else { continue };
            let red = core.bound.reduce(&v);
            if !span.contains(&red) {
                span = Subspace::span(n, &[span.basis(), vec![red.clone()]].concat());
                chosen.push((name, red));
            }
        }
        if !chosen.is_empty() {
            let cols: Vec<BitVector> = chosen.iter().map(|c| c.1.clone()).collect();
            let m = BitMatrix::from_rows(n, &cols).transpose();
            if let Some(coef) = m.solve(&core.bound.reduce(&core.z)) {
                expression = Some(coef.ones().map(|j| chosen[j].0.clone()).collect::<Vec<_>>().join(" + "));
            }
        }
    }
    Ok(ProbeResult {
        r,
        source: core.source,
        target: core.target,
        raw: fcx.complex.format_element(&core.raw),
        is_zero,
        expression,
    })
}

/// Whether `d_r` of the class of `rep` equals the given sum of products of
/// registered classes, modulo the images of earlier differentials.
pub fn probe_equals(
    fcx: &FilteredComplex,
    rep: &Cochain,
    r: u32,
    registry: &ClassRegistry,
    expected: &[&[&str]],
) -> Result<bool, SpecSeqError> {
    let core = probe_core(fcx, rep, r)?;
    let mut sum = core.z.clone();
    for mono in expected {
        match core.vector(&registry.product(mono)?) {
            Some(v) => sum.xor_assign(&v),
            None => return Ok(false),
        }
    }
    Ok(core.bound.contains(&sum))
}

/// The four spectral sequences computed on the cobar side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// Abelianizing filtration on `coCH(A(1)_*)`; `E_1 = coHH(Ë_0)`.
    Abelianizing,
    /// May filtration on `coCH(A(1)_*)`; `E_1 = coHH(Ė_0)`.
    HhMay,
    /// May filtration on the cobar complex with ground coefficients; the classical May spectral sequence.
    HhMayGround,
    /// Abelianizing filtration transported to `coCH(Ė_0)`.
    AbelianizingToMay,
}

impl SequenceKind {
    pub fn all() -> [SequenceKind; 4] {
        [SequenceKind::Abelianizing, SequenceKind::HhMay, SequenceKind::HhMayGround, SequenceKind::AbelianizingToMay]
    }

    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::Abelianizing => "abelianizing",
            SequenceKind::HhMay => "hh-may",
            SequenceKind::HhMayGround => "hh-may-ground",
            SequenceKind::AbelianizingToMay => "abelianizing-to-may",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::all().into_iter().find(|k| k.name() == s)
    }
}

/// A configured spectral sequence: the filtered complex, and the
/// associated graded complex with its weights.
#[derive(Clone, Debug)]
pub struct Sequence {
    pub kind: SequenceKind,
    pub filtered: FilteredComplex,
    pub e0: Arc<BigradedComplex>,
    pub weights: Vec<u32>,
}

fn same_structure(a: &StructuredBialgebra, b: &StructuredBialgebra) -> bool {
    let (x, y) = (a.description(), b.description());
    x.degrees == y.degrees && x.mult == y.mult && x.comult == y.comult && x.unit == y.unit && x.counit == y.counit
}

/// Adopts the basis names of the first builtin with identical structure
/// constants, so that printed cochains read `xi1 ⊗ xi1^2`.
fn nicely_named(c: StructuredBialgebra, candidates: &[&str], name: &str) -> StructuredBialgebra {
    for b in candidates {
        if let Ok(like) = builtin(b) {
            if same_structure(&c, &like) {
                return c.with_basis_names(like.basis_names().to_vec()).expect("same dimension").with_name(name);
            }
        }
    }
    c.with_name(name)
}

const DUAL_BUILTINS: [&str; 3] = ["a1_dual", "e0may_dual", "e0ab_dual"];

impl Sequence {
    /// A spectral sequence on the cobar side of the algebra `a`. The
    /// abelianizing kinds exist only for A(1).
    pub fn new(
        a: Arc<StructuredBialgebra>,
        kind: SequenceKind,
        s_max: usize,
        normalization: Normalization,
    ) -> Result<Self, SpecSeqError> {
        let coeff = match kind {
            SequenceKind::HhMayGround => Coefficients::Ground,
            _ => Coefficients::SelfCoefficients,
        };
        let (filtration, dual_name) = match kind {
            SequenceKind::Abelianizing => (abelianizing_filtration(a.clone())?, format!("{}_dual", a.name())),
            SequenceKind::HhMay | SequenceKind::HhMayGround => (may_filtration(a.clone())?, format!("{}_dual", a.name())),
            SequenceKind::AbelianizingToMay => {
                let may = associated_graded(&may_filtration(a.clone())?)?;
                let ab = abelianizing_filtration(a.clone())?;
                (transport_to_graded(&ab, &may)?, "e0may_dual".to_string())
            }
        };
        let ad = filtration.adapted()?;
        let gr = associated_graded(&filtration)?;
        let coalgebra = nicely_named(ad.algebra.dualize(), &DUAL_BUILTINS, &dual_name);
        let mut gr_dual = nicely_named(gr.graded.dualize(), &DUAL_BUILTINS, &format!("gr {}", coalgebra.name()));
        if kind == SequenceKind::AbelianizingToMay && gr_dual.degrees() == coalgebra.degrees() {
            // same monomial indexing as Ė_0, different coproduct
            gr_dual = gr_dual.with_basis_names(coalgebra.basis_names().to_vec())?;
        }
        let cx = BigradedComplex::new(Arc::new(coalgebra), Direction::Cochain, coeff, normalization, s_max, None)?;
        let e0 = BigradedComplex::new(Arc::new(gr_dual), Direction::Cochain, coeff, normalization, s_max, None)?;
        Ok(Sequence {
            kind,
            filtered: FilteredComplex { complex: Arc::new(cx), values: ad.values.clone(), name: kind.name().into() },
            e0: Arc::new(e0),
            weights: ad.values,
        })
    }

    pub fn a1(kind: SequenceKind, s_max: usize, normalization: Normalization) -> Result<Self, SpecSeqError> {
        Self::new(Arc::new(builtin("a1")?), kind, s_max, normalization)
    }

    pub fn pages(&self, r_max: Option<u32>) -> Result<SpectralPages, SpecSeqError> {
        pages(&self.filtered, self.filtered.complex.n_max(), r_max)
    }

    pub fn e1_check(&self, p: &SpectralPages) -> Result<E1Report, SpecSeqError> {
        e1_check(p, &self.e0, &self.weights)
    }

    /// Homology of the unfiltered complex.
    pub fn abutment(&self) -> DimTable {
        Engine::default().homology_dims(&self.filtered.complex)
    }

    /// Named classes, for the self-coefficient sequences.
    pub fn registry(&self) -> Result<ClassRegistry, SpecSeqError> {
        ClassRegistry::a1_standard(self.e0.clone(), self.weights.clone())
    }
}
