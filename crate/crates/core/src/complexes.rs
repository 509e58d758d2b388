//! Cyclic bar and cyclic cobar complexes, sliced by homological degree and
//! internal degree.
//!
//! A basis element of degree `n` is a tuple of algebra basis indices,
//! encoded as the integer `Σ i_p · dim^p`. With coefficients in the algebra
//! itself, position 0 holds the coefficient and the tuple has `n + 1`
//! entries; with ground coefficients it has `n` entries. Every face
//! preserves the total internal degree `u`, so the complex splits into
//! slices `(n, u)` that are built lazily and cached.
//!
//! Chain faces on `a_0[a_1|...|a_n]` multiply neighbours, the last one
//! cyclically (`a_n a_0[a_1|...|a_{n-1}]`). Cobar cofaces apply the
//! coproduct in place, and the last one is `τ(Δ(c_0) ⊗ c_1 ⊗ ... ⊗ c_n)`
//! with `τ` moving the first factor to the end. The cobar complex of a
//! coalgebra is the transpose of the bar complex of its dual.
//!
//! The normalized variant discards tuples with the unit in a bar position:
//! a quotient complex on the chain side and a subcomplex on the cochain
//! side, quasi-isomorphic to the full complex in both cases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras::StructuredBialgebra;
use crate::f2linalg::SparseColumns;
use crate::filtrations::AdaptedFiltration;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the {0} complex needs a {1} structure")]
    MissingStructure(&'static str, &'static str),
    #[error("normalization needs the unit to be a basis vector")]
    NotNormalizable,
    #[error("tuple codes overflow for dimension {dim} and {factors} factors")]
    TooLarge { dim: usize, factors: usize },
    #[error("filtration was built on a different algebra")]
    AlgebraMismatch,
    #[error("cochain of degree {got} where degree {expected} was expected")]
    Degree { got: usize, expected: usize },
    #[error("unknown basis name {0}")]
    UnknownName(String),
    #[error("products are only defined on cyclic cobar complexes with algebra coefficients")]
    NoProduct,
    #[error("product left the normalized subcomplex")]
    NotNormalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Chain,
    Cochain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[serde(rename = "self")]
    SelfCoefficients,
    Ground,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Full,
    Normalized,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Chain => "chain",
            Direction::Cochain => "cochain",
        })
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::SelfCoefficients => "self",
            Coefficients::Ground => "ground",
        })
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Full => "full",
            Normalization::Normalized => "normalized",
        })
    }
}

/// Sorted tuple codes of one `(n, u)` slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceBasis {
    pub n: usize,
    pub u: u32,
    pub codes: Vec<u64>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }
}

pub struct BigradedComplex {
    algebra: Arc<StructuredBialgebra>,
    direction: Direction,
    coefficients: Coefficients,
    normalization: Normalization,
    n_max: usize,
    u_max: Option<u32>,
    /// Basis index left out of bar positions when normalized.
    excluded: Option<usize>,
    slices: Mutex<HashMap<(usize, u32), Arc<SliceBasis>>>,
}

impl fmt::Debug for BigradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BigradedComplex")
            .field("algebra", &self.algebra.name())
            .field("direction", &self.direction)
            .field("coefficients", &self.coefficients)
            .field("normalization", &self.normalization)
            .field("n_max", &self.n_max)
            .field("u_max", &self.u_max)
            .finish()
    }
}

/// Cyclic bar complex `CH_*(A, A)`, or the bar complex with ground coefficients.
pub fn bar_complex(
    a: Arc<StructuredBialgebra>,
    coefficients: Coefficients,
    n_max: usize,
    u_max: Option<u32>,
) -> Result<BigradedComplex, ComplexError> {
    BigradedComplex::new(a, Direction::Chain, coefficients, Normalization::Full, n_max, u_max)
}

/// Cyclic cobar complex `coCH^*(C, C)`, or the cobar complex with ground coefficients.
pub fn cobar_complex(
    c: Arc<StructuredBialgebra>,
    coefficients: Coefficients,
    n_max: usize,
    u_max: Option<u32>,
) -> Result<BigradedComplex, ComplexError> {
    BigradedComplex::new(c, Direction::Cochain, coefficients, Normalization::Full, n_max, u_max)
}

impl BigradedComplex {
    pub fn new(
        algebra: Arc<StructuredBialgebra>,
        direction: Direction,
        coefficients: Coefficients,
        normalization: Normalization,
        n_max: usize,
        u_max: Option<u32>,
    ) -> Result<Self, ComplexError> {
        match direction {
            Direction::Chain => {
                if !algebra.has_algebra() {
                    return Err(ComplexError::MissingStructure("bar", "product"));
                }
                if coefficients == Coefficients::Ground && algebra.counit().is_none() {
                    return Err(ComplexError::MissingStructure("bar", "counit"));
                }
            }
            Direction::Cochain => {
                if !algebra.has_coalgebra() {
                    return Err(ComplexError::MissingStructure("cobar", "coproduct"));
                }
                if coefficients == Coefficients::Ground && algebra.unit().is_none() {
                    return Err(ComplexError::MissingStructure("cobar", "unit"));
                }
            }
        }
        let excluded = match (normalization, direction) {
            (Normalization::Full, _) => None,
            (Normalization::Normalized, Direction::Chain) => {
                Some(algebra.unit_index().ok_or(ComplexError::NotNormalizable)?)
            }
            (Normalization::Normalized, Direction::Cochain) => {
                Some(algebra.counit_index().ok_or(ComplexError::NotNormalizable)?)
            }
        };
        let cx = BigradedComplex {
            algebra,
            direction,
            coefficients,
            normalization,
            n_max,
            u_max,
            excluded,
            slices: Mutex::new(HashMap::new()),
        };
        // codes for one degree past n_max must fit
        let factors = cx.factors(n_max + 1);
        let dim = cx.algebra.dim();
        if (dim as f64).powi(factors as i32) >= 2f64.powi(63) {
            return Err(ComplexError::TooLarge { dim, factors });
        }
        Ok(cx)
    }

    pub fn normalized(self) -> Result<Self, ComplexError> {
        Self::new(self.algebra, self.direction, self.coefficients, Normalization::Normalized, self.n_max, self.u_max)
    }

    pub fn with_normalization(self, normalization: Normalization) -> Result<Self, ComplexError> {
        Self::new(self.algebra, self.direction, self.coefficients, normalization, self.n_max, self.u_max)
    }

    pub fn algebra(&self) -> &Arc<StructuredBialgebra> {
        &self.algebra
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Stable identifier for memoizing per-slice results.
    pub fn cache_tag(&self) -> String {
        format!(
            "{}/{}/{}/{}",
            self.algebra.fingerprint(),
            self.direction,
            self.coefficients,
            self.normalization
        )
    }

    /// Number of tensor factors in degree `n`.
    pub fn factors(&self, n: usize) -> usize {
        match self.coefficients {
            Coefficients::SelfCoefficients => n + 1,
            Coefficients::Ground => n,
        }
    }

    fn is_bar_position(&self, p: usize) -> bool {
        self.coefficients == Coefficients::Ground || p >= 1
    }

    /// Largest internal degree of a nonzero slice in degree `n`.
    pub fn top_u(&self, n: usize) -> u32 {
        let top = self.algebra.top_degree() * self.factors(n) as u32;
        self.u_max.map_or(top, |m| m.min(top))
    }

    pub fn u_range(&self, n: usize) -> std::ops::RangeInclusive<u32> {
        0..=self.top_u(n)
    }

    pub fn encode(&self, digits: &[u32]) -> u64 {
        let d = self.algebra.dim() as u64;
        digits.iter().rev().fold(0u64, |acc, &x| acc * d + x as u64)
    }

    pub fn decode(&self, mut code: u64, n: usize) -> Vec<u32> {
        let d = self.algebra.dim() as u64;
        (0..self.factors(n))
            .map(|_| {
                let x = (code % d) as u32;
                code /= d;
                x
            })
            .collect()
    }

    pub fn code_degree(&self, code: u64, n: usize) -> u32 {
        self.decode(code, n).iter().map(|&i| self.algebra.degree(i as usize)).sum()
    }

    /// Human-readable form of a basis tuple.
    pub fn format_code(&self, code: u64, n: usize) -> String {
        let names = self.algebra.basis_names();
        let digits = self.decode(code, n);
        let s = |i: &u32| names[*i as usize].clone();
        match (self.direction, self.coefficients) {
            (Direction::Chain, Coefficients::SelfCoefficients) => format!(
                "{}[{}]",
                s(&digits[0]),
                digits[1..].iter().map(s).collect::<Vec<_>>().join("|")
            ),
            (Direction::Chain, Coefficients::Ground) => {
                format!("[{}]", digits.iter().map(s).collect::<Vec<_>>().join("|"))
            }
            (Direction::Cochain, _) => {
                if digits.is_empty() {
                    "1".into()
                } else {
                    digits.iter().map(s).collect::<Vec<_>>().join(" ⊗ ")
                }
            }
        }
    }

    pub fn slice(&self, n: usize, u: u32) -> Arc<SliceBasis> {
        if let Some(s) = self.slices.lock().unwrap().get(&(n, u)) {
            return s.clone();
        }
        let s = Arc::new(self.enumerate(n, u));
        self.slices.lock().unwrap().insert((n, u), s.clone());
        s
    }

    pub fn slice_dim(&self, n: usize, u: u32) -> usize {
        self.slice(n, u).len()
    }

    /// Drops cached slice bases.
    pub fn clear_slices(&self) {
        self.slices.lock().unwrap().clear();
    }

    fn enumerate(&self, n: usize, u: u32) -> SliceBasis {
        let f = self.factors(n);
        let a = &self.algebra;
        let by_deg: Vec<(u32, Vec<u32>)> =
            a.indices_by_degree().into_iter().map(|(d, v)| (d, v.into_iter().map(|i| i as u32).collect())).collect();
        let top = a.top_degree();
        let mut codes = Vec::new();
        let mut digits = vec![0u32; f];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            cx: &BigradedComplex,
            by_deg: &[(u32, Vec<u32>)],
            top: u32,
            p: usize,
            left: u32,
            digits: &mut Vec<u32>,
            codes: &mut Vec<u64>,
        ) {
            let f = digits.len();
            if p == f {
                if left == 0 {
                    codes.push(cx.encode(digits));
                }
                return;
            }
            if left > top * (f - p) as u32 {
                return;
            }
            for (d, idx) in by_deg {
                if *d > left {
                    break;
                }
                for &i in idx {
                    if cx.is_bar_position(p) && cx.excluded == Some(i as usize) {
                        continue;
                    }
                    digits[p] = i;
                    rec(cx, by_deg, top, p + 1, left - d, digits, codes);
                }
            }
        }
        if f == 0 {
            if u == 0 {
                codes.push(0);
            }
        } else {
            rec(self, &by_deg, top, 0, u, &mut digits, &mut codes);
        }
        codes.sort_unstable();
        SliceBasis { n, u, codes }
    }

    /// Degree of the target of the natural differential out of degree `n`.
    pub fn target_degree(&self, n: usize) -> Option<usize> {
        match self.direction {
            Direction::Chain => n.checked_sub(1),
            Direction::Cochain => Some(n + 1),
        }
    }

    /// Terms of the differential of one basis tuple, before cancellation.
    fn push_terms(&self, digits: &[u32], out: &mut Vec<u64>) {
        let a = &*self.algebra;
        let f = digits.len();
        let mut buf: Vec<u32> = Vec::with_capacity(f + 1);
        match (self.direction, self.coefficients) {
            (Direction::Chain, Coefficients::SelfCoefficients) => {
                if f < 2 {
                    return;
                }
                // d_i for i < n: multiply positions i, i+1
                for i in 0..f - 1 {
                    for &k in a.mult_basis(digits[i] as usize, digits[i + 1] as usize) {
                        buf.clear();
                        buf.extend_from_slice(&digits[..i]);
                        buf.push(k);
                        buf.extend_from_slice(&digits[i + 2..]);
                        out.push(self.encode(&buf));
                    }
                }
                // d_n: a_n a_0 [a_1 | ... | a_{n-1}]
                for &k in a.mult_basis(digits[f - 1] as usize, digits[0] as usize) {
                    buf.clear();
                    buf.push(k);
                    buf.extend_from_slice(&digits[1..f - 1]);
                    out.push(self.encode(&buf));
                }
            }
            (Direction::Chain, Coefficients::Ground) => {
                if f == 0 {
                    return;
                }
                let counit = a.counit().unwrap();
                if counit.get(digits[0] as usize) {
                    out.push(self.encode(&digits[1..]));
                }
                for i in 0..f - 1 {
                    for &k in a.mult_basis(digits[i] as usize, digits[i + 1] as usize) {
                        buf.clear();
                        buf.extend_from_slice(&digits[..i]);
                        buf.push(k);
                        buf.extend_from_slice(&digits[i + 2..]);
                        out.push(self.encode(&buf));
                    }
                }
                if counit.get(digits[f - 1] as usize) {
                    out.push(self.encode(&digits[..f - 1]));
                }
            }
            (Direction::Cochain, Coefficients::SelfCoefficients) => {
                for i in 0..f {
                    for &(x, y) in a.comult_basis(digits[i] as usize) {
                        buf.clear();
                        buf.extend_from_slice(&digits[..i]);
                        buf.push(x);
                        buf.push(y);
                        buf.extend_from_slice(&digits[i + 1..]);
                        out.push(self.encode(&buf));
                    }
                }
                // τ(Δ(c_0) ⊗ c_1 ⊗ ... ⊗ c_n) = c_0'' ⊗ c_1 ⊗ ... ⊗ c_n ⊗ c_0'
                for &(x, y) in a.comult_basis(digits[0] as usize) {
                    buf.clear();
                    buf.push(y);
                    buf.extend_from_slice(&digits[1..]);
                    buf.push(x);
                    out.push(self.encode(&buf));
                }
            }
            (Direction::Cochain, Coefficients::Ground) => {
                let unit: Vec<u32> = a.unit().unwrap().ones().map(|i| i as u32).collect();
                for &e in &unit {
                    buf.clear();
                    buf.push(e);
                    buf.extend_from_slice(digits);
                    out.push(self.encode(&buf));
                }
                for i in 0..f {
                    for &(x, y) in a.comult_basis(digits[i] as usize) {
                        buf.clear();
                        buf.extend_from_slice(&digits[..i]);
                        buf.push(x);
                        buf.push(y);
                        buf.extend_from_slice(&digits[i + 1..]);
                        out.push(self.encode(&buf));
                    }
                }
                for &e in &unit {
                    buf.clear();
                    buf.extend_from_slice(digits);
                    buf.push(e);
                    out.push(self.encode(&buf));
                }
            }
        }
    }

    fn is_admissible(&self, code: u64, n: usize) -> bool {
        match self.excluded {
            None => true,
            Some(x) => {
                let digits = self.decode(code, n);
                !digits.iter().enumerate().any(|(p, &i)| self.is_bar_position(p) && i as usize == x)
            }
        }
    }

    /// Differential of one basis tuple as sorted target codes.
    pub fn differential_of(&self, code: u64, n: usize) -> Vec<u64> {
        let Some(t) = self.target_degree(n) else { return Vec::new() };
        let mut terms = Vec::new();
        self.push_terms(&self.decode(code, n), &mut terms);
        terms.sort_unstable();
        let mut out = cancel_sorted(terms);
        if self.excluded.is_some() {
            out.retain(|&c| self.is_admissible(c, t));
        }
        out
    }

    /// The natural differential out of slice `(n, u)`: columns index the
    /// source slice, rows the target slice.
    pub fn boundary(&self, n: usize, u: u32) -> SparseColumns {
        let src = self.slice(n, u);
        let Some(t) = self.target_degree(n) else { return SparseColumns::with_columns(0, vec![Vec::new(); src.len()]) };
        let tgt = self.slice(t, u);
        let cols: Vec<Vec<u32>> = src
            .codes
            .par_iter()
            .map(|&code| {
                self.differential_of(code, n)
                    .into_iter()
                    .map(|c| tgt.index_of(c).expect("differential stays in its slice") as u32)
                    .collect::<Vec<u32>>()
            })
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        SparseColumns::with_columns(tgt.len(), cols)
    }

    /// Coboundary `δ^k: C^k → C^{k+1}` in cohomological orientation: the
    /// cochain differential itself, or the transpose of `d_{k+1}` for chains.
    pub fn coboundary(&self, k: usize, u: u32) -> SparseColumns {
        match self.direction {
            Direction::Cochain => self.boundary(k, u),
            Direction::Chain => self.boundary(k + 1, u).transpose(),
        }
    }

    pub fn element(&self, n: usize, tuples: &[&[&str]]) -> Result<Cochain, ComplexError> {
        let mut codes = Vec::new();
        for t in tuples {
            if t.len() != self.factors(n) {
                return Err(ComplexError::Degree { got: t.len(), expected: self.factors(n) });
            }
            let digits = t
                .iter()
                .map(|s| self.algebra.index_of(s).map(|i| i as u32).ok_or_else(|| ComplexError::UnknownName(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            codes.push(self.encode(&digits));
        }
        codes.sort_unstable();
        Ok(Cochain { degree: n, codes: cancel_sorted(codes) })
    }

    /// Applies the natural differential to an arbitrary element.
    pub fn apply_differential(&self, x: &Cochain) -> Cochain {
        let Some(t) = self.target_degree(x.degree) else { return Cochain::zero(0) };
        let mut all: Vec<u64> = x.codes.iter().flat_map(|&c| self.differential_of(c, x.degree)).collect();
        all.sort_unstable();
        Cochain { degree: t, codes: cancel_sorted(all) }
    }

    pub fn format_element(&self, x: &Cochain) -> String {
        if x.codes.is_empty() {
            return "0".into();
        }
        x.codes.iter().map(|&c| self.format_code(c, x.degree)).collect::<Vec<_>>().join(" + ")
    }
}

/// Cancels equal neighbours in a sorted list (mod 2).
pub fn cancel_sorted(sorted: Vec<u64>) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(sorted.len());
    for x in sorted {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// An element of a single (co)chain group, as a set of basis tuple codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub degree: usize,
    pub codes: Vec<u64>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, codes: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, ComplexError> {
        if self.degree != other.degree {
            return Err(ComplexError::Degree { got: other.degree, expected: self.degree });
        }
        let mut all: Vec<u64> = self.codes.iter().chain(&other.codes).copied().collect();
        all.sort_unstable();
        Ok(Cochain { degree: self.degree, codes: cancel_sorted(all) })
    }

    /// Splits into internal-degree components.
    pub fn by_u(&self, cx: &BigradedComplex) -> HashMap<u32, Vec<u64>> {
        let mut m: HashMap<u32, Vec<u64>> = HashMap::new();
        for &c in &self.codes {
            m.entry(cx.code_degree(c, self.degree)).or_default().push(c);
        }
        m
    }
}

/// Cup product on the cyclic cobar complex: the coproduct of the cyclic
/// bar complex followed by the Alexander–Whitney map, dualized.
///
/// For `f = α_0 ⊗ ... ⊗ α_p` and `g = β_0 ⊗ ... ⊗ β_q` the product is
/// `Σ α_0^{(q+1)}β_0^{(0)} ⊗ α_1β_0^{(1)} ⊗ ... ⊗ α_pβ_0^{(p)} ⊗ α_0^{(1)}β_1 ⊗ ... ⊗ α_0^{(q)}β_q`
/// summed over iterated coproducts of `α_0` and `β_0`.
pub fn cochain_product(cx: &BigradedComplex, f: &Cochain, g: &Cochain) -> Result<Cochain, ComplexError> {
    if cx.direction != Direction::Cochain || cx.coefficients != Coefficients::SelfCoefficients || !cx.algebra.has_algebra()
    {
        return Err(ComplexError::NoProduct);
    }
    let a = &*cx.algebra;
    let (p, q) = (f.degree, g.degree);
    let n = p + q;
    let mut all = Vec::new();
    for &fc in &f.codes {
        let alpha = cx.decode(fc, p);
        let a0 = a.iterated_coproduct(alpha[0] as usize, q + 1);
        for &gc in &g.codes {
            let beta = cx.decode(gc, q);
            let b0 = a.iterated_coproduct(beta[0] as usize, p + 1);
            for ac in &a0 {
                for bc in &b0 {
                    // each position is a product of two basis elements
                    let mut choices: Vec<&[u32]> = Vec::with_capacity(n + 1);
                    choices.push(a.mult_basis(ac[q] as usize, bc[0] as usize));
                    for i in 1..=p {
                        choices.push(a.mult_basis(alpha[i] as usize, bc[i] as usize));
                    }
                    for j in 1..=q {
                        choices.push(a.mult_basis(ac[j - 1] as usize, beta[j] as usize));
                    }
                    if choices.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    let mut digits = vec![0u32; n + 1];
                    expand(&choices, 0, &mut digits, &mut |d| all.push(cx.encode(d)));
                }
            }
        }
    }
    all.sort_unstable();
    let codes = cancel_sorted(all);
    if codes.iter().any(|&c| !cx.is_admissible(c, n)) {
        return Err(ComplexError::NotNormalized);
    }
    Ok(Cochain { degree: n, codes })
}

fn expand(choices: &[&[u32]], p: usize, digits: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if p == choices.len() {
        emit(digits);
        return;
    }
    for &k in choices[p] {
        digits[p] = k;
        expand(choices, p + 1, digits, emit);
    }
}

/// A complex together with per-basis filtration values of its algebra.
///
/// The value of a tuple is the sum of the values of its entries. Chains
/// never lower it; cochains never raise it.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub complex: Arc<BigradedComplex>,
    pub values: Vec<u32>,
    pub name: String,
}

pub fn chain_filtration(cx: Arc<BigradedComplex>, f: &AdaptedFiltration) -> Result<FilteredComplex, ComplexError> {
    if cx.algebra().fingerprint() != f.algebra.fingerprint() {
        return Err(ComplexError::AlgebraMismatch);
    }
    Ok(FilteredComplex { complex: cx, values: f.values.clone(), name: f.name.clone() })
}

impl FilteredComplex {
    pub fn value(&self, code: u64, n: usize) -> u32 {
        self.complex.decode(code, n).iter().map(|&i| self.values[i as usize]).sum()
    }

    /// Identifier of the filtration values for memoization.
    pub fn tag(&self) -> String {
        format!("{}/values{:?}", self.complex.cache_tag(), self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin;

    fn arc(name: &str) -> Arc<StructuredBialgebra> {
        Arc::new(builtin(name).unwrap())
    }

    #[test]
    fn dimensions_of_full_complex() {
        let cx = bar_complex(arc("a1"), Coefficients::SelfCoefficients, 3, None).unwrap();
        for n in 0..=2 {
            let total: usize = cx.u_range(n).map(|u| cx.slice_dim(n, u)).sum();
            assert_eq!(total, 8usize.pow(n as u32 + 1));
        }
        let g = bar_complex(arc("a1"), Coefficients::Ground, 3, None).unwrap().normalized().unwrap();
        let total: usize = g.u_range(2).map(|u| g.slice_dim(2, u)).sum();
        assert_eq!(total, 49);
    }

    #[test]
    fn squares_to_zero() {
        for (name, dir) in [("a1", Direction::Chain), ("a1_dual", Direction::Cochain), ("d8_group_algebra", Direction::Chain)]
        {
            for coeff in [Coefficients::SelfCoefficients, Coefficients::Ground] {
                for norm in [Normalization::Full, Normalization::Normalized] {
                    let cx = BigradedComplex::new(arc(name), dir, coeff, norm, 4, None).unwrap();
                    for n in 0..3usize {
                        let (n1, n2) = match dir {
                            Direction::Chain => (n + 2, n + 1),
                            Direction::Cochain => (n, n + 1),
                        };
                        for u in cx.u_range(n1).take(9) {
                            let d1 = cx.boundary(n1, u);
                            let d2 = cx.boundary(n2, u);
                            let dd = d2.compose(&d1).unwrap();
                            assert_eq!(dd.nnz(), 0, "{name} {dir} {coeff} {norm} n={n} u={u}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cobar_is_transpose_of_dual_bar() {
        let a = arc("a1");
        let c = Arc::new(a.dualize());
        for coeff in [Coefficients::SelfCoefficients, Coefficients::Ground] {
            let bar = bar_complex(a.clone(), coeff, 3, None).unwrap();
            let cobar = cobar_complex(c.clone(), coeff, 3, None).unwrap();
            for n in 0..3 {
                for u in 0..8 {
                    assert_eq!(bar.slice(n, u).codes, cobar.slice(n, u).codes);
                    let d = bar.boundary(n + 1, u);
                    let delta = cobar.boundary(n, u);
                    assert_eq!(delta.to_dense(), d.to_dense().transpose(), "{coeff} n={n} u={u}");
                }
            }
        }
    }

    #[test]
    fn xi2_coboundary() {
        let cx = cobar_complex(arc("a1_dual"), Coefficients::SelfCoefficients, 3, None).unwrap();
        let x = cx.element(0, &[&["xi2"]]).unwrap();
        let expect = cx.element(1, &[&["xi1", "xi1^2"], &["xi1^2", "xi1"]]).unwrap();
        assert_eq!(cx.apply_differential(&x), expect);
        let h = cx.element(1, &[&["1", "xi2"]]).unwrap();
        assert_eq!(cx.apply_differential(&h), cx.element(2, &[&["1", "xi1", "xi1^2"]]).unwrap());
    }

    #[test]
    fn product_examples() {
        let cx = cobar_complex(arc("e0ab_dual"), Coefficients::SelfCoefficients, 4, None).unwrap();
        let x10 = cx.element(0, &[&["xi10"]]).unwrap();
        let h10 = cx.element(1, &[&["1", "xi10"]]).unwrap();
        let h11 = cx.element(1, &[&["1", "xi10^2"]]).unwrap();
        let x10sq = cochain_product(&cx, &x10, &x10).unwrap();
        assert_eq!(x10sq, cx.element(0, &[&["xi10^2"]]).unwrap());
        let a = cochain_product(&cx, &x10, &h11).unwrap();
        let b = cochain_product(&cx, &x10sq, &h10).unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, cx.element(1, &[&["xi10", "xi10^2"], &["xi10^2", "xi10"]]).unwrap());
        let h10h11 = cochain_product(&cx, &h10, &h11).unwrap();
        assert_eq!(h10h11, cx.element(2, &[&["1", "xi10", "xi10^2"]]).unwrap());
        let one = cx.element(0, &[&["1"]]).unwrap();
        assert_eq!(cochain_product(&cx, &one, &h11).unwrap(), h11);
        assert_eq!(cochain_product(&cx, &h11, &one).unwrap(), h11);
    }
}
