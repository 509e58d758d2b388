//! Finite-dimensional graded algebras, coalgebras and bialgebras over F2.
//!
//! Structure constants are kept sparse: the product of two basis elements
//! is a list of basis indices and the coproduct of a basis element is a
//! list of index pairs. Every constructor goes through [`make_algebra`],
//! which checks grading, (co)associativity, (co)unit laws and bialgebra
//! compatibility.

mod builtins;
mod groups;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::f2linalg::{BitMatrix, BitVector};

pub use builtins::{builtin, builtin_names, truncated_polynomial_hopf, GeneratorSpec};
pub use groups::{
    conjugacy_data, group_algebra, verify_dihedral_iso, verify_dihedral_iso_into, ConjugacyClass, DihedralIso,
    FiniteGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure data has the wrong shape: {0}")]
    Shape(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("product {a} * {b} has a component {c} of the wrong degree")]
    ProductGrading { a: String, b: String, c: String },
    #[error("coproduct of {a} has a component {left} ⊗ {right} of the wrong degree")]
    CoproductGrading { a: String, left: String, right: String },
    #[error("associativity fails on ({a}, {b}, {c})")]
    Associativity { a: String, b: String, c: String },
    #[error("unit law fails on {a}")]
    Unit { a: String },
    #[error("unit is not homogeneous of degree 0")]
    UnitDegree,
    #[error("coassociativity fails on {a}")]
    Coassociativity { a: String },
    #[error("counit law fails on {a}")]
    Counit { a: String },
    #[error("coproduct is not multiplicative on ({a}, {b})")]
    Compatibility { a: String, b: String },
    #[error("unit and counit are incompatible")]
    UnitCounit,
    #[error("a product table requires a unit")]
    MissingUnit,
    #[error("a coproduct table requires a counit")]
    MissingCounit,
    #[error("operation needs a {0} structure")]
    MissingStructure(&'static str),
    #[error("duplicate basis name {0}")]
    DuplicateName(String),
    #[error("change of basis is not invertible")]
    Singular,
    #[error("unknown builtin algebra {0}")]
    UnknownBuiltin(String),
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("dihedral isomorphism check failed: {0}")]
    Dihedral(String),
}

/// Plain structure-constant data, as accepted by [`make_algebra`].
///
/// `mult[i * dim + j]` lists the basis indices in `e_i e_j` and `comult[k]`
/// lists the pairs in `Δ e_k`; repeated entries cancel. `unit` and
/// `counit` list the supports of the unit vector and counit covector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescription {
    pub name: String,
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    pub mult: Option<Vec<Vec<usize>>>,
    pub comult: Option<Vec<Vec<(usize, usize)>>>,
    pub unit: Option<Vec<usize>>,
    pub counit: Option<Vec<usize>>,
}

/// A validated algebra, coalgebra or bialgebra with a fixed homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredBialgebra {
    name: String,
    names: Vec<String>,
    degrees: Vec<u32>,
    mult: Option<Vec<Vec<u32>>>,
    comult: Option<Vec<Vec<(u32, u32)>>>,
    unit: Option<BitVector>,
    counit: Option<BitVector>,
}

fn cancel<T: Ord + Copy>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn make_algebra(desc: AlgebraDescription) -> Result<StructuredBialgebra, AlgebraError> {
    let dim = desc.basis.len();
    if desc.degrees.len() != dim {
        return Err(AlgebraError::Shape(format!("{} basis names but {} degrees", dim, desc.degrees.len())));
    }
    let mut seen = std::collections::HashSet::new();
    for n in &desc.basis {
        if !seen.insert(n) {
            return Err(AlgebraError::DuplicateName(n.clone()));
        }
    }
    let check_idx = |i: usize| if i < dim { Ok(()) } else { Err(AlgebraError::IndexOutOfRange { index: i, dim }) };

    let mult = match desc.mult {
        None => None,
        Some(table) => {
            if table.len() != dim * dim {
                return Err(AlgebraError::Shape(format!(
                    "product table has {} entries, expected {}",
                    table.len(),
                    dim * dim
                )));
            }
            let mut out = Vec::with_capacity(table.len());
            for entry in table {
                for &k in &entry {
                    check_idx(k)?;
                }
                out.push(cancel(entry.into_iter().map(|k| k as u32).collect()));
            }
            Some(out)
        }
    };
    let comult = match desc.comult {
        None => None,
        Some(table) => {
            if table.len() != dim {
                return Err(AlgebraError::Shape(format!("coproduct table has {} entries, expected {}", table.len(), dim)));
            }
            let mut out = Vec::with_capacity(dim);
            for entry in table {
                for &(i, j) in &entry {
                    check_idx(i)?;
                    check_idx(j)?;
                }
                out.push(cancel(entry.into_iter().map(|(i, j)| (i as u32, j as u32)).collect()));
            }
            Some(out)
        }
    };
    let support = |s: Option<Vec<usize>>| -> Result<Option<BitVector>, AlgebraError> {
        match s {
            None => Ok(None),
            Some(s) => {
                for &i in &s {
                    check_idx(i)?;
                }
                Ok(Some(BitVector::from_indices(dim, s)))
            }
        }
    };
    let a = StructuredBialgebra {
        name: desc.name,
        names: desc.basis,
        degrees: desc.degrees,
        mult,
        comult,
        unit: support(desc.unit)?,
        counit: support(desc.counit)?,
    };
    a.validate()?;
    Ok(a)
}

impl StructuredBialgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same structure with new basis names.
    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.dim() {
            return Err(AlgebraError::Shape("wrong number of basis names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn has_algebra(&self) -> bool {
        self.mult.is_some()
    }

    pub fn has_coalgebra(&self) -> bool {
        self.comult.is_some()
    }

    pub fn unit(&self) -> Option<&BitVector> {
        self.unit.as_ref()
    }

    pub fn counit(&self) -> Option<&BitVector> {
        self.counit.as_ref()
    }

    /// Index of the unit when the unit is a single basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let u = self.unit.as_ref()?;
        (u.count_ones() == 1).then(|| u.first_one().unwrap())
    }

    /// Index `k` with `ε(e_i) = δ_ik`, when the counit is a coordinate functional.
    pub fn counit_index(&self) -> Option<usize> {
        let c = self.counit.as_ref()?;
        (c.count_ones() == 1).then(|| c.first_one().unwrap())
    }

    #[inline]
    pub fn mult_basis(&self, i: usize, j: usize) -> &[u32] {
        &self.mult.as_ref().expect("algebra structure")[i * self.dim() + j]
    }

    #[inline]
    pub fn comult_basis(&self, k: usize) -> &[(u32, u32)] {
        &self.comult.as_ref().expect("coalgebra structure")[k]
    }

    pub fn multiply(&self, a: &BitVector, b: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim());
        for i in a.ones() {
            for j in b.ones() {
                for &k in self.mult_basis(i, j) {
                    out.flip(k as usize);
                }
            }
        }
        out
    }

    /// Coproduct as a vector in `A ⊗ A`, index `i * dim + j`.
    pub fn comultiply(&self, a: &BitVector) -> BitVector {
        let d = self.dim();
        let mut out = BitVector::zeros(d * d);
        for k in a.ones() {
            for &(i, j) in self.comult_basis(k) {
                out.flip(i as usize * d + j as usize);
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> BitVector {
        BitVector::unit(self.dim(), i)
    }

    /// Vector for a named basis element.
    pub fn element(&self, name: &str) -> Option<BitVector> {
        self.index_of(name).map(|i| self.basis_vector(i))
    }

    pub fn is_homogeneous(&self, v: &BitVector) -> bool {
        let mut it = v.ones().map(|i| self.degrees[i]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn format_vector(&self, v: &BitVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.ones().map(|i| self.names[i].as_str()).collect::<Vec<_>>().join(" + ")
    }

    pub fn description(&self) -> AlgebraDescription {
        AlgebraDescription {
            name: self.name.clone(),
            basis: self.names.clone(),
            degrees: self.degrees.clone(),
            mult: self
                .mult
                .as_ref()
                .map(|t| t.iter().map(|e| e.iter().map(|&k| k as usize).collect()).collect()),
            comult: self
                .comult
                .as_ref()
                .map(|t| t.iter().map(|e| e.iter().map(|&(i, j)| (i as usize, j as usize)).collect()).collect()),
            unit: self.unit.as_ref().map(|u| u.ones().collect()),
            counit: self.counit.as_ref().map(|u| u.ones().collect()),
        }
    }

    /// Content hash of the structure constants (names excluded).
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("dim {}\n", self.dim()));
        h.update(format!("deg {:?}\n", self.degrees));
        if let Some(m) = &self.mult {
            h.update(format!("mult {m:?}\n"));
        }
        if let Some(c) = &self.comult {
            h.update(format!("comult {c:?}\n"));
        }
        if let Some(u) = &self.unit {
            h.update(format!("unit {:?}\n", u.ones().collect::<Vec<_>>()));
        }
        if let Some(u) = &self.counit {
            h.update(format!("counit {:?}\n", u.ones().collect::<Vec<_>>()));
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Linear dual on the dual basis: products become coproducts and back.
    pub fn dualize(&self) -> StructuredBialgebra {
        let d = self.dim();
        let mult = self.comult.as_ref().map(|comult| {
            let mut t = vec![Vec::new(); d * d];
            for (k, terms) in comult.iter().enumerate() {
                for &(i, j) in terms {
                    t[i as usize * d + j as usize].push(k as u32);
                }
            }
            t
        });
        let comult = self.mult.as_ref().map(|mult| {
            let mut t = vec![Vec::new(); d];
            for i in 0..d {
                for j in 0..d {
                    for &k in &mult[i * d + j] {
                        t[k as usize].push((i as u32, j as u32));
                    }
                }
            }
            t
        });
        StructuredBialgebra {
            name: format!("{}*", self.name),
            names: self.names.iter().map(|n| format!("{n}*")).collect(),
            degrees: self.degrees.clone(),
            mult,
            comult,
            unit: self.counit.clone(),
            counit: self.unit.clone(),
        }
    }

    /// Re-expresses the structure in a new basis; row `i` of `rows` gives the
    /// `i`-th new basis vector in old coordinates.
    pub fn change_basis(&self, rows: &BitMatrix, names: Vec<String>) -> Result<StructuredBialgebra, AlgebraError> {
        let d = self.dim();
        if rows.rows() != d || rows.cols() != d || names.len() != d {
            return Err(AlgebraError::Shape("change of basis must be square".into()));
        }
        // old coordinates (row vector) -> new coordinates: v * inv
        let inv = rows.inverse().ok_or(AlgebraError::Singular)?;
        let new_vecs: Vec<BitVector> = (0..d).map(|i| rows.row(i)).collect();
        let mut degrees = Vec::with_capacity(d);
        for v in &new_vecs {
            if !self.is_homogeneous(v) || v.is_zero() {
                return Err(AlgebraError::Shape("new basis vectors must be homogeneous".into()));
            }
            degrees.push(self.degrees[v.first_one().unwrap()]);
        }
        let to_new = |v: &BitVector| inv.vec_mul(v);
        let mult = self.mult.as_ref().map(|_| {
            let mut t = Vec::with_capacity(d * d);
            for a in &new_vecs {
                for b in &new_vecs {
                    t.push(to_new(&self.multiply(a, b)).ones().map(|k| k as u32).collect());
                }
            }
            t
        });
        let comult = self.comult.as_ref().map(|_| {
            new_vecs
                .iter()
                .map(|a| {
                    let c = self.comultiply(a);
                    // (inv ⊗ inv) applied to each component pair
                    let mut acc = Vec::new();
                    for idx in c.ones() {
                        let (i, j) = (idx / d, idx % d);
                        let li = to_new(&BitVector::unit(d, i));
                        let rj = to_new(&BitVector::unit(d, j));
                        for x in li.ones() {
                            for y in rj.ones() {
                                acc.push((x as u32, y as u32));
                            }
                        }
                    }
                    cancel(acc)
                })
                .collect()
        });
        let unit = self.unit.as_ref().map(to_new);
        // covector: ε'(b'_i) = ε(b'_i)
        let counit = self
            .counit
            .as_ref()
            .map(|e| BitVector::from_indices(d, (0..d).filter(|&i| new_vecs[i].dot(e))));
        let a = StructuredBialgebra { name: self.name.clone(), names, degrees, mult, comult, unit, counit };
        a.validate()?;
        Ok(a)
    }

    fn n(&self, i: usize) -> String {
        self.names[i].clone()
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        if let Some(mult) = &self.mult {
            let unit = self.unit.as_ref().ok_or(AlgebraError::MissingUnit)?;
            for i in 0..d {
                for j in 0..d {
                    for &k in &mult[i * d + j] {
                        if self.degrees[k as usize] != self.degrees[i] + self.degrees[j] {
                            return Err(AlgebraError::ProductGrading { a: self.n(i), b: self.n(j), c: self.n(k as usize) });
                        }
                    }
                }
            }
            if unit.ones().any(|i| self.degrees[i] != 0) {
                return Err(AlgebraError::UnitDegree);
            }
            for i in 0..d {
                let e = self.basis_vector(i);
                if self.multiply(unit, &e) != e || self.multiply(&e, unit) != e {
                    return Err(AlgebraError::Unit { a: self.n(i) });
                }
            }
            for i in 0..d {
                for j in 0..d {
                    let ij = BitVector::from_indices(d, mult[i * d + j].iter().map(|&k| k as usize));
                    for k in 0..d {
                        let left = self.multiply(&ij, &self.basis_vector(k));
                        let jk = BitVector::from_indices(d, mult[j * d + k].iter().map(|&x| x as usize));
                        let right = self.multiply(&self.basis_vector(i), &jk);
                        if left != right {
                            return Err(AlgebraError::Associativity { a: self.n(i), b: self.n(j), c: self.n(k) });
                        }
                    }
                }
            }
        }
        if let Some(comult) = &self.comult {
            let counit = self.counit.as_ref().ok_or(AlgebraError::MissingCounit)?;
            for (k, terms) in comult.iter().enumerate() {
                for &(i, j) in terms {
                    if self.degrees[i as usize] + self.degrees[j as usize] != self.degrees[k] {
                        return Err(AlgebraError::CoproductGrading {
                            a: self.n(k),
                            left: self.n(i as usize),
                            right: self.n(j as usize),
                        });
                    }
                }
            }
            if counit.ones().any(|i| self.degrees[i] != 0) {
                return Err(AlgebraError::Counit { a: "counit support".into() });
            }
            for k in 0..d {
                // (ε ⊗ 1)Δ = 1 = (1 ⊗ ε)Δ
                let mut l = BitVector::zeros(d);
                let mut r = BitVector::zeros(d);
                for &(i, j) in &comult[k] {
                    if counit.get(i as usize) {
                        l.flip(j as usize);
                    }
                    if counit.get(j as usize) {
                        r.flip(i as usize);
                    }
                }
                let e = self.basis_vector(k);
                if l != e || r != e {
                    return Err(AlgebraError::Counit { a: self.n(k) });
                }
                // (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ as sets of triples
                let mut left = Vec::new();
                let mut right = Vec::new();
                for &(i, j) in &comult[k] {
                    for &(a, b) in &comult[i as usize] {
                        left.push((a, b, j));
                    }
                    for &(a, b) in &comult[j as usize] {
                        right.push((i, a, b));
                    }
                }
                if cancel(left) != cancel(right) {
                    return Err(AlgebraError::Coassociativity { a: self.n(k) });
                }
            }
        }
        if self.mult.is_some() && self.comult.is_some() {
            let (unit, counit) = (self.unit.as_ref().unwrap(), self.counit.as_ref().unwrap());
            if !unit.dot(counit) {
                return Err(AlgebraError::UnitCounit);
            }
            let uu = self.comultiply(unit);
            let mut expect = BitVector::zeros(d * d);
            for i in unit.ones() {
                for j in unit.ones() {
                    expect.flip(i * d + j);
                }
            }
            if uu != expect {
                return Err(AlgebraError::UnitCounit);
            }
            for i in 0..d {
                for j in 0..d {
                    let ab = self.multiply(&self.basis_vector(i), &self.basis_vector(j));
                    let lhs = self.comultiply(&ab);
                    let rhs = self.tensor_multiply(
                        &self.comultiply(&self.basis_vector(i)),
                        &self.comultiply(&self.basis_vector(j)),
                    );
                    if lhs != rhs {
                        return Err(AlgebraError::Compatibility { a: self.n(i), b: self.n(j) });
                    }
                    let eab = ab.dot(counit);
                    if eab != (self.basis_vector(i).dot(counit) & self.basis_vector(j).dot(counit)) {
                        return Err(AlgebraError::Compatibility { a: self.n(i), b: self.n(j) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Componentwise product in `A ⊗ A`.
    pub fn tensor_multiply(&self, x: &BitVector, y: &BitVector) -> BitVector {
        let d = self.dim();
        let mut out = BitVector::zeros(d * d);
        for p in x.ones() {
            for q in y.ones() {
                for &a in self.mult_basis(p / d, q / d) {
                    for &b in self.mult_basis(p % d, q % d) {
                        out.flip(a as usize * d + b as usize);
                    }
                }
            }
        }
        out
    }

    /// Iterated coproduct of a basis element into `parts` tensor factors,
    /// as a mod-2 reduced list of index tuples.
    pub fn iterated_coproduct(&self, k: usize, parts: usize) -> Vec<Vec<u32>> {
        assert!(parts >= 1);
        let mut terms: Vec<Vec<u32>> = vec![vec![k as u32]];
        for _ in 1..parts {
            let mut next = Vec::new();
            for t in &terms {
                let last = *t.last().unwrap() as usize;
                for &(a, b) in self.comult_basis(last) {
                    let mut n = t[..t.len() - 1].to_vec();
                    n.push(a);
                    n.push(b);
                    next.push(n);
                }
            }
            terms = cancel_vecs(next);
        }
        terms
    }

    /// Basis indices grouped by degree.
    pub fn indices_by_degree(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut m: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            m.entry(d).or_default().push(i);
        }
        m
    }
}

fn cancel_vecs(mut v: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    v.sort_unstable();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> StructuredBialgebra {
        builtin("a1").unwrap()
    }

    fn el(a: &StructuredBialgebra, n: &str) -> BitVector {
        a.element(n).unwrap_or_else(|| panic!("no basis element {n}"))
    }

    #[test]
    fn a1_dual_poincare_polynomial() {
        let d = builtin("a1_dual").unwrap();
        let mut counts = [0usize; 7];
        for &g in d.degrees() {
            counts[g as usize] += 1;
        }
        assert_eq!(counts, [1, 1, 1, 2, 1, 1, 1]);
        let xi2 = el(&d, "xi2");
        let c = d.comultiply(&xi2);
        let n = d.dim();
        let expect = BitVector::from_indices(
            n * n,
            [
                d.index_of("xi2").unwrap() * n + d.index_of("1").unwrap(),
                d.index_of("xi1").unwrap() * n + d.index_of("xi1^2").unwrap(),
                d.index_of("1").unwrap() * n + d.index_of("xi2").unwrap(),
            ],
        );
        assert_eq!(c, expect);
    }

    #[test]
    fn a1_relations() {
        let a = a1();
        let (sq1, sq2) = (el(&a, "Sq1"), el(&a, "Sq2"));
        assert!(a.multiply(&sq1, &sq1).is_zero());
        let q0 = el(&a, "Q0");
        let comm = {
            let mut x = a.multiply(&sq1, &sq2);
            x.xor_assign(&a.multiply(&sq2, &sq1));
            x
        };
        assert_eq!(comm, q0);
        assert_eq!(a.multiply(&sq2, &sq1), el(&a, "Sq2Sq1"));
        assert_eq!(a.multiply(&sq1, &q0), el(&a, "Sq1Q0"));
        assert_eq!(a.multiply(&sq2, &q0), el(&a, "Sq2Q0"));
        // Sq2 Sq2 = Sq1 Sq2 Sq1
        let s121 = a.multiply(&sq1, &a.multiply(&sq2, &sq1));
        assert_eq!(a.multiply(&sq2, &sq2), s121);
        assert!(!s121.is_zero());
        let top = a.multiply(&sq1, &a.multiply(&sq2, &q0));
        assert_eq!(top, el(&a, "Sq1Sq2Q0"));
        // Q0 = Sq1 Sq2 + Sq2 Sq1 is primitive in the dual sense: Q0 squares to zero
        assert!(a.multiply(&q0, &q0).is_zero());
        assert_eq!(a.degrees(), &[0, 1, 2, 3, 3, 4, 5, 6]);
    }

    #[test]
    fn double_dual_is_identity() {
        for name in builtin_names() {
            let a = builtin(name).unwrap();
            let dd = a.dualize().dualize();
            assert_eq!(dd.fingerprint(), a.fingerprint(), "{name}");
        }
    }

    #[test]
    fn validation_catches_broken_tables() {
        let mut desc = builtin("exterior1").unwrap().description();
        // x * x = x breaks the grading
        desc.mult.as_mut().unwrap()[3] = vec![1];
        assert!(matches!(make_algebra(desc.clone()), Err(AlgebraError::ProductGrading { .. })));
        desc.mult.as_mut().unwrap().pop();
        assert!(matches!(make_algebra(desc), Err(AlgebraError::Shape(_))));

        let mut desc = builtin("a1_dual").unwrap().description();
        // drop the middle term of Δ(xi2): coassociativity survives, compatibility does not
        let k = 4;
        desc.comult.as_mut().unwrap()[k].retain(|&(i, j)| !(i == 1 && j == 2));
        assert!(make_algebra(desc).is_err());
    }

    #[test]
    fn change_of_basis_preserves_fingerprint_under_identity() {
        let a = a1();
        let b = a.change_basis(&BitMatrix::identity(8), a.basis_names().to_vec()).unwrap();
        assert_eq!(a, b);
        // a genuine change: replace Sq2Sq1 by Sq1Sq2 = Sq2Sq1 + Q0
        let mut rows: Vec<BitVector> = (0..8).map(|i| BitVector::unit(8, i)).collect();
        rows[3].flip(4);
        let c = a.change_basis(&BitMatrix::from_rows(8, &rows), a.basis_names().to_vec()).unwrap();
        assert_ne!(c.fingerprint(), a.fingerprint());
    }

    #[test]
    fn iterated_coproduct_of_xi2() {
        let d = builtin("a1_dual").unwrap();
        let k = d.index_of("xi2").unwrap();
        assert_eq!(d.iterated_coproduct(k, 1), vec![vec![k as u32]]);
        // Δ(xi2) has three terms; the 3-fold coproduct has six.
        assert_eq!(d.iterated_coproduct(k, 2).len(), 3);
        assert_eq!(d.iterated_coproduct(k, 3).len(), 6);
    }
}
