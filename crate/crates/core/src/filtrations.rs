//! Decreasing filtrations `A = F^0 ⊇ F^1 ⊇ ... ⊇ F^N = 0` of algebras.
//!
//! Two are built in: the May filtration by powers of the augmentation
//! ideal, and the abelianizing filtration of A(1), whose associated graded
//! is commutative. [`Filtration::adapted`] picks a homogeneous basis in
//! which every layer is spanned by basis vectors; complexes and spectral
//! sequences only ever see filtrations in that form.

use std::sync::Arc;

use thiserror::Error;

use crate::algebras::{AlgebraError, StructuredBialgebra};
use crate::f2linalg::{BitMatrix, BitVector, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("layers are not nested at {0}")]
    NotNested(usize),
    #[error("first layer must be the whole algebra and the last layer zero")]
    Ends,
    #[error("layer {0} is not spanned by homogeneous elements")]
    NotHomogeneous(usize),
    #[error("filtration is not multiplicative")]
    NotMultiplicative,
    #[error("filtration is not compatible with the coproduct")]
    NotHopf,
    #[error("powers of the augmentation ideal do not reach zero")]
    NotNilpotent,
    #[error("the abelianizing filtration needs basis elements named Sq1 and Sq2")]
    NotA1,
    #[error("layer lives in dimension {got}, expected {expected}")]
    Ambient { got: usize, expected: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct Filtration {
    algebra: Arc<StructuredBialgebra>,
    layers: Vec<Subspace>,
    name: String,
}

impl Filtration {
    /// Checks that the layers are nested, homogeneous, start at `A` and end at 0.
    pub fn new(algebra: Arc<StructuredBialgebra>, layers: Vec<Subspace>, name: &str) -> Result<Self, FiltrationError> {
        let f = Self::new_unchecked(algebra, layers, name)?;
        let d = f.algebra.dim();
        if f.layers.is_empty() || f.layers[0].dim() != d || f.layers.last().unwrap().dim() != 0 {
            return Err(FiltrationError::Ends);
        }
        for n in 1..f.layers.len() {
            if !f.layers[n - 1].contains_subspace(&f.layers[n]) {
                return Err(FiltrationError::NotNested(n));
            }
        }
        for (n, l) in f.layers.iter().enumerate() {
            if !is_homogeneous(&f.algebra, l) {
                return Err(FiltrationError::NotHomogeneous(n));
            }
        }
        Ok(f)
    }

    /// Accepts arbitrary layers; only [`filtration_checks`] is meaningful then.
    pub fn new_unchecked(
        algebra: Arc<StructuredBialgebra>,
        layers: Vec<Subspace>,
        name: &str,
    ) -> Result<Self, FiltrationError> {
        for l in &layers {
            if l.ambient_dim() != algebra.dim() {
                return Err(FiltrationError::Ambient { got: l.ambient_dim(), expected: algebra.dim() });
            }
        }
        Ok(Filtration { algebra, layers, name: name.into() })
    }

    pub fn algebra(&self) -> &Arc<StructuredBialgebra> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// `F^n`; zero past the end.
    pub fn layer(&self, n: usize) -> Subspace {
        self.layers.get(n).cloned().unwrap_or_else(|| Subspace::zero(self.algebra.dim()))
    }

    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(Subspace::dim).collect()
    }

    /// Largest `n` with `v ∈ F^n`; `None` for the zero vector.
    pub fn value(&self, v: &BitVector) -> Option<usize> {
        if v.is_zero() {
            return None;
        }
        (0..self.layers.len()).rev().find(|&n| self.layers[n].contains(v))
    }

    /// Homogeneous basis adapted to the filtration, with the structure
    /// constants rewritten in it.
    ///
    /// Within each degree, basis vectors are taken from the deepest layer
    /// first, each extending the span of the deeper ones, preferring existing
    /// basis vectors. When the existing basis is already adapted it is kept.
    pub fn adapted(&self) -> Result<AdaptedFiltration, FiltrationError> {
        let a = &self.algebra;
        let d = a.dim();
        let mut rows: Vec<Option<(BitVector, u32)>> = vec![None; d];
        let std_values: Option<Vec<u32>> = (0..d)
            .map(|i| self.value(&a.basis_vector(i)).map(|v| v as u32))
            .collect();
        let standard_ok = std_values.as_ref().is_some_and(|vals| {
            self.layers.iter().enumerate().all(|(n, l)| vals.iter().filter(|&&v| v as usize >= n).count() == l.dim())
        });
        if standard_ok {
            let vals = std_values.unwrap();
            return Ok(AdaptedFiltration {
                algebra: Arc::new((**a).clone()),
                values: vals,
                change: BitMatrix::identity(d),
                name: self.name.clone(),
            });
        }
        for (deg, idx) in a.indices_by_degree() {
            let mut chosen: Vec<BitVector> = Vec::new();
            for n in (0..self.layers.len()).rev() {
                // homogeneous part of F^n in this degree
                let part = homogeneous_part(a, &self.layers[n], deg);
                for v in part.basis() {
                    let span = Subspace::span(d, &chosen);
                    if span.contains(&v) {
                        continue;
                    }
                    // prefer a basis vector of A lying in the layer
                    let pick = idx
                        .iter()
                        .map(|&i| a.basis_vector(i))
                        .find(|e| part.contains(e) && !span.contains(e))
                        .unwrap_or(v);
                    chosen.push(pick.clone());
                    let slot = rows.iter().position(Option::is_none).unwrap();
                    rows[slot] = Some((pick, n as u32));
                }
            }
        }
        let (vecs, values): (Vec<BitVector>, Vec<u32>) = rows.into_iter().map(|r| r.expect("complete basis")).unzip();
        // order by degree then index of leading coordinate for readability
        let change = BitMatrix::from_rows(d, &vecs);
        let names = vecs
            .iter()
            .map(|v| {
                if v.count_ones() == 1 {
                    a.basis_names()[v.first_one().unwrap()].clone()
                } else {
                    format!("({})", a.format_vector(v))
                }
            })
            .collect();
        let rebased = a.change_basis(&change, names)?;
        Ok(AdaptedFiltration { algebra: Arc::new(rebased), values, change, name: self.name.clone() })
    }
}

fn homogeneous_part(a: &StructuredBialgebra, l: &Subspace, deg: u32) -> Subspace {
    // project onto degree `deg`; for homogeneous layers this is F ∩ A_deg
    let vs: Vec<BitVector> = l
        .basis()
        .iter()
        .map(|v| BitVector::from_indices(a.dim(), v.ones().filter(|&i| a.degree(i) == deg)))
        .collect();
    Subspace::span(a.dim(), &vs)
}

fn is_homogeneous(a: &StructuredBialgebra, l: &Subspace) -> bool {
    a.indices_by_degree().keys().all(|&deg| l.contains_subspace(&homogeneous_part(a, l, deg)))
}

/// A filtration expressed on an adapted basis: `F^n` is spanned by the
/// basis vectors with `values[i] >= n`.
#[derive(Clone, Debug)]
pub struct AdaptedFiltration {
    pub algebra: Arc<StructuredBialgebra>,
    pub values: Vec<u32>,
    /// Row `i` is the `i`-th adapted basis vector in the original basis.
    pub change: BitMatrix,
    pub name: String,
}

impl AdaptedFiltration {
    /// The same values on the dual basis of the dual (co)algebra.
    pub fn dual(&self) -> AdaptedFiltration {
        AdaptedFiltration {
            algebra: Arc::new(self.algebra.dualize()),
            values: self.values.clone(),
            change: self.change.clone(),
            name: self.name.clone(),
        }
    }

    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        (0..=self.max_value() + 1)
            .map(|n| self.values.iter().filter(|&&v| v >= n).count())
            .collect()
    }
}

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_span(a: &StructuredBialgebra, gens: &[BitVector]) -> Subspace {
    let d = a.dim();
    let mut s = Subspace::span(d, gens);
    loop {
        let mut vs = s.basis();
        for v in s.basis() {
            for i in 0..d {
                let e = a.basis_vector(i);
                vs.push(a.multiply(&e, &v));
                vs.push(a.multiply(&v, &e));
            }
        }
        let next = Subspace::span(d, &vs);
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

/// Powers of the augmentation ideal `I = ker ε`.
pub fn may_filtration(a: Arc<StructuredBialgebra>) -> Result<Filtration, FiltrationError> {
    let d = a.dim();
    let counit = a.counit().ok_or(AlgebraError::MissingStructure("counit"))?.clone();
    if !a.has_algebra() {
        return Err(AlgebraError::MissingStructure("algebra").into());
    }
    let ideal = BitMatrix::from_rows(d, &[counit]).kernel_basis();
    let ideal_basis = ideal.basis();
    let mut layers = vec![Subspace::full(d), ideal.clone()];
    let mut cur = ideal;
    while cur.dim() > 0 {
        let mut vs = Vec::new();
        for x in cur.basis() {
            for y in &ideal_basis {
                vs.push(a.multiply(&x, y));
            }
        }
        let next = Subspace::span(d, &vs);
        if next.dim() == cur.dim() {
            return Err(FiltrationError::NotNilpotent);
        }
        layers.push(next.clone());
        cur = next;
    }
    Filtration::new(a, layers, "may")
}

/// The abelianizing filtration of A(1):
/// `F^1 = (Sq1, Sq2)`, `F^2 = (Sq2)`, `F^3 = (Sq1 Sq2, Sq2 Sq1)`, `F^4 = (Q0)`,
/// `F^5 = (Sq1 Q0, Sq2 Q0)`, `F^6 = (Sq2 Q0)`, `F^7 = (Sq1 Sq2 Q0)`.
pub fn abelianizing_filtration(a: Arc<StructuredBialgebra>) -> Result<Filtration, FiltrationError> {
    let (Some(sq1), Some(sq2)) = (a.element("Sq1"), a.element("Sq2")) else {
        return Err(FiltrationError::NotA1);
    };
    let m = |x: &BitVector, y: &BitVector| a.multiply(x, y);
    let s12 = m(&sq1, &sq2);
    let s21 = m(&sq2, &sq1);
    let mut q0 = s12.clone();
    q0.xor_assign(&s21);
    let s1q = m(&sq1, &q0);
    let s2q = m(&sq2, &q0);
    let top = m(&sq1, &s2q);
    let gens: Vec<Vec<BitVector>> = vec![
        vec![sq1, sq2.clone()],
        vec![sq2.clone()],
        vec![s12, s21],
        vec![q0],
        vec![s1q, s2q.clone()],
        vec![s2q],
        vec![top],
    ];
    let d = a.dim();
    let mut layers = vec![Subspace::full(d)];
    for g in &gens {
        layers.push(ideal_span(&a, g));
    }
    layers.push(Subspace::zero(d));
    Filtration::new(a, layers, "abelianizing")
}

/// Associated graded algebra with its extra grading and the projection
/// from the filtered algebra's basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebraWithProjection {
    pub graded: Arc<StructuredBialgebra>,
    /// Filtration grading of each graded basis vector.
    pub weights: Vec<u32>,
    /// Row `i` gives the coordinates of the `i`-th original basis vector in the adapted basis.
    pub project: BitMatrix,
    pub source: AdaptedFiltration,
}

impl GradedAlgebraWithProjection {
    /// `E^0` of the dual coalgebra, with the same weights on the dual basis.
    pub fn dual(&self) -> AdaptedFiltration {
        AdaptedFiltration {
            algebra: Arc::new(self.graded.dualize()),
            values: self.weights.clone(),
            change: BitMatrix::identity(self.weights.len()),
            name: format!("gr {}", self.source.name),
        }
    }

    pub fn as_adapted(&self) -> AdaptedFiltration {
        AdaptedFiltration {
            algebra: self.graded.clone(),
            values: self.weights.clone(),
            change: BitMatrix::identity(self.weights.len()),
            name: format!("gr {}", self.source.name),
        }
    }
}

pub fn associated_graded(f: &Filtration) -> Result<GradedAlgebraWithProjection, FiltrationError> {
    let report = filtration_checks(f, None);
    if !report.multiplicative {
        return Err(FiltrationError::NotMultiplicative);
    }
    let ad = f.adapted()?;
    let a = &ad.algebra;
    let d = a.dim();
    let v = &ad.values;
    let mut desc = a.description();
    if let Some(mult) = desc.mult.as_mut() {
        for i in 0..d {
            for j in 0..d {
                mult[i * d + j].retain(|&k| v[k] == v[i] + v[j]);
            }
        }
    }
    if let Some(comult) = desc.comult.as_mut() {
        if !report.hopf {
            desc.comult = None;
            desc.counit = None;
        } else {
            for (k, terms) in comult.iter_mut().enumerate() {
                terms.retain(|&(i, j)| v[i] + v[j] == v[k]);
            }
        }
    }
    desc.name = format!("gr_{} {}", f.name(), a.name());
    let graded = crate::algebras::make_algebra(desc)?;
    let project = ad.change.inverse().expect("adapted basis is a basis");
    Ok(GradedAlgebraWithProjection { graded: Arc::new(graded), weights: ad.values.clone(), project, source: ad })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub multiplicative: bool,
    pub hopf: bool,
    /// Whether `other^n ⊆ self^n` for every `n`, when `other` was given.
    pub finer_than: Option<bool>,
}

/// Multiplicativity and coproduct compatibility, checked on layer bases
/// (so it also makes sense for unnested layers).
pub fn filtration_checks(f: &Filtration, other: Option<&Filtration>) -> FiltrationReport {
    let a = f.algebra();
    let n = f.len();
    let mut multiplicative = a.has_algebra();
    if multiplicative {
        'outer: for p in 0..n {
            let lp = f.layer(p).basis();
            for q in 0..n {
                let target = f.layer(p + q);
                for x in &lp {
                    for y in f.layer(q).basis() {
                        if !target.contains(&a.multiply(x, &y)) {
                            multiplicative = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let mut hopf = a.has_coalgebra();
    if hopf {
        let d = a.dim();
        'h: for m in 0..n {
            // Σ_i F^i ⊗ F^{m-i} inside A ⊗ A
            let mut span = Vec::new();
            for i in 0..=m {
                for x in f.layer(i).basis() {
                    for y in f.layer(m - i).basis() {
                        span.push(BitVector::from_indices(
                            d * d,
                            x.ones().flat_map(|p| y.ones().map(move |q| p * d + q)),
                        ));
                    }
                }
            }
            let s = Subspace::span(d * d, &span);
            for x in f.layer(m).basis() {
                if !s.contains(&a.comultiply(&x)) {
                    hopf = false;
                    break 'h;
                }
            }
        }
    }
    let finer_than = other.map(|o| {
        (0..f.len().max(o.len())).all(|k| o.layer(k).ambient_dim() == a.dim() && f.layer(k).contains_subspace(&o.layer(k)))
    });
    FiltrationReport { multiplicative, hopf, finer_than }
}

/// Transports `fine` (a filtration of `A`) to the associated graded of
/// `coarse`: layer `m` is `⊕_n proj_n(fine^m ∩ coarse^n)`.
pub fn transport_to_graded(
    fine: &Filtration,
    coarse: &GradedAlgebraWithProjection,
) -> Result<Filtration, FiltrationError> {
    let a = fine.algebra();
    let d = a.dim();
    let cw = &coarse.weights;
    let maxw = cw.iter().copied().max().unwrap_or(0) as usize;
    // coarse layers in original coordinates: span of adapted vectors with weight >= n
    let adapted_rows = &coarse.source.change;
    let coarse_layer = |n: usize| {
        let vs: Vec<BitVector> = (0..d).filter(|&i| cw[i] as usize >= n).map(|i| adapted_rows.row(i)).collect();
        Subspace::span(d, &vs)
    };
    let mut layers = Vec::new();
    for m in 0..=fine.len() {
        let fm = fine.layer(m);
        let mut vs = Vec::new();
        for n in 0..=maxw {
            let w = fm.intersection(&coarse_layer(n))?;
            for v in w.basis() {
                let coords = coarse.project.vec_mul(&v);
                vs.push(BitVector::from_indices(d, coords.ones().filter(|&i| cw[i] as usize == n)));
            }
        }
        layers.push(Subspace::span(d, &vs));
    }
    while layers.len() > 1 && layers[layers.len() - 2].dim() == 0 {
        layers.pop();
    }
    Filtration::new(coarse.graded.clone(), layers, &format!("{} on gr {}", fine.name(), coarse.source.name))
}

impl From<crate::f2linalg::LinalgError> for FiltrationError {
    fn from(e: crate::f2linalg::LinalgError) -> Self {
        FiltrationError::Algebra(AlgebraError::Shape(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin;

    fn a1() -> Arc<StructuredBialgebra> {
        Arc::new(builtin("a1").unwrap())
    }

    #[test]
    fn a1_layer_dimensions() {
        let may = may_filtration(a1()).unwrap();
        assert_eq!(may.layer_dims(), [8, 7, 5, 3, 1, 0]);
        let ab = abelianizing_filtration(a1()).unwrap();
        assert_eq!(ab.layer_dims(), [8, 7, 6, 5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn a1_checks() {
        let may = may_filtration(a1()).unwrap();
        let ab = abelianizing_filtration(a1()).unwrap();
        for f in [&may, &ab] {
            let r = filtration_checks(f, None);
            assert!(r.multiplicative && r.hopf, "{}", f.name());
        }
        assert_eq!(filtration_checks(&ab, Some(&may)).finer_than, Some(true));
        assert_eq!(filtration_checks(&may, Some(&ab)).finer_than, Some(false));
    }

    #[test]
    fn swapped_layers_are_not_multiplicative() {
        let ab = abelianizing_filtration(a1()).unwrap();
        let mut layers = ab.layers().to_vec();
        layers.swap(1, 2);
        assert!(Filtration::new(a1(), layers.clone(), "bad").is_err());
        let bad = Filtration::new_unchecked(a1(), layers, "bad").unwrap();
        assert!(!filtration_checks(&bad, None).multiplicative);
    }

    #[test]
    fn monomial_basis_is_adapted_to_both() {
        let may = may_filtration(a1()).unwrap().adapted().unwrap();
        let ab = abelianizing_filtration(a1()).unwrap().adapted().unwrap();
        assert_eq!(may.change, BitMatrix::identity(8));
        assert_eq!(ab.change, BitMatrix::identity(8));
        assert_eq!(may.values, [0, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(ab.values, [0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn graded_pieces() {
        let may = associated_graded(&may_filtration(a1()).unwrap()).unwrap();
        assert_eq!(may.graded.fingerprint(), builtin("e0may").unwrap().fingerprint());
        let ab = associated_graded(&abelianizing_filtration(a1()).unwrap()).unwrap();
        assert_eq!(ab.graded.fingerprint(), builtin("e0ab").unwrap().fingerprint());
        // the abelianized algebra is commutative
        let g = &ab.graded;
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(g.mult_basis(i, j), g.mult_basis(j, i));
            }
        }
    }

    #[test]
    fn transported_filtration_on_may_graded() {
        let a = a1();
        let ab = abelianizing_filtration(a.clone()).unwrap();
        let may = associated_graded(&may_filtration(a).unwrap()).unwrap();
        let t = transport_to_graded(&ab, &may).unwrap();
        assert_eq!(t.layer_dims(), [8, 7, 6, 5, 4, 3, 2, 1, 0]);
        let r = filtration_checks(&t, None);
        assert!(r.multiplicative && r.hopf);
        let gr = associated_graded(&t).unwrap();
        // same products as the abelianized graded (so the duals agree as
        // coalgebras), but Sq2 stays primitive here
        let e0ab = builtin("e0ab").unwrap();
        assert_eq!(gr.graded.description().mult, e0ab.description().mult);
        assert_ne!(gr.graded.description().comult, e0ab.description().comult);
    }

    #[test]
    fn group_algebra_radical_filtration() {
        let g = Arc::new(builtin("d8_group_algebra").unwrap());
        let may = may_filtration(g).unwrap();
        assert_eq!(may.layer_dims(), [8, 7, 5, 3, 1, 0]);
        let ad = may.adapted().unwrap();
        assert_eq!(ad.layer_dims()[..5], [8, 7, 5, 3, 1]);
    }
}
