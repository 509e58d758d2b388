use std::collections::BTreeMap;
use std::sync::Arc;

use hochschild::algebras::{
    builtin, builtin_names, group_algebra, make_algebra, verify_dihedral_iso, AlgebraError, FiniteGroup,
};
use hochschild::filtrations::{
    abelianizing_filtration, associated_graded, filtration_checks, may_filtration, Filtration,
};

fn poincare(name: &str) -> BTreeMap<u32, usize> {
    let a = builtin(name).unwrap();
    let mut m = BTreeMap::new();
    for &d in a.degrees() {
        *m.entry(d).or_default() += 1;
    }
    m
}

#[test]
fn builtins_revalidate() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let again = make_algebra(a.description()).unwrap();
        assert_eq!(again.fingerprint(), a.fingerprint(), "{name}");
    }
}

#[test]
fn dualize_is_an_involution() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let (x, y) = (a.description(), a.dualize().dualize().description());
        assert_eq!(x.mult, y.mult, "{name}");
        assert_eq!(x.comult, y.comult, "{name}");
        assert_eq!(x.unit, y.unit);
        assert_eq!(x.counit, y.counit);
    }
}

#[test]
fn group_algebras_are_bialgebras() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::klein_four(), FiniteGroup::dihedral8()] {
        let a = group_algebra(&g, "g");
        assert!(make_algebra(a.description()).is_ok());
    }
}

#[test]
fn a1_and_exterior_graded_vector_spaces() {
    let expect: BTreeMap<u32, usize> = [(0, 1), (1, 1), (2, 1), (3, 2), (4, 1), (5, 1), (6, 1)].into();
    assert_eq!(poincare("a1"), expect);
    assert_eq!(poincare("e0ab"), expect);
}

#[test]
fn milnor_element() {
    let a = builtin("a1").unwrap();
    let e = |n: &str| a.element(n).unwrap();
    let mut q = a.multiply(&e("Sq1"), &e("Sq2"));
    q.xor_assign(&a.multiply(&e("Sq2"), &e("Sq1")));
    assert_eq!(q, e("Q0"));
    assert_eq!(a.degree(a.index_of("Q0").unwrap()), 3);
    assert_eq!(a.degree(a.index_of("Sq2").unwrap()), 2);
    // Sq2 Sq2 = Sq1 Sq2 Sq1 ≠ 0
    assert!(!a.multiply(&e("Sq2"), &e("Sq2")).is_zero());
}

#[test]
fn broken_structures_are_rejected() {
    let mut d = builtin("exterior1").unwrap().description();
    // x * x = x: wrong degree
    d.mult.as_mut().unwrap()[3] = vec![1];
    assert!(matches!(make_algebra(d), Err(AlgebraError::ProductGrading { .. })));
}

#[test]
fn dihedral_isomorphism() {
    let iso = verify_dihedral_iso().unwrap();
    assert_eq!(iso.matrix.rank(), 8);
}

fn check_filtration(f: &Filtration) {
    let a = f.algebra();
    let ad = f.adapted().unwrap();
    // Σ_t dim gr_t = dim A
    let dims = f.layer_dims();
    let graded: usize = dims.windows(2).map(|w| w[0] - w[1]).sum();
    assert_eq!(graded + dims.last().copied().unwrap_or(0), a.dim());
    // value(xy) ≥ value(x) + value(y) on basis pairs
    let v = &ad.values;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for &k in ad.algebra.mult_basis(i, j) {
                assert!(v[k as usize] >= v[i] + v[j]);
            }
        }
    }
    let gr = associated_graded(f).unwrap();
    assert!(make_algebra(gr.graded.description()).is_ok());
    assert_eq!(gr.weights.len(), a.dim());
}

#[test]
fn a1_filtrations() {
    let a1 = Arc::new(builtin("a1").unwrap());
    let may = may_filtration(a1.clone()).unwrap();
    let ab = abelianizing_filtration(a1.clone()).unwrap();
    check_filtration(&may);
    check_filtration(&ab);
    assert_eq!(may.layer_dims(), vec![8, 7, 5, 3, 1, 0]);
    assert_eq!(ab.layer_dims(), vec![8, 7, 6, 5, 4, 3, 2, 1, 0]);
    let report = filtration_checks(&ab, Some(&may));
    assert!(report.multiplicative && report.hopf && report.finer_than == Some(true));
    for (f, name) in [(&may, "e0may"), (&ab, "e0ab")] {
        let gr = associated_graded(f).unwrap();
        let e0 = builtin(name).unwrap();
        let mut degs = gr.graded.degrees().to_vec();
        let mut want = e0.degrees().to_vec();
        degs.sort();
        want.sort();
        assert_eq!(degs, want);
        // same number of nonzero products of basis vectors
        let count = |a: &hochschild::algebras::StructuredBialgebra| {
            (0..a.dim()).flat_map(|i| (0..a.dim()).map(move |j| (i, j))).filter(|&(i, j)| !a.mult_basis(i, j).is_empty()).count()
        };
        assert_eq!(count(&gr.graded), count(&e0), "{name}");
    }
}

#[test]
fn abelianizing_filtration_needs_a1() {
    assert!(abelianizing_filtration(Arc::new(builtin("exterior1").unwrap())).is_err());
}
