use std::collections::BTreeSet;
use std::sync::Arc;

use hochschild::algebras::{
    builtin, group_algebra, make_algebra, truncated_polynomial_hopf, FiniteGroup, GeneratorSpec, StructuredBialgebra,
};
use hochschild::complexes::{BigradedComplex, Coefficients, Direction, Normalization};
use hochschild::f2linalg::{BitMatrix, Subspace};
use hochschild::homology::{
    burghelea_check, cohh, duality_check, ext_dims, group_homology, hh, hh_with, homology_dims, DimTable,
};

fn totals(t: &DimTable, n_max: u32) -> Vec<usize> {
    (0..=n_max).map(|n| t.row_total(n)).collect()
}

fn arc(name: &str) -> Arc<StructuredBialgebra> {
    Arc::new(builtin(name).unwrap())
}

/// `F2[x, y]/(x², y²)` with both generators primitive.
fn primitive_pair() -> Arc<StructuredBialgebra> {
    let prim = |i: usize| {
        let mut g = vec![0u32; 2];
        g[i] = 1;
        vec![(g.clone(), vec![0, 0]), (vec![0, 0], g)]
    };
    Arc::new(
        truncated_polynomial_hopf("pair", &[GeneratorSpec::new("x", 1, 2, prim(0)), GeneratorSpec::new("y", 2, 2, prim(1))])
            .unwrap(),
    )
}

#[test]
fn dual_numbers() {
    let t = hh(arc("exterior1"), 8).unwrap();
    assert_eq!(totals(&t, 8), vec![2; 9]);
}

#[test]
fn two_generator_exterior_algebras() {
    let want: Vec<usize> = (0..=6).map(|n| 4 * (n + 1)).collect();
    assert_eq!(totals(&hh(primitive_pair(), 6).unwrap(), 6), want);
    // same algebra with a non-primitive coproduct on y
    assert_eq!(totals(&hh(arc("truncpoly2"), 6).unwrap(), 6), want);
}

#[test]
fn ground_field() {
    let k = Arc::new(group_algebra(&FiniteGroup::cyclic(1), "k"));
    assert_eq!(totals(&hh(k.clone(), 4).unwrap(), 4), vec![1, 0, 0, 0, 0]);
    assert_eq!(totals(&cohh(k, Coefficients::Ground, 4).unwrap(), 4), vec![1, 0, 0, 0, 0]);
}

#[test]
fn a1_total_dimensions() {
    let t = hh(arc("a1"), 4).unwrap();
    assert_eq!(totals(&t, 4), vec![5, 8, 9, 10, 13]);
    let n = hh_with(arc("a1"), 4, Normalization::Normalized).unwrap();
    assert_eq!(t.entries, n.entries);
}

#[test]
fn hh0_is_the_cocenter() {
    for name in ["a1", "e0may", "e0ab", "d8_group_algebra", "truncpoly2"] {
        let a = builtin(name).unwrap();
        let mut comm = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                let mut c = a.multiply(&x, &y);
                c.xor_assign(&a.multiply(&y, &x));
                comm.push(c);
            }
        }
        let commutators = Subspace::span(a.dim(), &comm);
        let t = hh(Arc::new(a.clone()), 0).unwrap();
        assert_eq!(t.row_total(0), a.dim() - commutators.dim(), "{name}");
    }
}

#[test]
fn euler_characteristic() {
    for name in ["a1", "e0ab", "truncpoly2"] {
        let a = arc(name);
        let cx = BigradedComplex::new(a, Direction::Chain, Coefficients::SelfCoefficients, Normalization::Normalized, 4, None)
            .unwrap();
        let h = homology_dims(&cx);
        for u in 0..=4u32 {
            // the normalized complex vanishes above n = u
            let chi_c: i64 = (0..=4usize).map(|n| (-1i64).pow(n as u32) * cx.slice_dim(n, u) as i64).sum();
            let chi_h: i64 = (0..=4u32).map(|n| (-1i64).pow(n) * h.dim(&[n, u]) as i64).sum();
            assert_eq!(chi_c, chi_h, "{name} u={u}");
        }
    }
}

#[test]
fn basis_changes_do_not_matter() {
    let a = builtin("a1").unwrap();
    let q0 = a.index_of("Q0").unwrap();
    let s21 = a.index_of("Sq2Sq1").unwrap();
    // Q0 ↦ Q0 + Sq2Sq1, and swap the two degree-3 names
    let mut m = BitMatrix::identity(a.dim());
    m.set(q0, s21, true);
    let mut names = a.basis_names().to_vec();
    names.swap(q0, s21);
    let b = a.change_basis(&m, names).unwrap();
    assert!(make_algebra(b.description()).is_ok());
    assert_eq!(hh(Arc::new(a), 3).unwrap().entries, hh(Arc::new(b), 3).unwrap().entries);
}

#[test]
fn group_homology_of_small_groups() {
    let h = |g: FiniteGroup| totals(&group_homology(&g, 4).unwrap(), 4);
    assert_eq!(h(FiniteGroup::cyclic(1)), vec![1, 0, 0, 0, 0]);
    assert_eq!(h(FiniteGroup::cyclic(2)), vec![1; 5]);
    assert_eq!(h(FiniteGroup::cyclic(4)), vec![1; 5]);
    assert_eq!(h(FiniteGroup::klein_four()), vec![1, 2, 3, 4, 5]);
    // H_1 = D8^ab ⊗ F2 = (Z/2)^2
    assert_eq!(h(FiniteGroup::dihedral8()), vec![1, 2, 3, 4, 5]);
}

#[test]
fn burghelea_decomposition() {
    let d8 = burghelea_check(&FiniteGroup::dihedral8(), 4).unwrap();
    assert!(d8.all_match());
    assert_eq!(d8.hh, vec![5, 9, 13, 17, 21]);
    let mut sizes: Vec<usize> = d8.classes.iter().map(|c| c.class_size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let cents: BTreeSet<String> = d8.classes.iter().map(|c| c.centralizer.clone()).collect();
    assert!(!cents.contains("C2"));

    let c2 = burghelea_check(&FiniteGroup::cyclic(2), 5).unwrap();
    assert!(c2.all_match());
    assert_eq!(c2.hh, vec![2; 6]);
    assert!(burghelea_check(&FiniteGroup::cyclic(1), 3).unwrap().all_match());
}

#[test]
fn dihedral_group_algebra_matches_e0may() {
    let d8 = hh(arc("d8_group_algebra"), 4).unwrap();
    let e0 = hh(arc("e0may"), 4).unwrap();
    assert_eq!(totals(&d8, 4), totals(&e0, 4));
}

#[test]
fn duality() {
    for (name, n) in [("a1", 3), ("exterior1", 6), ("e0may", 4), ("truncpoly2", 4)] {
        let r = duality_check(arc(name), n).unwrap();
        assert!(r.all_equal(), "{name}");
        assert!(!r.entries.is_empty());
    }
}

#[test]
fn ext_chart() {
    let t = ext_dims(4, 12).unwrap();
    let pts: BTreeSet<(u32, u32)> = t
        .nonzero()
        .filter(|e| e.degree[1] >= e.degree[0] && e.degree[1] - e.degree[0] <= 8)
        .map(|e| {
            assert_eq!(e.dim, 1);
            (e.degree[0], e.degree[1] - e.degree[0])
        })
        .collect();
    let want: BTreeSet<(u32, u32)> =
        [(0, 0), (1, 0), (1, 1), (2, 0), (2, 2), (3, 0), (3, 4), (4, 0), (4, 4), (4, 8)].into();
    assert_eq!(pts, want);
    // the ground cobar complex of A(1)_* gives the same groups
    let full = cohh(arc("a1_dual"), Coefficients::Ground, 3).unwrap();
    for e in t.entries.iter().filter(|e| e.degree[0] <= 3) {
        assert_eq!(full.dim(&e.degree), e.dim);
    }
}

#[test]
fn dim_table_serde_roundtrip() {
    let t = hh(arc("exterior1"), 3).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    let back: DimTable = serde_json::from_str(&s).unwrap();
    assert_eq!(back.entries, t.entries);
    assert_eq!(back.marginal(&[0]).row_totals(), t.row_totals());
}
