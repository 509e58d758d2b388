use std::sync::Arc;

use hochschild::algebras::builtin;
use hochschild::homology::{hh, DimTable};
use hochschild_cli::series::{compare, expand, reference, SeriesError, REFERENCES};
use proptest::prelude::*;

#[test]
fn a1_matches_both_theorem_series() {
    let t = hh(Arc::new(builtin("a1").unwrap()), 4).unwrap();
    let r = compare(&t, "hh-a1").unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.compared, 5);
    let r = compare(&t, "hh-a1-bigraded").unwrap();
    assert!(r.ok(), "{r:?}");
    assert!(r.bigraded && r.compared > 100);
    // a perturbed expression is caught at the right spot
    let r = compare(&t, "(6 + 8s + 9s^2 + 10s^3 + 8s^4/(1-s))/(1-s^4)").unwrap();
    let m = r.first_mismatch.unwrap();
    assert_eq!((m.degree, m.expected, m.actual), (vec![0], 6, 5));
}

#[test]
fn theorem_totals_expand_to_the_stated_values() {
    let s = expand(reference("hh-a1").unwrap().expression, 8, 0).unwrap();
    let got: Vec<i64> = (0..=8).map(|i| s.s_coeff(i)).collect();
    assert_eq!(got, vec![5, 8, 9, 10, 13, 16, 17, 18, 21]);
    // the bigraded series specializes to the totals at u = 1
    let b = expand(reference("hh-a1-bigraded").unwrap().expression, 5, 80).unwrap();
    let totals: Vec<i64> = (0..=5).map(|i| (0..=80).map(|j| b.coeff(i, j)).sum()).collect();
    assert_eq!(totals, got[..6].to_vec());
}

#[test]
fn small_references() {
    let mut t = DimTable::new("k", &["n"]);
    t.insert(vec![0], 1, true);
    t.n_max = Some(0);
    assert!(compare(&t, "one").unwrap().ok());
    assert!(compare(&t, "1").unwrap().ok());
    assert!(!compare(&t, "2").unwrap().ok());
    for id in ["dual-numbers", "exterior-pair", "d8-corollary", "d8-centralizers"] {
        assert!(REFERENCES.iter().any(|r| r.id == id));
    }
    assert!(matches!(reference("hh-a2"), Err(SeriesError::UnknownReference(_))));
    // unknown ids fall through to the expression parser
    assert!(matches!(compare(&t, "hh-a2"), Err(SeriesError::Parse { .. })));
    assert!(matches!(compare(&DimTable::new("", &[]), "1"), Err(SeriesError::EmptyTable)));
}

#[test]
fn lemma_series() {
    let t = hh(Arc::new(builtin("exterior1").unwrap()), 6).unwrap();
    assert!(compare(&t, "dual-numbers").unwrap().ok());
    let t = hh(Arc::new(builtin("truncpoly2").unwrap()), 4).unwrap();
    assert!(compare(&t, "exterior-pair").unwrap().ok());
}

proptest! {
    #[test]
    fn geometric_series(c in 1i64..20, k in 1u32..5) {
        // c/(1 - s^k) has c in every k-th degree
        let s = expand(&format!("{c}/(1-s^{k})"), 12, 0).unwrap();
        for i in 0..=12usize {
            let want = if i % k as usize == 0 { c } else { 0 };
            prop_assert_eq!(s.s_coeff(i), want);
        }
    }

    #[test]
    fn products_of_inverses(a in 1u32..4, b in 1u32..4) {
        // 1/((1-s^a)(1-s^b)) = 1/(1-s^a) · 1/(1-s^b)
        let x = expand(&format!("1/((1-s^{a})(1-s^{b}))"), 10, 0).unwrap();
        let y = expand(&format!("1/(1-s^{a}) · 1/(1-s^{b})"), 10, 0).unwrap();
        for i in 0..=10 {
            prop_assert_eq!(x.s_coeff(i), y.s_coeff(i));
            let direct = (0..=i).filter(|j| j % a as usize == 0 && (i - j) % b as usize == 0).count() as i64;
            prop_assert_eq!(x.s_coeff(i), direct);
        }
    }
}
