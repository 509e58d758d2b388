use std::sync::Arc;

use hochschild::algebras::builtin;
use hochschild::complexes::{Coefficients, FilteredComplex, Normalization};
use hochschild::homology::Engine;
use hochschild::specseq::{
    convergence_check, page_dim_from_subspaces, pages, probe_differential, probe_equals, Sequence, SequenceKind,
};

fn seq(kind: SequenceKind, s_max: usize) -> Sequence {
    Sequence::a1(kind, s_max, Normalization::Full).unwrap()
}

#[test]
fn abelianizing_rows() {
    let s = seq(SequenceKind::Abelianizing, 4);
    let p = s.pages(None).unwrap();
    // monomials of F2[x10]/x10^4 ⊗ E(x20) ⊗ P(h10, h11, h20) in row s
    let e1: Vec<usize> = (0..=4).map(|s| 8 * (s + 1) * (s + 2) / 2).collect();
    assert_eq!(p.row_totals(1), e1);
    assert_eq!(p.row_totals(2), vec![5, 8, 11, 14, 17]);
    assert_eq!(p.row_totals(3), vec![5, 8, 9, 10, 13]);
    assert_eq!(p.row_totals(p.r_max), vec![5, 8, 9, 10, 13]);
    for r in 3..=p.r_max {
        for row in 0..=4 {
            assert_eq!(p.differential_rank(r, row), 0);
        }
    }
    assert!(s.e1_check(&p).unwrap().ok());
    assert!(convergence_check(&p, &s.abutment()).ok());
}

#[test]
fn may_sequences() {
    let s = seq(SequenceKind::HhMay, 3);
    let p = s.pages(None).unwrap();
    assert!(s.e1_check(&p).unwrap().ok());
    assert_eq!(p.row_totals(2), vec![5, 8, 9, 10]);
    assert!(convergence_check(&p, &s.abutment()).ok());

    let g = seq(SequenceKind::HhMayGround, 4);
    let p = g.pages(None).unwrap();
    assert!(g.e1_check(&p).unwrap().ok());
    assert_eq!(p.row_totals(p.r_max), vec![1, 2, 2, 2, 3]);
    assert!(convergence_check(&p, &g.abutment()).ok());
}

#[test]
fn transported_sequence_collapses_at_e2() {
    let s = seq(SequenceKind::AbelianizingToMay, 3);
    let p = s.pages(None).unwrap();
    assert!(s.e1_check(&p).unwrap().ok());
    assert_eq!(p.row_totals(1), vec![8, 24, 48, 80]);
    for r in 2..=p.r_max {
        for row in 0..=3 {
            assert_eq!(p.differential_rank(r, row), 0);
        }
    }
    assert!(convergence_check(&p, &s.abutment()).ok());
}

#[test]
fn page_bookkeeping() {
    for kind in SequenceKind::all() {
        let s = seq(kind, 3);
        let p = s.pages(None).unwrap();
        for d in p.tridegrees() {
            for r in 0..p.r_max {
                let next = p.dim(r, d) as i64 - p.rank_out(r, d) as i64 - p.rank_in(r, d) as i64;
                assert_eq!(p.dim(r + 1, d) as i64, next, "{kind:?} r={r} {d:?}");
            }
            // every differential preserves u
            for r in 1..=p.r_max {
                if p.rank_out(r, d) > 0 {
                    assert_eq!(p.target(r, d).unwrap().2, d.2);
                }
            }
        }
    }
}

#[test]
fn pages_agree_with_subquotients() {
    let s = seq(SequenceKind::HhMay, 2);
    let p = s.pages(None).unwrap();
    for d in p.tridegrees().filter(|d| d.2 <= 6) {
        for r in 1..=3 {
            assert_eq!(p.dim(r, d), page_dim_from_subspaces(&s.filtered, r, d).unwrap(), "r={r} {d:?}");
        }
    }
}

#[test]
fn one_jump_filtration_is_trivial() {
    let s = seq(SequenceKind::Abelianizing, 3);
    let flat = FilteredComplex { complex: s.filtered.complex.clone(), values: vec![0; 8], name: "flat".into() };
    let p = pages(&flat, 3, None).unwrap();
    let h = Engine::default().homology_dims(&flat.complex);
    assert_eq!(p.row_totals(1), h.row_totals()[..4].to_vec());
    assert!(convergence_check(&p, &h).ok());
}

#[test]
fn named_differentials() {
    let s = seq(SequenceKind::Abelianizing, 3);
    let reg = s.registry().unwrap();
    let f = &s.filtered;
    let x10 = reg.get("x10").unwrap().cochain.clone();
    let x20 = reg.get("x20").unwrap().cochain.clone();
    let h20 = reg.get("h20").unwrap().cochain.clone();

    let d = probe_differential(f, &x10, 1, Some(&reg)).unwrap();
    assert!(d.is_zero);

    let d = probe_differential(f, &x20, 1, Some(&reg)).unwrap();
    assert_eq!(d.raw, "xi1^2 ⊗ xi1 + xi1 ⊗ xi1^2");
    assert!(probe_equals(f, &x20, 1, &reg, &[&["x10", "h11"], &["x10", "x10", "h10"]]).unwrap());
    assert!(!probe_equals(f, &x20, 1, &reg, &[&["x10", "h11"]]).unwrap());

    let d = probe_differential(f, &h20, 1, Some(&reg)).unwrap();
    assert_eq!(d.raw, "1 ⊗ xi1 ⊗ xi1^2");
    assert_eq!(d.expression.as_deref(), Some("h10 h11"));

    let b20 = reg.product(&["h20", "h20"]).unwrap();
    let d = probe_differential(f, &b20, 2, Some(&reg)).unwrap();
    assert_eq!(d.target, (3, 6, 6));
    assert!(!d.is_zero);
    assert!(probe_equals(f, &b20, 2, &reg, &[&["h11", "h11", "h11"]]).unwrap());
    // b20 does not support a d1
    assert!(probe_differential(f, &b20, 1, Some(&reg)).unwrap().is_zero);
}

#[test]
fn leibniz_on_probes() {
    let s = seq(SequenceKind::Abelianizing, 3);
    let reg = s.registry().unwrap();
    let f = &s.filtered;
    // d1(x10 h20) = x10 h10 h11, d1(x10 x20) = x10^2 h11 + x10^3 h10
    let p = reg.product(&["x10", "h20"]).unwrap();
    assert!(probe_equals(f, &p, 1, &reg, &[&["x10", "h10", "h11"]]).unwrap());
    let q = reg.product(&["x10", "x20"]).unwrap();
    assert!(probe_equals(f, &q, 1, &reg, &[&["x10", "x10", "h11"], &["x10", "x10", "x10", "h10"]]).unwrap());
    // d1(h11 h20) = h10 h11^2
    let r = reg.product(&["h11", "h20"]).unwrap();
    assert!(probe_equals(f, &r, 1, &reg, &[&["h10", "h11", "h11"]]).unwrap());
}

#[test]
fn may_on_a_generic_algebra() {
    let a = Arc::new(builtin("truncpoly2").unwrap());
    let s = Sequence::new(a, SequenceKind::HhMay, 3, Normalization::Full).unwrap();
    let p = s.pages(None).unwrap();
    assert!(s.e1_check(&p).unwrap().ok());
    assert!(convergence_check(&p, &s.abutment()).ok());
    assert!(Sequence::new(Arc::new(builtin("exterior1").unwrap()), SequenceKind::Abelianizing, 2, Normalization::Full)
        .is_err());
    assert_eq!(s.filtered.complex.coefficients(), Coefficients::SelfCoefficients);
}
