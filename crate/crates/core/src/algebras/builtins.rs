//! Built-in algebras.

use super::{group_algebra, make_algebra, AlgebraDescription, AlgebraError, FiniteGroup, StructuredBialgebra};

/// A generator of a truncated polynomial Hopf algebra.
///
/// `height` is the truncation exponent (a power of two for the coproduct to
/// be multiplicative). `coproduct` lists the pairs of exponent vectors in
/// `Δ(g)`.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub height: u32,
    pub coproduct: Vec<(Vec<u32>, Vec<u32>)>,
}

impl GeneratorSpec {
    pub fn new(name: &str, degree: u32, height: u32, coproduct: Vec<(Vec<u32>, Vec<u32>)>) -> Self {
        GeneratorSpec { name: name.into(), degree, height, coproduct }
    }
}

/// `F2[g_0, ...]/(g_i^{h_i})` with coproducts given on generators.
///
/// The monomial `g^e` gets index `e_0 + h_0 (e_1 + h_1 (...))`.
pub fn truncated_polynomial_hopf(name: &str, gens: &[GeneratorSpec]) -> Result<StructuredBialgebra, AlgebraError> {
    let heights: Vec<u32> = gens.iter().map(|g| g.height).collect();
    let dim: usize = heights.iter().map(|&h| h as usize).product();
    let index = |e: &[u32]| -> Option<usize> {
        let (mut idx, mut stride) = (0usize, 1usize);
        for (&x, &h) in e.iter().zip(&heights) {
            if x >= h {
                return None;
            }
            idx += x as usize * stride;
            stride *= h as usize;
        }
        Some(idx)
    };
    let exps = |mut i: usize| -> Vec<u32> {
        heights
            .iter()
            .map(|&h| {
                let x = (i % h as usize) as u32;
                i /= h as usize;
                x
            })
            .collect()
    };
    let names: Vec<String> = (0..dim)
        .map(|i| {
            let e = exps(i);
            let parts: Vec<String> = gens
                .iter()
                .zip(&e)
                .filter(|(_, &x)| x > 0)
                .map(|(g, &x)| if x == 1 { g.name.clone() } else { format!("{}^{}", g.name, x) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        })
        .collect();
    let degrees: Vec<u32> = (0..dim).map(|i| exps(i).iter().zip(gens).map(|(&x, g)| x * g.degree).sum()).collect();
    let mul_mono = |a: &[u32], b: &[u32]| -> Option<Vec<u32>> {
        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        index(&s).map(|_| s)
    };
    let mult: Vec<Vec<usize>> = (0..dim * dim)
        .map(|p| {
            let (a, b) = (exps(p / dim), exps(p % dim));
            mul_mono(&a, &b).and_then(|s| index(&s)).into_iter().collect()
        })
        .collect();

    // Δ on monomials: product of generator coproducts in A ⊗ A.
    type Tensor = Vec<(usize, usize)>;
    let tensor_mul = |x: &Tensor, y: &Tensor| -> Tensor {
        let mut out = Vec::new();
        for &(a, b) in x {
            for &(c, d) in y {
                let l = mult[a * dim + c].first().copied();
                let r = mult[b * dim + d].first().copied();
                if let (Some(l), Some(r)) = (l, r) {
                    out.push((l, r));
                }
            }
        }
        super::cancel(out)
    };
    let mut gen_co: Vec<Tensor> = Vec::new();
    for g in gens {
        let mut t = Vec::new();
        for (l, r) in &g.coproduct {
            let (Some(li), Some(ri)) = (index(l), index(r)) else {
                return Err(AlgebraError::Shape(format!("coproduct term of {} leaves the truncation", g.name)));
            };
            t.push((li, ri));
        }
        gen_co.push(super::cancel(t));
    }
    let one = index(&vec![0; gens.len()]).unwrap();
    let comult: Vec<Vec<(usize, usize)>> = (0..dim)
        .map(|i| {
            let e = exps(i);
            let mut acc: Tensor = vec![(one, one)];
            for (k, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    acc = tensor_mul(&acc, &gen_co[k]);
                }
            }
            acc
        })
        .collect();
    make_algebra(AlgebraDescription {
        name: name.into(),
        basis: names,
        degrees,
        mult: Some(mult),
        comult: Some(comult),
        unit: Some(vec![one]),
        counit: Some(vec![one]),
    })
}

fn prim(n: usize, k: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut g = vec![0; n];
    g[k] = 1;
    vec![(g.clone(), vec![0; n]), (vec![0; n], g)]
}

fn a1_dual() -> StructuredBialgebra {
    let mut xi2 = prim(2, 1);
    xi2.push((vec![1, 0], vec![2, 0]));
    truncated_polynomial_hopf(
        "a1_dual",
        &[GeneratorSpec::new("xi1", 1, 4, prim(2, 0)), GeneratorSpec::new("xi2", 3, 2, xi2)],
    )
    .expect("A(1)* is a Hopf algebra")
}

fn e0may_dual() -> StructuredBialgebra {
    let mut xi20 = prim(3, 2);
    xi20.push((vec![1, 0, 0], vec![0, 1, 0]));
    truncated_polynomial_hopf(
        "e0may_dual",
        &[
            GeneratorSpec::new("xi10", 1, 2, prim(3, 0)),
            GeneratorSpec::new("xi11", 2, 2, prim(3, 1)),
            GeneratorSpec::new("xi20", 3, 2, xi20),
        ],
    )
    .expect("May E0 of A(1)* is a Hopf algebra")
}

fn e0ab_dual() -> StructuredBialgebra {
    truncated_polynomial_hopf(
        "e0ab_dual",
        &[GeneratorSpec::new("xi10", 1, 4, prim(2, 0)), GeneratorSpec::new("xi20", 3, 2, prim(2, 1))],
    )
    .expect("abelianized E0 of A(1)* is a Hopf algebra")
}

fn renamed(a: StructuredBialgebra, name: &str, names: &[&str]) -> StructuredBialgebra {
    a.with_name(name).with_basis_names(names.iter().map(|s| s.to_string()).collect()).expect("basis size")
}

pub fn builtin_names() -> &'static [&'static str] {
    &["a1", "a1_dual", "e0may", "e0may_dual", "e0ab", "e0ab_dual", "d8_group_algebra", "exterior1", "truncpoly2"]
}

pub fn builtin(name: &str) -> Result<StructuredBialgebra, AlgebraError> {
    Ok(match name {
        "a1_dual" => a1_dual(),
        // Dual monomial basis: (xi1)* = Sq1, (xi1^2)* = Sq2, (xi1^3)* = Sq2Sq1, (xi2)* = Q0, ...
        "a1" => renamed(
            a1_dual().dualize(),
            "a1",
            &["1", "Sq1", "Sq2", "Sq2Sq1", "Q0", "Sq1Q0", "Sq2Q0", "Sq1Sq2Q0"],
        ),
        "e0may_dual" => e0may_dual(),
        "e0may" => renamed(
            e0may_dual().dualize(),
            "e0may",
            &["1", "Sq1", "Sq2", "Sq2Sq1", "Q0", "Sq1Q0", "Sq2Q0", "Sq1Sq2Q0"],
        ),
        "e0ab_dual" => e0ab_dual(),
        "e0ab" => renamed(
            e0ab_dual().dualize(),
            "e0ab",
            &["1", "Sq1", "Sq2", "Sq2Sq1", "Q0", "Sq1Q0", "Sq2Q0", "Sq1Sq2Q0"],
        ),
        "d8_group_algebra" => group_algebra(&FiniteGroup::dihedral8(), "d8_group_algebra"),
        "exterior1" => truncated_polynomial_hopf("exterior1", &[GeneratorSpec::new("x", 1, 2, prim(1, 0))])?,
        "truncpoly2" => {
            let mut y = prim(2, 1);
            y.push((vec![1, 0], vec![1, 0]));
            truncated_polynomial_hopf(
                "truncpoly2",
                &[GeneratorSpec::new("x", 1, 2, prim(2, 0)), GeneratorSpec::new("y", 2, 2, y)],
            )?
        }
        other => return Err(AlgebraError::UnknownBuiltin(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_construct() {
        for n in builtin_names() {
            let a = builtin(n).unwrap();
            assert!(a.has_algebra(), "{n}");
            assert!(a.has_coalgebra(), "{n}");
        }
        assert!(matches!(builtin("nope"), Err(AlgebraError::UnknownBuiltin(_))));
    }

    #[test]
    fn monomial_indexing() {
        let d = builtin("a1_dual").unwrap();
        let names: Vec<&str> = d.basis_names().iter().map(String::as_str).collect();
        assert_eq!(names, ["1", "xi1", "xi1^2", "xi1^3", "xi2", "xi1 xi2", "xi1^2 xi2", "xi1^3 xi2"]);
    }

    #[test]
    fn truncpoly2_is_not_primitively_generated() {
        let t = builtin("truncpoly2").unwrap();
        assert_eq!(t.comult_basis(t.index_of("y").unwrap()).len(), 3);
    }
}
