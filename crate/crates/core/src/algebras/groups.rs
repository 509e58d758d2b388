//! Finite groups given by multiplication tables, and their group algebras.

use std::collections::{BTreeMap, VecDeque};

use super::{make_algebra, AlgebraDescription, AlgebraError, StructuredBialgebra};
use crate::f2linalg::{BitMatrix, BitVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<u32>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[a * n + b] = ab`).
    pub fn from_table(names: Vec<String>, table: Vec<u32>) -> Result<Self, AlgebraError> {
        let n = names.len();
        if table.len() != n * n {
            return Err(AlgebraError::Group(format!("table has {} entries for order {}", table.len(), n)));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(AlgebraError::Group("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| AlgebraError::Group("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a * n + b] as usize == identity) {
                return Err(AlgebraError::Group(format!("{} has no inverse", names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    let l = table[table[a * n + b] as usize * n + c];
                    let r = table[a * n + table[b * n + c] as usize];
                    if l != r {
                        return Err(AlgebraError::Group("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
        let table = (0..n * n).map(|p| ((p / n + p % n) % n) as u32).collect();
        Self::from_table(names, table).expect("cyclic group")
    }

    pub fn klein_four() -> Self {
        let names = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..16).map(|p| ((p / 4) ^ (p % 4)) as u32).collect();
        Self::from_table(names, table).expect("Klein four-group")
    }

    /// Dihedral group of order 8, elements `y^i x^j` with `x y x = y^{-1}`.
    pub fn dihedral8() -> Self {
        let names = (0..8)
            .map(|k| {
                let (i, j) = (k % 4, k / 4);
                match (i, j) {
                    (0, 0) => "1".to_string(),
                    (0, 1) => "x".to_string(),
                    (1, 0) => "y".to_string(),
                    (i, 0) => format!("y{i}"),
                    (1, 1) => "yx".to_string(),
                    (i, _) => format!("y{i}x"),
                }
            })
            .collect();
        let table = (0..64)
            .map(|p| {
                let (a, b) = (p / 8, p % 8);
                let (i, j, k, l) = (a % 4, a / 4, b % 4, b / 4);
                let e = if j == 0 { (i + k) % 4 } else { (i + 4 - k) % 4 };
                (e + 4 * ((j + l) % 2)) as u32
            })
            .collect();
        Self::from_table(names, table).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity).expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup on `elements` (which must be closed), re-indexed.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup, AlgebraError> {
        let pos: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for &a in elements {
            for &b in elements {
                let p = pos
                    .get(&self.mul(a, b))
                    .ok_or_else(|| AlgebraError::Group("subset is not closed".into()))?;
                table.push(*p as u32);
            }
        }
        let names = elements.iter().map(|&g| self.names[g].clone()).collect();
        FiniteGroup::from_table(names, table)
    }

    /// Isomorphism type for groups of order at most 8.
    pub fn small_group_name(&self) -> String {
        let n = self.order();
        let mut orders: Vec<usize> = (0..n).map(|g| self.element_order(g)).collect();
        orders.sort_unstable();
        let max = *orders.last().unwrap_or(&1);
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        let name = match (n, self.is_abelian()) {
            (1, _) => "C1",
            (_, true) if max == n => return format!("C{n}"),
            (4, true) => "C2xC2",
            (8, true) if max == 4 => "C4xC2",
            (8, true) => "C2xC2xC2",
            (6, false) => "S3",
            (8, false) if involutions == 5 => "D8",
            (8, false) => "Q8",
            _ => return format!("order {n}"),
        };
        name.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub elements: Vec<usize>,
    pub centralizer: Vec<usize>,
}

/// Conjugacy classes with the centralizer of each representative.
pub fn conjugacy_data(g: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let mut elements: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, r), g.inverse(h))).collect();
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            seen[e] = true;
        }
        let centralizer = (0..n).filter(|&h| g.mul(h, r) == g.mul(r, h)).collect();
        out.push(ConjugacyClass { representative: r, elements, centralizer });
    }
    out
}

/// `F2[G]` with `Δg = g ⊗ g`, `ε(g) = 1`; all degrees are 0.
pub fn group_algebra(g: &FiniteGroup, name: &str) -> StructuredBialgebra {
    let n = g.order();
    make_algebra(AlgebraDescription {
        name: name.into(),
        basis: g.names().to_vec(),
        degrees: vec![0; n],
        mult: Some((0..n * n).map(|p| vec![g.mul(p / n, p % n)]).collect()),
        comult: Some((0..n).map(|a| vec![(a, a)]).collect()),
        unit: Some(vec![g.identity()]),
        counit: Some((0..n).collect()),
    })
    .expect("group algebras are bialgebras")
}

/// Result of a successful dihedral isomorphism check.
#[derive(Clone, Debug)]
pub struct DihedralIso {
    /// Row `g` is the image of the group element `g`.
    pub matrix: BitMatrix,
    /// Word in the generators `a`, `b` used for each group element.
    pub words: Vec<String>,
}

/// Checks that `a ↦ 1 + s1`, `b ↦ 1 + s2` extends to an algebra isomorphism
/// `F2[D8] → target`, where `a = x` and `b = yx` generate D8 with `a² = b² = 1`.
pub fn verify_dihedral_iso_into(
    target: &StructuredBialgebra,
    s1: &BitVector,
    s2: &BitVector,
) -> Result<DihedralIso, AlgebraError> {
    let g = FiniteGroup::dihedral8();
    if target.dim() != g.order() {
        return Err(AlgebraError::Dihedral(format!("target has dimension {}", target.dim())));
    }
    let unit = target.unit().ok_or(AlgebraError::MissingStructure("unit"))?.clone();
    let gens = [g.index_of("x").unwrap(), g.index_of("yx").unwrap()];
    let imgs = [s1, s2].map(|s| {
        let mut v = unit.clone();
        v.xor_assign(s);
        v
    });
    // breadth-first words from the identity
    let mut image: Vec<Option<BitVector>> = vec![None; g.order()];
    let mut words = vec![String::new(); g.order()];
    image[g.identity()] = Some(unit.clone());
    words[g.identity()] = "1".into();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(h) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let hs = g.mul(h, s);
            if image[hs].is_none() {
                image[hs] = Some(target.multiply(image[h].as_ref().unwrap(), &imgs[k]));
                let letter = if k == 0 { "a" } else { "b" };
                words[hs] = if words[h] == "1" { letter.to_string() } else { format!("{}{letter}", words[h]) };
                queue.push_back(hs);
            }
        }
    }
    let image: Vec<BitVector> = image.into_iter().map(|v| v.expect("generators generate D8")).collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if target.multiply(&image[a], &image[b]) != image[g.mul(a, b)] {
                return Err(AlgebraError::Dihedral(format!(
                    "f({})f({}) != f({})",
                    g.names()[a],
                    g.names()[b],
                    g.names()[g.mul(a, b)]
                )));
            }
        }
    }
    let matrix = BitMatrix::from_rows(target.dim(), &image);
    if matrix.rank() != g.order() {
        return Err(AlgebraError::Dihedral("map is not bijective".into()));
    }
    Ok(DihedralIso { matrix, words })
}

/// The dihedral isomorphism into the May associated graded of A(1).
pub fn verify_dihedral_iso() -> Result<DihedralIso, AlgebraError> {
    let e0 = super::builtin("e0may")?;
    let s1 = e0.element("Sq1").unwrap();
    let s2 = e0.element("Sq2").unwrap();
    verify_dihedral_iso_into(&e0, &s1, &s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_conjugacy_classes() {
        let g = FiniteGroup::dihedral8();
        assert_eq!(g.small_group_name(), "D8");
        let classes = conjugacy_data(&g);
        assert_eq!(classes.len(), 5);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.centralizer.len()).collect();
        sizes.sort_unstable();
        // class sizes are 1, 1, 2, 2, 2, so no centralizer has order 2
        assert_eq!(sizes, [4, 4, 4, 8, 8]);
        for c in &classes {
            assert_eq!(c.elements.len() * c.centralizer.len(), 8);
        }
        let mut types: Vec<String> =
            classes.iter().map(|c| g.subgroup(&c.centralizer).unwrap().small_group_name()).collect();
        types.sort();
        assert_eq!(types, ["C2xC2", "C2xC2", "C4", "D8", "D8"]);
        let total: usize = classes.iter().map(|c| c.elements.len()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn small_groups() {
        assert_eq!(FiniteGroup::cyclic(4).small_group_name(), "C4");
        assert_eq!(FiniteGroup::cyclic(2).small_group_name(), "C2");
        assert_eq!(FiniteGroup::klein_four().small_group_name(), "C2xC2");
        assert!(FiniteGroup::from_table(vec!["a".into(), "b".into()], vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn dihedral_iso_onto_may_graded() {
        let iso = verify_dihedral_iso().unwrap();
        assert_eq!(iso.matrix.rank(), 8);
    }

    #[test]
    fn no_dihedral_iso_onto_a1() {
        // (1 + Sq2)^2 = 1 + Sq2 Sq2 != 1 in A(1)
        let a = super::super::builtin("a1").unwrap();
        let r = verify_dihedral_iso_into(&a, &a.element("Sq1").unwrap(), &a.element("Sq2").unwrap());
        assert!(matches!(r, Err(AlgebraError::Dihedral(_))));
    }
}
