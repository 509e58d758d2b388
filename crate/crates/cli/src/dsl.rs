//! Text format for algebra structure constants.
//!
//! ```text
//! # k[x]/x^2 with x primitive
//! NAME
//! exterior1
//! GENERATORS
//! x: 1
//! BASIS
//! 1
//! x
//! MULT
//! x * x = 0
//! COMULT
//! x = 1 ⊗ x + x ⊗ 1
//! ```
//!
//! Basis words are products of generators (`x y^2`), or any name with an
//! explicit degree (`Sq2Sq1: 3`). When the basis contains `1`, it is the
//! unit and the counit is dual to it; products with `1` and `Δ(1)` may be
//! omitted. Unlisted products are zero. An optional `COUNIT` section
//! lists, as one sum, the basis words on which the counit is 1.
//! `builtin:<name>` alone selects a built-in algebra.

use std::collections::HashMap;
use std::fmt;

use hochschild::algebras::{builtin, make_algebra, AlgebraDescription, AlgebraError, StructuredBialgebra};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("unknown section {0}")]
    UnknownSection(String),
    #[error("line outside of any section")]
    NoSection,
    #[error("undeclared name {0}")]
    UndeclaredName(String),
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing coproduct of {0}")]
    MissingCoproduct(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct DslError {
    /// 1-based; 0 when the error has no location.
    pub line: usize,
    pub column: usize,
    pub kind: DslErrorKind,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
        }
    }
}

fn err(line: usize, column: usize, kind: DslErrorKind) -> DslError {
    DslError { line, column, kind }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Name,
    Generators,
    Basis,
    Mult,
    Comult,
    Counit,
}

impl Section {
    fn parse(s: &str) -> Option<Section> {
        Some(match s {
            "NAME" => Section::Name,
            "GENERATORS" => Section::Generators,
            "BASIS" => Section::Basis,
            "MULT" => Section::Mult,
            "COMULT" => Section::Comult,
            "COUNIT" => Section::Counit,
            _ => return None,
        })
    }
}

fn looks_like_header(s: &str) -> bool {
    s.len() >= 3 && s.chars().all(|c| c.is_ascii_uppercase())
}

/// A parsed description, with the source location of each table entry.
#[derive(Clone, Debug)]
pub struct ParsedAlgebra {
    pub description: AlgebraDescription,
    mult_at: HashMap<(usize, usize), (usize, usize)>,
    comult_at: HashMap<usize, (usize, usize)>,
}

/// What an algebra argument refers to.
#[derive(Clone, Debug)]
pub enum ParsedSpec {
    Builtin(String),
    Algebra(ParsedAlgebra),
}

/// A trimmed fragment of a line with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    text: &'a str,
    col: usize,
}

impl<'a> Span<'a> {
    fn new(line: &'a str) -> Self {
        Span { text: line, col: 1 }.trim()
    }

    fn trim(self) -> Self {
        let lead = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), col: self.col + self.text[..lead].chars().count() }
    }

    fn split_once(self, pat: &str) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(pat)?;
        let left = Span { text: &self.text[..i], col: self.col };
        let right_col = self.col + self.text[..i + pat.len()].chars().count();
        Some((left.trim(), Span { text: &self.text[i + pat.len()..], col: right_col }.trim()))
    }

    fn split(self, pat: &'a str) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut rest = self;
        while let Some((a, b)) = rest.split_once(pat) {
            out.push(a);
            rest = b;
        }
        out.push(rest.trim());
        out
    }
}

/// Whitespace-normalized form of a basis word.
fn canonical(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn cancel<T: Ord + Copy>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

struct Parser {
    name: Option<String>,
    generators: HashMap<String, u32>,
    basis: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, usize>,
    mult: Option<HashMap<(usize, usize), Vec<usize>>>,
    comult: Option<HashMap<usize, Vec<(usize, usize)>>>,
    mult_at: HashMap<(usize, usize), (usize, usize)>,
    comult_at: HashMap<usize, (usize, usize)>,
    comult_header: (usize, usize),
    counit: Option<Vec<usize>>,
}

impl Parser {
    fn word_degree(&self, w: Span, line: usize) -> Result<u32, DslError> {
        if w.text == "1" {
            return Ok(0);
        }
        let mut deg = 0;
        let mut col = w.col;
        for part in w.text.split(' ') {
            if part.is_empty() {
                col += 1;
                continue;
            }
            let (g, e) = match part.split_once('^') {
                Some((g, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| err(line, col, DslErrorKind::Syntax(format!("bad exponent in {part}"))))?;
                    (g, e)
                }
                None => (part, 1),
            };
            let d = self
                .generators
                .get(g)
                .ok_or_else(|| err(line, col, DslErrorKind::UndeclaredName(g.to_string())))?;
            deg += d * e;
            col += part.chars().count() + 1;
        }
        Ok(deg)
    }

    fn lookup(&self, w: Span, line: usize) -> Result<usize, DslError> {
        let c = canonical(w.text);
        self.index
            .get(&c)
            .copied()
            .ok_or_else(|| err(line, w.col, DslErrorKind::UndeclaredName(c)))
    }

    fn sum<T>(&self, rhs: Span, line: usize, term: impl Fn(&Self, Span) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        if rhs.text == "0" {
            return Ok(Vec::new());
        }
        if rhs.text.is_empty() {
            return Err(err(line, rhs.col, DslErrorKind::Syntax("empty right-hand side".into())));
        }
        rhs.split("+").into_iter().map(|t| term(self, t)).collect()
    }

    fn line(&mut self, section: Section, s: Span, line: usize) -> Result<(), DslError> {
        match section {
            Section::Name => {
                if self.name.is_some() {
                    return Err(err(line, s.col, DslErrorKind::Duplicate("NAME".into())));
                }
                self.name = Some(s.text.to_string());
            }
            Section::Generators => {
                let (g, d) = s
                    .split_once(":")
                    .ok_or_else(|| err(line, s.col, DslErrorKind::Syntax("expected `name: degree`".into())))?;
                if !is_ident(g.text) {
                    return Err(err(line, g.col, DslErrorKind::Syntax(format!("bad generator name {}", g.text))));
                }
                let deg: u32 =
                    d.text.parse().map_err(|_| err(line, d.col, DslErrorKind::Syntax(format!("bad degree {}", d.text))))?;
                if self.generators.insert(g.text.to_string(), deg).is_some() {
                    return Err(err(line, g.col, DslErrorKind::Duplicate(format!("generator {}", g.text))));
                }
            }
            Section::Basis => {
                let (w, deg) = match s.split_once(":") {
                    Some((w, d)) => {
                        let deg: u32 = d
                            .text
                            .parse()
                            .map_err(|_| err(line, d.col, DslErrorKind::Syntax(format!("bad degree {}", d.text))))?;
                        (w, deg)
                    }
                    None => (s, self.word_degree(s, line)?),
                };
                let c = canonical(w.text);
                if c.is_empty() || c.contains(['*', '=', '+', '⊗', '|']) {
                    return Err(err(line, w.col, DslErrorKind::Syntax(format!("bad basis word {c:?}"))));
                }
                if self.index.contains_key(&c) {
                    return Err(err(line, w.col, DslErrorKind::Duplicate(format!("basis word {c}"))));
                }
                self.index.insert(c.clone(), self.basis.len());
                self.basis.push(c);
                self.degrees.push(deg);
            }
            Section::Mult => {
                let (lhs, rhs) = s
                    .split_once("=")
                    .ok_or_else(|| err(line, s.col, DslErrorKind::Syntax("expected `a * b = ...`".into())))?;
                let (a, b) = lhs
                    .split_once("*")
                    .ok_or_else(|| err(line, lhs.col, DslErrorKind::Syntax("expected `a * b`".into())))?;
                let (i, j) = (self.lookup(a, line)?, self.lookup(b, line)?);
                let terms = self.sum(rhs, line, |p, t| p.lookup(t, line))?;
                if self.mult.as_mut().unwrap().insert((i, j), terms).is_some() {
                    return Err(err(line, s.col, DslErrorKind::Duplicate(format!("product {} * {}", a.text, b.text))));
                }
                self.mult_at.insert((i, j), (line, s.col));
            }
            Section::Counit => {
                if self.counit.is_some() {
                    return Err(err(line, s.col, DslErrorKind::Duplicate("counit".into())));
                }
                self.counit = Some(self.sum(s, line, |p, t| p.lookup(t, line))?);
            }
            Section::Comult => {
                let (lhs, rhs) = s
                    .split_once("=")
                    .ok_or_else(|| err(line, s.col, DslErrorKind::Syntax("expected `a = ... ⊗ ...`".into())))?;
                let k = self.lookup(lhs, line)?;
                let terms = self.sum(rhs, line, |p, t| {
                    let (l, r) = t
                        .split_once("⊗")
                        .or_else(|| t.split_once("(x)"))
                        .ok_or_else(|| err(line, t.col, DslErrorKind::Syntax("expected `a ⊗ b`".into())))?;
                    Ok((p.lookup(l, line)?, p.lookup(r, line)?))
                })?;
                if self.comult.as_mut().unwrap().insert(k, terms).is_some() {
                    return Err(err(line, s.col, DslErrorKind::Duplicate(format!("coproduct of {}", lhs.text))));
                }
                self.comult_at.insert(k, (line, s.col));
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<ParsedAlgebra, DslError> {
        let dim = self.basis.len();
        let unit = self.index.get("1").copied();
        let mult = self.mult.map(|m| {
            let mut table = vec![Vec::new(); dim * dim];
            if let Some(u) = unit {
                for i in 0..dim {
                    table[u * dim + i] = vec![i];
                    table[i * dim + u] = vec![i];
                }
            }
            for ((i, j), v) in m {
                table[i * dim + j] = cancel(v);
            }
            table
        });
        let comult = match self.comult {
            None => None,
            Some(m) => {
                let mut table = Vec::with_capacity(dim);
                for k in 0..dim {
                    match m.get(&k) {
                        Some(v) => table.push(cancel(v.clone())),
                        None if Some(k) == unit => table.push(vec![(k, k)]),
                        None => {
                            let (l, c) = self.comult_header;
                            return Err(err(l, c, DslErrorKind::MissingCoproduct(self.basis[k].clone())));
                        }
                    }
                }
                Some(table)
            }
        };
        let description = AlgebraDescription {
            name: self.name.unwrap_or_else(|| "dsl".into()),
            unit: mult.as_ref().and(unit).map(|u| vec![u]),
            counit: match self.counit {
                Some(c) if comult.is_some() => Some(cancel(c)),
                _ => comult.as_ref().and(unit).map(|u| vec![u]),
            },
            basis: self.basis,
            degrees: self.degrees,
            mult,
            comult,
        };
        Ok(ParsedAlgebra { description, mult_at: self.mult_at, comult_at: self.comult_at })
    }
}

/// Parses DSL text or a `builtin:<name>` reference.
pub fn parse_spec(text: &str) -> Result<ParsedSpec, DslError> {
    let mut meaningful = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    if let Some((line, first)) = meaningful.clone().next() {
        if let Some(name) = first.trim().strip_prefix("builtin:") {
            if let Some((l, extra)) = meaningful.nth(1) {
                return Err(err(l, Span::new(extra).col, DslErrorKind::Syntax("text after builtin reference".into())));
            }
            let name = name.trim();
            builtin(name).map_err(|e| err(line, Span::new(first).col, e.into()))?;
            return Ok(ParsedSpec::Builtin(name.to_string()));
        }
    }
    let mut p = Parser {
        name: None,
        generators: HashMap::new(),
        basis: Vec::new(),
        degrees: Vec::new(),
        index: HashMap::new(),
        mult: None,
        comult: None,
        mult_at: HashMap::new(),
        comult_at: HashMap::new(),
        comult_header: (0, 0),
        counit: None,
    };
    let mut section: Option<Section> = None;
    for (line, raw) in meaningful {
        let s = Span::new(raw);
        if looks_like_header(s.text) {
            let sec = Section::parse(s.text).ok_or_else(|| err(line, s.col, DslErrorKind::UnknownSection(s.text.into())))?;
            match sec {
                Section::Mult if p.mult.is_none() => p.mult = Some(HashMap::new()),
                Section::Comult if p.comult.is_none() => {
                    p.comult = Some(HashMap::new());
                    p.comult_header = (line, s.col);
                }
                Section::Mult | Section::Comult => {
                    return Err(err(line, s.col, DslErrorKind::Duplicate(format!("section {}", s.text))))
                }
                _ => {}
            }
            section = Some(sec);
            continue;
        }
        let sec = section.ok_or_else(|| err(line, s.col, DslErrorKind::NoSection))?;
        p.line(sec, s, line)?;
    }
    Ok(ParsedSpec::Algebra(p.finish()?))
}

impl ParsedAlgebra {
    /// Validates through `make_algebra`; grading errors point at the
    /// offending table line.
    pub fn build(&self) -> Result<StructuredBialgebra, DslError> {
        let d = &self.description;
        make_algebra(d.clone()).map_err(|e| {
            let pos = |name: &str| d.basis.iter().position(|b| b == name);
            let at = match &e {
                AlgebraError::ProductGrading { a, b, .. } | AlgebraError::Compatibility { a, b } => {
                    pos(a).zip(pos(b)).and_then(|k| self.mult_at.get(&k).copied())
                }
                AlgebraError::CoproductGrading { a, .. }
                | AlgebraError::Coassociativity { a }
                | AlgebraError::Counit { a } => pos(a).and_then(|k| self.comult_at.get(&k).copied()),
                _ => None,
            };
            let (line, column) = at.unwrap_or((0, 0));
            err(line, column, e.into())
        })
    }
}

/// Parses and validates; builtins are constructed directly.
pub fn load_algebra(text: &str) -> Result<StructuredBialgebra, DslError> {
    match parse_spec(text)? {
        ParsedSpec::Builtin(name) => builtin(&name).map_err(|e| err(0, 0, e.into())),
        ParsedSpec::Algebra(p) => p.build(),
    }
}

/// DSL text for a description; every basis word carries an explicit degree.
pub fn serialize(d: &AlgebraDescription) -> String {
    let mut out = String::new();
    out.push_str("NAME\n");
    out.push_str(&d.name);
    out.push_str("\nBASIS\n");
    for (b, deg) in d.basis.iter().zip(&d.degrees) {
        out.push_str(&format!("{b}: {deg}\n"));
    }
    let dim = d.basis.len();
    let unit = d.basis.iter().position(|b| b == "1");
    let words = |v: &[usize]| -> String {
        if v.is_empty() {
            "0".into()
        } else {
            v.iter().map(|&i| d.basis[i].as_str()).collect::<Vec<_>>().join(" + ")
        }
    };
    if let Some(m) = &d.mult {
        out.push_str("MULT\n");
        for i in 0..dim {
            for j in 0..dim {
                let v = &m[i * dim + j];
                let default: &[usize] = if Some(i) == unit {
                    &[j]
                } else if Some(j) == unit {
                    &[i]
                } else {
                    &[]
                };
                if v.as_slice() != default {
                    out.push_str(&format!("{} * {} = {}\n", d.basis[i], d.basis[j], words(v)));
                }
            }
        }
    }
    if let Some(c) = &d.comult {
        out.push_str("COMULT\n");
        for (k, v) in c.iter().enumerate() {
            if Some(k) == unit && v.as_slice() == [(k, k)] {
                continue;
            }
            let rhs = if v.is_empty() {
                "0".into()
            } else {
                v.iter()
                    .map(|&(l, r)| format!("{} ⊗ {}", d.basis[l], d.basis[r]))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            out.push_str(&format!("{} = {}\n", d.basis[k], rhs));
        }
    }
    if d.comult.is_some() {
        if let Some(c) = d.counit.as_ref().filter(|c| unit.map_or(true, |u| c.as_slice() != [u])) {
            out.push_str(&format!("COUNIT\n{}\n", words(c)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_tracked() {
        let e = parse_spec("BASIS\n1\nx: 1\nMULT\nx * zz = 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 5));
        assert_eq!(e.kind, DslErrorKind::UndeclaredName("zz".into()));
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_spec("# nothing\n\nbuiltin:a1   # the usual\n").unwrap();
        assert!(matches!(p, ParsedSpec::Builtin(n) if n == "a1"));
    }
}
