//! Exact power-series expansion of rational functions in `s` and `u`.
//!
//! Expressions use `+ - * / ^`, parentheses, non-negative integers and the
//! variables `s`, `u`; juxtaposition multiplies (`3s^2u`), and `·` is
//! accepted for `*`. Division is by series whose constant term is `±1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use hochschild::homology::DimTable;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by a series with constant term {0}")]
    NotInvertible(i64),
    #[error("coefficient overflow")]
    Overflow,
    #[error("unknown reference series {0}")]
    UnknownReference(String),
    #[error("table has no axes")]
    EmptyTable,
}

/// A power series truncated to `s^i u^j` with `i ≤ s_max`, `j ≤ u_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub s_max: usize,
    pub u_max: usize,
    coeffs: Vec<i64>,
}

impl Series {
    pub fn zero(s_max: usize, u_max: usize) -> Self {
        Series { s_max, u_max, coeffs: vec![0; (s_max + 1) * (u_max + 1)] }
    }

    pub fn constant(c: i64, s_max: usize, u_max: usize) -> Self {
        let mut z = Self::zero(s_max, u_max);
        z.coeffs[0] = c;
        z
    }

    fn monomial(i: usize, j: usize, s_max: usize, u_max: usize) -> Self {
        let mut z = Self::zero(s_max, u_max);
        if i <= s_max && j <= u_max {
            z.coeffs[i * (u_max + 1) + j] = 1;
        }
        z
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        if i > self.s_max || j > self.u_max {
            0
        } else {
            self.coeffs[i * (self.u_max + 1) + j]
        }
    }

    /// Coefficient of `s^i` after setting `u = 1`.
    pub fn s_coeff(&self, i: usize) -> i64 {
        (0..=self.u_max).map(|j| self.coeff(i, j)).sum()
    }

    fn zip(&self, o: &Series, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Series, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(SeriesError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Series { coeffs, ..*self })
    }

    pub fn add(&self, o: &Series) -> Result<Series, SeriesError> {
        self.zip(o, i64::checked_add)
    }

    pub fn sub(&self, o: &Series) -> Result<Series, SeriesError> {
        self.zip(o, i64::checked_sub)
    }

    pub fn mul(&self, o: &Series) -> Result<Series, SeriesError> {
        let w = self.u_max + 1;
        let mut out = Series::zero(self.s_max, self.u_max);
        for i1 in 0..=self.s_max {
            for j1 in 0..=self.u_max {
                let a = self.coeffs[i1 * w + j1];
                if a == 0 {
                    continue;
                }
                for i2 in 0..=self.s_max - i1 {
                    for j2 in 0..=self.u_max - j1 {
                        let b = o.coeffs[i2 * w + j2];
                        if b == 0 {
                            continue;
                        }
                        let slot = &mut out.coeffs[(i1 + i2) * w + j1 + j2];
                        *slot = a.checked_mul(b).and_then(|p| slot.checked_add(p)).ok_or(SeriesError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, for a constant term of `±1`.
    pub fn inverse(&self) -> Result<Series, SeriesError> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(SeriesError::NotInvertible(c0));
        }
        // g = c0 (1 - (c0 f - 1) g) solved degree by degree
        let w = self.u_max + 1;
        let mut g = Series::zero(self.s_max, self.u_max);
        for i in 0..=self.s_max {
            for j in 0..=self.u_max {
                let mut acc: i64 = if (i, j) == (0, 0) { 1 } else { 0 };
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if (i1, j1) == (0, 0) {
                            continue;
                        }
                        let p = self.coeffs[i1 * w + j1]
                            .checked_mul(g.coeffs[(i - i1) * w + (j - j1)])
                            .ok_or(SeriesError::Overflow)?;
                        acc = acc.checked_sub(p).ok_or(SeriesError::Overflow)?;
                    }
                }
                g.coeffs[i * w + j] = acc * c0;
            }
        }
        Ok(g)
    }

    pub fn pow(&self, e: u32) -> Result<Series, SeriesError> {
        let mut acc = Series::constant(1, self.s_max, self.u_max);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var(char),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SeriesError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some((pos, c)) = it.next() {
        match c {
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let mut v: i64 = c.to_digit(10).unwrap() as i64;
                while let Some(&(_, d)) = it.peek() {
                    let Some(x) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(x as i64))
                        .ok_or(SeriesError::Parse { pos, msg: "number too large".into() })?;
                    it.next();
                }
                out.push((pos, Tok::Num(v)));
            }
            's' | 'u' => out.push((pos, Tok::Var(c))),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => out.push((pos, Tok::Op(c))),
            '·' => out.push((pos, Tok::Op('*'))),
            _ => return Err(SeriesError::Parse { pos, msg: format!("unexpected {c:?}") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    s_max: usize,
    u_max: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, msg: &str) -> Result<T, SeriesError> {
        Err(SeriesError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Series, SeriesError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.i += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Op('-')) => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Series, SeriesError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Op('/')) => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?.inverse()?)?;
                }
                _ if self.starts_factor() => acc = acc.mul(&self.power()?)?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Series, SeriesError> {
        if self.peek() == Some(&Tok::Op('-')) {
            self.i += 1;
            let x = self.unary()?;
            return Series::zero(self.s_max, self.u_max).sub(&x);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Series, SeriesError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.i += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else { return self.fail("expected an exponent") };
            self.i += 1;
            let e = u32::try_from(e).map_err(|_| SeriesError::Overflow)?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Series, SeriesError> {
        let (s, u) = (self.s_max, self.u_max);
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Series::constant(n, s, u))
            }
            Some(Tok::Var('s')) => {
                self.i += 1;
                Ok(Series::monomial(1, 0, s, u))
            }
            Some(Tok::Var(_)) => {
                self.i += 1;
                Ok(Series::monomial(0, 1, s, u))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let x = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.fail("expected )");
                }
                self.i += 1;
                Ok(x)
            }
            _ => self.fail("expected a number, variable or ("),
        }
    }
}

/// Expands `src` through `s^s_max u^u_max`.
pub fn expand(src: &str, s_max: usize, u_max: usize) -> Result<Series, SeriesError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0, end: src.len(), s_max, u_max };
    let x = p.expr()?;
    if p.i != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(x)
}

/// Whether an expression mentions `u`.
pub fn is_bigraded(src: &str) -> bool {
    src.contains('u')
}

#[derive(Clone, Copy, Debug)]
pub struct Reference {
    pub id: &'static str,
    pub expression: &'static str,
    pub description: &'static str,
}

/// Named reference series. The first two are the Theorem's formulas,
/// transcribed with `\frac{a}{b}` written `a/b`.
pub const REFERENCES: &[Reference] = &[
    Reference {
        id: "hh-a1",
        expression: "(5 + 8s + 9s^2 + 10s^3 + 8s^4/(1-s))/(1-s^4)",
        description: "total dimensions of HH_n(A(1), A(1))",
    },
    Reference {
        id: "hh-a1-bigraded",
        expression: "((1+u)(1+u^2 + su(1+u^2+u^5) + s^2u^2(1+2u^5+u^7) + s^3u^3(1+u^4+u^5+u^6+u^9) \
                     + s^4u^4(1+u^4+u^5+u^9)/(1-su)) + u^6+su^2+su^8+s^2u^4) · 1/(1-s^4u^12)",
        description: "HH_{s,u}(A(1), A(1)), s homological and u internal",
    },
    Reference { id: "one", expression: "1", description: "the constant series" },
    Reference { id: "dual-numbers", expression: "2/(1-s)", description: "HH_n(k[x]/x^2) = 2" },
    Reference {
        id: "exterior-pair",
        expression: "4/(1-s)^2",
        description: "HH_n(k[x,y]/(x^2,y^2)) = 4(n+1)",
    },
    Reference {
        id: "d8-corollary",
        expression: "5/(1-s) + 3s/(1-s)^2",
        description: "the stated count HH_n(F2[D8]) = 3n+5",
    },
    Reference {
        id: "d8-centralizers",
        expression: "5/(1-s) + 4s/(1-s)^2",
        description: "sum of centralizer homologies for D8: 4n+5",
    },
];

pub fn reference(id: &str) -> Result<&'static Reference, SeriesError> {
    REFERENCES.iter().find(|r| r.id == id).ok_or_else(|| SeriesError::UnknownReference(id.into()))
}

/// An id from [`REFERENCES`], or else a literal expression.
pub fn resolve(id_or_expr: &str) -> String {
    match reference(id_or_expr) {
        Ok(r) => r.expression.to_string(),
        Err(_) => id_or_expr.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: Vec<u32>,
    pub expected: i64,
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub expression: String,
    pub bigraded: bool,
    pub compared: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl SeriesReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none() && self.compared > 0
    }
}

/// Compares a table with an expression. A series in `s` alone is compared
/// with the totals of the first axis; one in `s` and `u` with the `(first,
/// last)` marginal, over every row that is exact and untruncated.
pub fn compare(t: &DimTable, id_or_expr: &str) -> Result<SeriesReport, SeriesError> {
    if t.axes.is_empty() {
        return Err(SeriesError::EmptyTable);
    }
    let expression = resolve(id_or_expr);
    let bigraded = is_bigraded(&expression) && t.axes.len() >= 2;
    let rows: Vec<u32> = match t.n_max {
        Some(n) => (0..=n as u32).collect(),
        None => t.row_totals().iter().enumerate().map(|(i, _)| i as u32).collect(),
    };
    let rows: Vec<u32> = if bigraded && !t.complete_rows.is_empty() {
        rows.into_iter().filter(|r| t.complete_rows.contains(&(*r as usize))).collect()
    } else {
        rows
    };
    let s_max = rows.iter().copied().max().unwrap_or(0) as usize;
    let mut compared = 0;
    let mut first_mismatch = None;
    if bigraded {
        let last = t.axes.len() - 1;
        let m = t.marginal(&[0, last]);
        let u_max = m.entries.iter().map(|e| e.degree[1]).max().unwrap_or(0) as usize;
        let series = expand(&expression, s_max, u_max)?;
        'outer: for &s in &rows {
            for u in 0..=u_max as u32 {
                compared += 1;
                let (want, got) = (series.coeff(s as usize, u as usize), m.dim(&[s, u]));
                if want != got as i64 {
                    first_mismatch = Some(Mismatch { degree: vec![s, u], expected: want, actual: got });
                    break 'outer;
                }
            }
        }
    } else {
        let u_hint = if is_bigraded(&expression) { 12 * (s_max + 1) } else { 0 };
        let series = expand(&expression, s_max, u_hint)?;
        for &s in &rows {
            compared += 1;
            let (want, got) = (series.s_coeff(s as usize), t.row_total(s));
            if want != got as i64 {
                first_mismatch = Some(Mismatch { degree: vec![s], expected: want, actual: got });
                break;
            }
        }
    }
    Ok(SeriesReport { expression, bigraded, compared, first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        let g = expand("1/(1-s)", 5, 0).unwrap();
        assert!((0..=5).all(|i| g.coeff(i, 0) == 1));
        let h = expand("1/(1+s)^2", 4, 0).unwrap();
        assert_eq!((0..=4).map(|i| h.coeff(i, 0)).collect::<Vec<_>>(), vec![1, -2, 3, -4, 5]);
    }

    #[test]
    fn implicit_products() {
        let a = expand("2su^3 + s^2u(1+u)", 3, 4).unwrap();
        assert_eq!(a.coeff(1, 3), 2);
        assert_eq!(a.coeff(2, 1), 1);
        assert_eq!(a.coeff(2, 2), 1);
        assert_eq!(a.coeff(0, 0), 0);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(expand("1/(2-s)", 3, 0), Err(SeriesError::NotInvertible(2))));
        assert!(matches!(expand("(1+s", 3, 0), Err(SeriesError::Parse { .. })));
        assert!(matches!(expand("1+x", 3, 0), Err(SeriesError::Parse { pos: 2, .. })));
    }
}
