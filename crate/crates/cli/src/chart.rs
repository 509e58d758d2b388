//! Charts of bigraded dimension tables: rows are homological degree `s`,
//! columns the Adams degree `u − s`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use hochschild::homology::DimTable;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("a chart needs a bigraded table, got axes {0:?}")]
    SingleGraded(Vec<String>),
    #[error("malformed chart document: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartFormat {
    Ascii,
    Json,
    Svg,
}

pub const NOTE: &str = "dimensions only; multiplication lines are not drawn";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub s: u32,
    pub adams: i64,
    pub dim: usize,
}

/// Computed internal degrees `u_lo..=u_hi` of row `s`; a point absent
/// from a computed range has dimension zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedRange {
    pub s: u32,
    pub u_lo: u32,
    pub u_hi: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartMeta {
    pub label: String,
    /// Names of the row and internal-degree axes of the source table.
    pub axes: Vec<String>,
    pub note: String,
    pub computed: Vec<ComputedRange>,
    pub inexact: Vec<(u32, u32)>,
    pub n_max: Option<usize>,
    pub complete_rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDocument {
    pub meta: ChartMeta,
    pub points: Vec<ChartPoint>,
}

/// Optional window: rows `s ≤ max_s`, columns `adams ≤ max_adams`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChartWindow {
    pub max_s: Option<u32>,
    pub max_adams: Option<i64>,
}

impl ChartWindow {
    fn admits(&self, s: u32, u: u32) -> bool {
        self.max_s.map_or(true, |m| s <= m) && self.max_adams.map_or(true, |m| u as i64 - s as i64 <= m)
    }
}

impl ChartDocument {
    /// Chart of a table with axes `(s, u)`, or `(s, t, u)` summed over `t`.
    pub fn from_table(t: &DimTable, window: ChartWindow) -> Result<Self, ChartError> {
        let t = match t.axes.len() {
            2 => t.clone(),
            3 => t.marginal(&[0, 2]),
            _ => return Err(ChartError::SingleGraded(t.axes.clone())),
        };
        let mut rows: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut points = Vec::new();
        let mut inexact = Vec::new();
        for e in t.entries.iter().filter(|e| window.admits(e.degree[0], e.degree[1])) {
            let (s, u) = (e.degree[0], e.degree[1]);
            rows.entry(s).or_default().push(u);
            if e.dim > 0 {
                points.push(ChartPoint { s, adams: u as i64 - s as i64, dim: e.dim });
            }
            if !e.exact {
                inexact.push((s, u));
            }
        }
        let mut computed = Vec::new();
        for (s, us) in rows {
            // entries are sorted, so runs are maximal consecutive stretches
            let mut lo = us[0];
            for w in us.windows(2) {
                if w[1] != w[0] + 1 {
                    computed.push(ComputedRange { s, u_lo: lo, u_hi: w[0] });
                    lo = w[1];
                }
            }
            computed.push(ComputedRange { s, u_lo: lo, u_hi: *us.last().unwrap() });
        }
        points.sort_by_key(|p| (p.s, p.adams));
        Ok(ChartDocument {
            meta: ChartMeta {
                label: t.label.clone(),
                axes: t.axes.clone(),
                note: NOTE.into(),
                computed,
                inexact,
                n_max: t.n_max,
                complete_rows: t.complete_rows.clone(),
            },
            points,
        })
    }

    /// The bigraded table the document was made from.
    pub fn to_table(&self) -> Result<DimTable, ChartError> {
        if self.meta.axes.len() != 2 {
            return Err(ChartError::Malformed(format!("axes {:?}", self.meta.axes)));
        }
        let axes: Vec<&str> = self.meta.axes.iter().map(|s| s.as_str()).collect();
        let mut t = DimTable::new(&self.meta.label, &axes);
        for r in &self.meta.computed {
            for u in r.u_lo..=r.u_hi {
                t.insert(vec![r.s, u], 0, !self.meta.inexact.contains(&(r.s, u)));
            }
        }
        for p in &self.points {
            let u = p.adams + p.s as i64;
            if u < 0 {
                return Err(ChartError::Malformed(format!("negative internal degree at s={}", p.s)));
            }
            let u = u as u32;
            if t.get(&[p.s, u]).is_none() {
                return Err(ChartError::Malformed(format!("point ({}, {}) outside the computed range", p.s, p.adams)));
            }
            t.insert(vec![p.s, u], p.dim, !self.meta.inexact.contains(&(p.s, u)));
        }
        t.n_max = self.meta.n_max;
        t.complete_rows = self.meta.complete_rows.clone();
        Ok(t)
    }

    pub fn multiplicity(&self, s: u32, adams: i64) -> usize {
        self.points.iter().find(|p| p.s == s && p.adams == adams).map_or(0, |p| p.dim)
    }

    /// Rows and Adams columns to draw: the computed range, cut on the
    /// left at the first point or column 0.
    fn bounds(&self) -> Option<(u32, i64, i64)> {
        let max_s = self.meta.computed.iter().map(|r| r.s).max()?;
        let first = self.points.iter().map(|p| p.adams).min().unwrap_or(0).min(0);
        let lo = self.meta.computed.iter().map(|r| r.u_lo as i64 - r.s as i64).min()?.max(first);
        let hi = self.meta.computed.iter().map(|r| r.u_hi as i64 - r.s as i64).max()?;
        Some((max_s, lo, hi))
    }

    fn in_range(&self, s: u32, adams: i64) -> bool {
        let u = adams + s as i64;
        self.meta.computed.iter().any(|r| r.s == s && (r.u_lo as i64..=r.u_hi as i64).contains(&u))
    }

    /// Grid with row `s` at the top down to 0: a count per nonzero cell,
    /// `.` for computed zeros, blank outside the computed range.
    pub fn to_ascii(&self) -> String {
        let mut out = format!("# {}\n# {}\n", self.meta.label, NOTE);
        let Some((max_s, lo, hi)) = self.bounds() else { return out };
        let width = self.points.iter().map(|p| p.dim.to_string().len()).max().unwrap_or(1).max(hi.to_string().len()).max(2);
        for s in (0..=max_s).rev() {
            out.push_str(&format!("{s:>3} |"));
            for a in lo..=hi {
                let cell = match self.multiplicity(s, a) {
                    0 if self.in_range(s, a) => ".".to_string(),
                    0 => " ".to_string(),
                    d => d.to_string(),
                };
                out.push_str(&format!(" {cell:>width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("    +{}\n     ", "-".repeat((hi - lo + 1) as usize * (width + 1))));
        for a in lo..=hi {
            out.push_str(&format!(" {a:>width$}"));
        }
        out.push_str("\n      s vertical, u - s horizontal\n");
        out
    }

    /// One dot per nonzero cell; multiplicities above one are printed
    /// beside the dot.
    pub fn to_svg(&self) -> String {
        const CELL: i64 = 28;
        const PAD: i64 = 36;
        let (max_s, lo, hi) = self.bounds().unwrap_or((0, 0, 0));
        let cols = hi - lo + 1;
        let (w, h) = (cols * CELL + 2 * PAD, (max_s as i64 + 1) * CELL + 2 * PAD);
        let x = |a: i64| PAD + (a - lo) * CELL + CELL / 2;
        let y = |s: u32| h - PAD - s as i64 * CELL - CELL / 2;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <title>{}</title>\n<desc>{}</desc>\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            escape(&self.meta.label),
            NOTE
        );
        for a in lo..=hi {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{a}</text>\n",
                x(a),
                h - PAD / 3
            ));
        }
        if self.bounds().is_some() {
            for s in 0..=max_s {
                out.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{s}</text>\n",
                    PAD - 8,
                    y(s) + 3
                ));
            }
        }
        for p in &self.points {
            out.push_str(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n", x(p.adams), y(p.s)));
            if p.dim > 1 {
                out.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>\n",
                    x(p.adams) + 6,
                    y(p.s) - 5,
                    p.dim
                ));
            }
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart documents serialize")
    }

    pub fn render(&self, format: ChartFormat) -> String {
        match format {
            ChartFormat::Ascii => self.to_ascii(),
            ChartFormat::Json => self.to_json(),
            ChartFormat::Svg => self.to_svg(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a bigraded table as a chart document.
pub fn emit_chart(t: &DimTable, format: ChartFormat) -> Result<String, ChartError> {
    Ok(ChartDocument::from_table(t, ChartWindow::default())?.render(format))
}

/// Inverse of `emit_chart(.., Json)`.
pub fn table_from_json(doc: &str) -> Result<DimTable, ChartError> {
    let d: ChartDocument = serde_json::from_str(doc).map_err(|e| ChartError::Malformed(e.to_string()))?;
    d.to_table()
}
