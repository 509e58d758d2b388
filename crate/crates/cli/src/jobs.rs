//! Job descriptions and their execution.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use hochschild::algebras::{builtin, make_algebra, AlgebraDescription, AlgebraError, FiniteGroup, StructuredBialgebra};
use hochschild::complexes::{BigradedComplex, Coefficients, ComplexError, Direction, Normalization};
use hochschild::homology::{burghelea_check, BurgheleaReport, DimTable, Engine, HomologyError};
use hochschild::specseq::{convergence_check, pages_with, Sequence, SequenceKind, SpecSeqError};

use crate::chart::{ChartDocument, ChartError, ChartFormat, ChartWindow};
use crate::dsl::{load_algebra, DslError};
use crate::series::{compare, SeriesError, SeriesReport};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("{0}")]
    Dsl(#[from] DslError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Homology(#[from] HomologyError),
    #[error("{0}")]
    SpecSeq(#[from] SpecSeqError),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Chart(#[from] ChartError),
    #[error("invalid job: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed structure-constant file: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hh,
    Cohh,
    Ext,
    Ss,
    Burghelea,
    Poincare,
    Chart,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraSource {
    Builtin(String),
    Dsl(String),
    StructureConstants(AlgebraDescription),
}

impl AlgebraSource {
    /// `builtin:<name>` or a bare builtin name; otherwise a path to a DSL
    /// file, or to a JSON structure-constant file when it ends in `.json`.
    pub fn from_arg(arg: &str) -> Result<Self, JobError> {
        if let Some(name) = arg.strip_prefix("builtin:") {
            return Ok(AlgebraSource::Builtin(name.to_string()));
        }
        if builtin(arg).is_ok() {
            return Ok(AlgebraSource::Builtin(arg.to_string()));
        }
        let path = Path::new(arg);
        let text =
            std::fs::read_to_string(path).map_err(|source| JobError::Io { path: arg.to_string(), source })?;
        if path.extension().is_some_and(|e| e == "json") {
            let d: AlgebraDescription = serde_json::from_str(&text).map_err(|e| JobError::Json(e.to_string()))?;
            Ok(AlgebraSource::StructureConstants(d))
        } else {
            Ok(AlgebraSource::Dsl(text))
        }
    }

    pub fn load(&self) -> Result<StructuredBialgebra, JobError> {
        Ok(match self {
            AlgebraSource::Builtin(name) => builtin(name)?,
            AlgebraSource::Dsl(text) => load_algebra(text)?,
            AlgebraSource::StructureConstants(d) => make_algebra(d.clone())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationName {
    May,
    Abelianizing,
    /// The abelianizing filtration carried over to the May `E_0` term.
    AbelianizingToMay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub kind: Kind,
    pub algebra: AlgebraSource,
    /// `n_max`, or `s_max` for spectral sequences and Ext.
    pub max_n: usize,
    pub max_u: Option<u32>,
    /// Page shown by `ss` and charted by `chart`; all pages are computed.
    pub max_r: Option<u32>,
    pub filtration: Option<FiltrationName>,
    pub coefficients: Coefficients,
    pub normalization: Normalization,
    pub format: ChartFormat,
    /// Series id or expression to compare against.
    pub reference: Option<String>,
    /// Group for `burghelea`: c1, c2, c4, v4 or d8.
    pub group: Option<String>,
}

impl JobSpec {
    pub fn new(kind: Kind, algebra: AlgebraSource, max_n: usize) -> Self {
        JobSpec {
            kind,
            algebra,
            max_n,
            max_u: None,
            max_r: None,
            filtration: None,
            coefficients: Coefficients::SelfCoefficients,
            normalization: Normalization::Full,
            format: ChartFormat::Ascii,
            reference: None,
            group: None,
        }
    }

    pub fn validate(&self) -> Result<(), JobError> {
        let bad = |m: &str| Err(JobError::Invalid(m.into()));
        if self.max_u == Some(0) {
            return bad("--max-u must be positive");
        }
        if self.max_r == Some(0) {
            return bad("--max-r must be positive");
        }
        match self.kind {
            Kind::Ss if self.filtration.is_none() => bad("ss needs --filtration"),
            Kind::Poincare if self.reference.is_none() => bad("poincare needs --reference"),
            Kind::Ss if self.filtration == Some(FiltrationName::Abelianizing)
                && self.coefficients == Coefficients::Ground =>
            {
                bad("the abelianizing sequence has self coefficients only")
            }
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job specs serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, JobError> {
        serde_json::from_str(s).map_err(|e| JobError::Json(e.to_string()))
    }
}

pub fn group_by_name(name: &str) -> Result<FiniteGroup, JobError> {
    Ok(match name {
        "c1" | "trivial" => FiniteGroup::cyclic(1),
        "c2" => FiniteGroup::cyclic(2),
        "c4" => FiniteGroup::cyclic(4),
        "v4" | "c2xc2" => FiniteGroup::klein_four(),
        "d8" => FiniteGroup::dihedral8(),
        other => return Err(JobError::Invalid(format!("unknown group {other}"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PageSummary {
    pub r: u32,
    pub row_totals: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub sequence: String,
    pub pages: Vec<PageSummary>,
    /// `(r, source, target, rank)` of every nonzero differential.
    pub differentials: Vec<(u32, (u32, u32, u32), (u32, u32, u32), usize)>,
    pub e_infinity: Vec<usize>,
    pub abutment: Vec<usize>,
    pub shown: DimTable,
}

/// What a job produced.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Payload {
    Table(DimTable),
    Spectral(Box<SpectralSummary>),
    Burghelea(BurgheleaReport),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobOutput {
    pub job: JobSpec,
    pub payload: Payload,
    pub comparisons: Vec<Comparison>,
}

impl JobOutput {
    pub fn all_passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed)
    }

    fn chart_table(&self) -> Option<&DimTable> {
        match &self.payload {
            Payload::Table(t) => Some(t),
            Payload::Spectral(s) => Some(&s.shown),
            Payload::Burghelea(_) => None,
        }
    }

    /// The document for the job's output format.
    pub fn render(&self) -> Result<String, JobError> {
        if self.job.kind == Kind::Chart {
            let t = self.chart_table().ok_or_else(|| JobError::Invalid("nothing to chart".into()))?;
            return Ok(ChartDocument::from_table(t, ChartWindow::default())?.render(self.job.format));
        }
        match self.job.format {
            ChartFormat::Json => Ok(serde_json::to_string_pretty(self).expect("outputs serialize")),
            ChartFormat::Svg => {
                let t = self.chart_table().ok_or_else(|| JobError::Invalid("nothing to chart".into()))?;
                Ok(ChartDocument::from_table(t, ChartWindow::default())?.to_svg())
            }
            ChartFormat::Ascii => {
                let mut out = String::new();
                match &self.payload {
                    Payload::Table(t) => out.push_str(&table_ascii(t)),
                    Payload::Spectral(s) => {
                        let _ = writeln!(out, "# {}", s.sequence);
                        for p in &s.pages {
                            let _ = writeln!(out, "E_{:<3} {:?}", p.r, p.row_totals);
                        }
                        let _ = writeln!(out, "E_inf {:?}", s.e_infinity);
                        let _ = writeln!(out, "H     {:?}", s.abutment);
                        let d1 = s.differentials.iter().filter(|d| d.0 == 1).count();
                        let _ = writeln!(out, "d_1 nonzero in {d1} tridegrees");
                        for (r, a, b, k) in s.differentials.iter().filter(|d| d.0 >= 2) {
                            let _ = writeln!(out, "d_{r} {a:?} -> {b:?} rank {k}");
                        }
                    }
                    Payload::Burghelea(b) => {
                        let _ = writeln!(out, "# Burghelea decomposition for {}", b.group);
                        for c in &b.classes {
                            let _ = writeln!(
                                out,
                                "class of {:<4} size {}  centralizer {:<6} H_* = {:?}",
                                c.representative, c.class_size, c.centralizer, c.homology
                            );
                        }
                        let _ = writeln!(out, "HH        {:?}", b.hh);
                        let _ = writeln!(out, "predicted {:?}", b.predicted);
                    }
                }
                for c in &self.comparisons {
                    let _ = writeln!(out, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
                }
                Ok(out)
            }
        }
    }
}

/// Rows `n`, columns `u`; row totals at the right.
pub fn table_ascii(t: &DimTable) -> String {
    let mut out = format!("# {}\n", t.label);
    if t.axes.len() == 1 {
        for (n, d) in t.row_totals().iter().enumerate() {
            let _ = writeln!(out, "{n:>3}: {d}");
        }
        return out;
    }
    let t = if t.axes.len() == 3 { t.marginal(&[0, 2]) } else { t.clone() };
    let u_max = t.entries.iter().map(|e| e.degree[1]).max().unwrap_or(0);
    let _ = write!(out, "{:>3} \\ {} ", t.axes[0], t.axes[1]);
    for u in 0..=u_max {
        let _ = write!(out, "{u:>3}");
    }
    out.push_str("  | total\n");
    for (n, total) in t.row_totals().iter().enumerate() {
        let _ = write!(out, "{n:>7} ");
        for u in 0..=u_max {
            match t.get(&[n as u32, u]) {
                Some(0) => out.push_str("  ."),
                Some(d) => {
                    let _ = write!(out, "{d:>3}");
                }
                None => out.push_str("   "),
            }
        }
        let _ = writeln!(out, "  | {total}");
    }
    out
}

fn reference_comparison(t: &DimTable, reference: &str) -> Result<Comparison, JobError> {
    let r: SeriesReport = compare(t, reference)?;
    let detail = match &r.first_mismatch {
        None => format!("{} coefficients match {}", r.compared, r.expression),
        Some(m) => format!("at {:?}: series {} but computed {}", m.degree, m.expected, m.actual),
    };
    Ok(Comparison { name: format!("series {reference}"), passed: r.ok(), detail })
}

fn complex(a: StructuredBialgebra, dir: Direction, spec: &JobSpec) -> Result<BigradedComplex, JobError> {
    Ok(BigradedComplex::new(Arc::new(a), dir, spec.coefficients, spec.normalization, spec.max_n, spec.max_u)?)
}

fn sequence_kind(f: FiltrationName, c: Coefficients) -> SequenceKind {
    match (f, c) {
        (FiltrationName::May, Coefficients::SelfCoefficients) => SequenceKind::HhMay,
        (FiltrationName::May, Coefficients::Ground) => SequenceKind::HhMayGround,
        (FiltrationName::Abelianizing, _) => SequenceKind::Abelianizing,
        (FiltrationName::AbelianizingToMay, _) => SequenceKind::AbelianizingToMay,
    }
}

fn run_sequence(spec: &JobSpec, f: FiltrationName, engine: &Engine) -> Result<JobOutput, JobError> {
    let a = Arc::new(spec.algebra.load()?);
    let kind = sequence_kind(f, spec.coefficients);
    let seq = Sequence::new(a, kind, spec.max_n, spec.normalization)?;
    let p = pages_with(engine, &seq.filtered, spec.max_n, None)?;
    let abutment = engine.homology_dims(&seq.filtered.complex);
    let e1 = seq.e1_check(&p)?;
    let conv = convergence_check(&p, &abutment);
    let shown_r = spec.max_r.unwrap_or(p.r_max).min(p.r_max);
    let mut shown = p.page(shown_r);
    if let Some(m) = spec.max_u {
        shown.entries.retain(|e| e.degree[2] <= m);
    }
    let comparisons = vec![
        Comparison {
            name: "E1 = H(E0)".into(),
            passed: e1.ok(),
            detail: format!("{} tridegrees, {} mismatches", e1.compared, e1.mismatches.len()),
        },
        Comparison {
            name: "E_inf = abutment".into(),
            passed: conv.ok(),
            detail: format!(
                "{} bidegrees, {} mismatches, longest differential {}",
                conv.compared,
                conv.mismatches.len(),
                conv.max_length
            ),
        },
    ];
    let summary = SpectralSummary {
        sequence: format!("{} spectral sequence", kind.name()),
        pages: (0..=spec.max_r.unwrap_or(p.max_length() + 1).min(p.r_max)).map(|r| PageSummary { r, row_totals: p.row_totals(r) }).collect(),
        differentials: {
            let mut d = p.differentials();
            d.sort();
            d
        },
        e_infinity: p.row_totals(p.r_max),
        abutment: (0..=spec.max_n as u32).map(|s| abutment.row_total(s)).collect(),
        shown,
    };
    Ok(JobOutput { job: spec.clone(), payload: Payload::Spectral(Box::new(summary)), comparisons })
}

/// Runs a job. Reduction pairs go through `engine`'s store.
pub fn run_job(spec: &JobSpec, engine: &Engine) -> Result<JobOutput, JobError> {
    spec.validate()?;
    let table = |t: DimTable| -> Result<JobOutput, JobError> {
        let comparisons = match &spec.reference {
            Some(r) => vec![reference_comparison(&t, r)?],
            None => Vec::new(),
        };
        Ok(JobOutput { job: spec.clone(), payload: Payload::Table(t), comparisons })
    };
    match spec.kind {
        Kind::Hh | Kind::Poincare => {
            let cx = complex(spec.algebra.load()?, Direction::Chain, spec)?;
            table(engine.homology_dims(&cx))
        }
        Kind::Cohh => {
            let cx = complex(spec.algebra.load()?, Direction::Cochain, spec)?;
            table(engine.homology_dims(&cx))
        }
        Kind::Ext => {
            let dual = spec.algebra.load()?.dualize();
            let cx = BigradedComplex::new(
                Arc::new(dual),
                Direction::Cochain,
                Coefficients::Ground,
                spec.normalization,
                spec.max_n,
                spec.max_u,
            )?;
            let mut t = engine.homology_dims(&cx);
            t.axes = vec!["s".into(), "u".into()];
            t.label = format!("Ext_{}(k, k)", spec.algebra.load()?.name());
            table(t)
        }
        Kind::Ss => run_sequence(spec, spec.filtration.expect("validated"), engine),
        Kind::Chart => match spec.filtration {
            Some(f) => {
                let mut out = run_sequence(spec, f, engine)?;
                if let Payload::Spectral(s) = &out.payload {
                    out.payload = Payload::Table(s.shown.marginal(&[0, 2]));
                }
                Ok(out)
            }
            None => {
                let sub = JobSpec {
                    kind: if spec.coefficients == Coefficients::Ground { Kind::Ext } else { Kind::Hh },
                    ..spec.clone()
                };
                let mut out = run_job(&sub, engine)?;
                out.job = spec.clone();
                Ok(out)
            }
        },
        Kind::Burghelea => {
            let g = group_by_name(spec.group.as_deref().unwrap_or("d8"))?;
            let r = burghelea_check(&g, spec.max_n)?;
            let mut comparisons = vec![Comparison {
                name: "HH = sum over conjugacy classes".into(),
                passed: r.all_match(),
                detail: format!("HH {:?}, predicted {:?}", r.hh, r.predicted),
            }];
            if let Some(reference) = &spec.reference {
                let mut t = DimTable::new(&format!("HH_*(F2[{}])", r.group), &["n"]);
                for (n, &d) in r.hh.iter().enumerate() {
                    t.insert(vec![n as u32], d, true);
                }
                t.n_max = Some(spec.max_n);
                comparisons.push(reference_comparison(&t, reference)?);
            }
            Ok(JobOutput { job: spec.clone(), payload: Payload::Burghelea(r), comparisons })
        }
    }
}
