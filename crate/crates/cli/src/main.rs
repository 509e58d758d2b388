use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use hochschild::complexes::{Coefficients, Normalization};
use hochschild::homology::Engine;
use hochschild_cli::cache::DiskStore;
use hochschild_cli::chart::ChartFormat;
use hochschild_cli::jobs::{run_job, AlgebraSource, FiltrationName, JobSpec, Kind};

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// HH_*(A, A), or Tor over A with --coefficients ground
    Hh,
    /// Cohomology of the cyclic cobar complex of a coalgebra
    Cohh,
    /// Ext_A(k, k) from the cobar complex of the dual
    Ext,
    /// Pages of a May-type spectral sequence
    Ss,
    /// HH of a group algebra against its conjugacy-class decomposition
    Burghelea,
    /// Compare HH with a reference Poincaré series
    Poincare,
    /// Chart of HH, Ext or a spectral sequence page
    Chart,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filtration {
    May,
    Abelianizing,
    AbelianizingToMay,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Coeff {
    #[value(name = "self")]
    SelfCoefficients,
    Ground,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Json,
    Svg,
}

#[derive(clap::Args, Debug)]
struct Options {
    /// builtin:<name>, a builtin name, a DSL file or a .json structure-constant file
    #[arg(long, global = true, default_value = "builtin:a1")]
    algebra: String,
    #[arg(long, global = true, value_enum)]
    filtration: Option<Filtration>,
    #[arg(long, global = true, value_enum, default_value = "self")]
    coefficients: Coeff,
    /// Largest homological degree (n or s)
    #[arg(long, global = true, default_value_t = 4)]
    max_n: usize,
    #[arg(long, global = true)]
    max_u: Option<u32>,
    /// Page to show or chart; every page is computed
    #[arg(long, global = true)]
    max_r: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "ascii")]
    format: Format,
    /// Directory for the persistent rank cache
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Reference series id or expression in s, u
    #[arg(long, global = true)]
    reference: Option<String>,
    /// Group for burghelea: c1, c2, c4, v4, d8
    #[arg(long, global = true)]
    group: Option<String>,
    /// Use the normalized complex (smaller, same homology)
    #[arg(long, global = true)]
    normalized: bool,
    /// Print the job as JSON instead of running it
    #[arg(long, global = true)]
    print_job: bool,
    /// Run a job read from a JSON file, ignoring the other options
    #[arg(long, global = true)]
    job_file: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "hochschild", version, about = "Hochschild homology and May spectral sequences over F2")]
struct Args {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

fn job(command: Command, o: &Options) -> Result<JobSpec, String> {
    if let Some(path) = &o.job_file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return JobSpec::from_json(&text).map_err(|e| e.to_string());
    }
    let kind = match command {
        Command::Hh => Kind::Hh,
        Command::Cohh => Kind::Cohh,
        Command::Ext => Kind::Ext,
        Command::Ss => Kind::Ss,
        Command::Burghelea => Kind::Burghelea,
        Command::Poincare => Kind::Poincare,
        Command::Chart => Kind::Chart,
    };
    let algebra = AlgebraSource::from_arg(&o.algebra).map_err(|e| e.to_string())?;
    let mut spec = JobSpec::new(kind, algebra, o.max_n);
    spec.max_u = o.max_u;
    spec.max_r = o.max_r;
    spec.filtration = o.filtration.map(|f| match f {
        Filtration::May => FiltrationName::May,
        Filtration::Abelianizing => FiltrationName::Abelianizing,
        Filtration::AbelianizingToMay => FiltrationName::AbelianizingToMay,
    });
    spec.coefficients = match o.coefficients {
        Coeff::SelfCoefficients => Coefficients::SelfCoefficients,
        Coeff::Ground => Coefficients::Ground,
    };
    if o.normalized {
        spec.normalization = Normalization::Normalized;
    }
    spec.format = match o.format {
        Format::Ascii => ChartFormat::Ascii,
        Format::Json => ChartFormat::Json,
        Format::Svg => ChartFormat::Svg,
    };
    spec.reference = o.reference.clone();
    spec.group = o.group.clone();
    Ok(spec)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let o = &args.options;
    if let Some(j) = o.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let spec = match job(args.command, o) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if o.print_job {
        println!("{}", spec.to_json());
        return ExitCode::SUCCESS;
    }
    let engine = match &o.cache_dir {
        Some(dir) => match DiskStore::open(dir) {
            Ok(store) => Engine::with_store(Arc::new(store)),
            Err(e) => {
                eprintln!("error: cache directory {}: {e}", dir.display());
                return ExitCode::from(2);
            }
        },
        None => Engine::default(),
    };
    let out = match run_job(&spec, &engine).and_then(|out| out.render().map(|text| (out, text))) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", out.1);
    if spec.format == ChartFormat::Svg || spec.kind == Kind::Chart {
        for c in &out.0.comparisons {
            eprintln!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    if out.0.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
