//! The `disk-interp` command line: `build`, `eval`, `coeffs` and `verify`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc as Shared;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::boundary::BoundarySetDoc;
use crate::bump::BumpSeries;
use crate::config::{BackendChoice, RunConfig, SPEC_VERSION};
use crate::cover::{build_tower, CoverLevel, CoverTower};
use crate::error::{Error, Result};
use crate::geometry::Arc;
use crate::harmonic::{default_max_freq, Backend, EvaluatorOptions, HarmonicEvaluator};
use crate::interpolant::{trivial_evaluator, Interpolant, Kind};
use crate::suite::{inject_fault, run_suite, Fault, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "disk-interp", version, about = "Disk-algebra functions vanishing exactly on a closed null set of the circle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the cover tower and write tower.json.
    Build(CommonArgs),
    /// Evaluate u, v, omega and lambda on the configured grid.
    Eval(CommonArgs),
    /// Write the Fourier coefficients of the bump sum to coeffs.csv.
    Coeffs(CommonArgs),
    /// Run the verification suite and write report.json.
    Verify(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    Nesting,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Run configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides the configuration.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Truncation depth L; overrides the configuration.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendChoice>,
    /// Series length K; overrides the configuration.
    #[arg(long)]
    pub max_freq: Option<usize>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Validation(_) | Error::Domain(_) | Error::MalformedCover { .. } | Error::Degenerate => EXIT_VALIDATION,
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::Io(_) => EXIT_IO,
        Error::Proximity { .. } | Error::Precondition(_) => EXIT_CHECK_FAILED,
    }
}

fn load(args: &CommonArgs) -> Result<RunConfig> {
    let mut config = RunConfig::load(&args.config)?;
    if let Some(d) = args.depth {
        if d == 0 {
            return Err(Error::Validation("depth must be at least 1".into()));
        }
        config.depth = d;
    }
    if let Some(b) = args.backend {
        config.backend = b;
    }
    if args.max_freq.is_some() {
        config.max_freq = args.max_freq;
    }
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    Ok(config)
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(dir: &Path, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        body(&mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, dir.join(name))?;
    Ok(())
}

/// `None` for the empty set.
fn tower_for(config: &RunConfig, fault: Option<FaultArg>) -> Result<Option<CoverTower>> {
    if config.boundary_set.is_empty() {
        return Ok(None);
    }
    let tower = build_tower(&config.boundary_set, config.depth)?;
    Ok(Some(match fault {
        Some(FaultArg::Nesting) => inject_fault(&tower, Fault::Nesting)?,
        None => tower,
    }))
}

#[derive(Serialize)]
struct ArcDoc {
    start: f64,
    length: f64,
}

impl From<Arc> for ArcDoc {
    fn from(a: Arc) -> ArcDoc {
        ArcDoc {
            start: a.start().radians(),
            length: a.length(),
        }
    }
}

struct LevelDoc<'a>(&'a CoverLevel);

impl Serialize for LevelDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Arcs<I>(std::cell::RefCell<Option<I>>);
        impl<I: Iterator<Item = Arc>> Serialize for Arcs<I> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let it = self.0.borrow_mut().take().expect("serialized once");
                s.collect_seq(it.map(ArcDoc::from))
            }
        }
        let level = self.0;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("n", &level.n())?;
        m.serialize_entry("total_length", &level.total_length())?;
        m.serialize_entry("arcs", &Arcs(std::cell::RefCell::new(Some(level.outer_arcs()))))?;
        m.serialize_entry("cores", &Arcs(std::cell::RefCell::new(Some(level.inner_arcs()))))?;
        m.end()
    }
}

#[derive(Serialize)]
struct BumpSummary {
    n: usize,
    count: usize,
    segments: usize,
    integral: f64,
}

#[derive(Serialize)]
struct TowerDoc<'a> {
    spec_version: u32,
    depth: usize,
    trivial: bool,
    boundary_set: BoundarySetDoc,
    levels: Vec<LevelDoc<'a>>,
    bumps: Vec<BumpSummary>,
}

fn cmd_build(config: &RunConfig, fault: Option<FaultArg>) -> Result<i32> {
    let tower = tower_for(config, fault)?;
    let series = match &tower {
        Some(t) => Some(BumpSeries::from_tower(Shared::new(t.clone()))?),
        None => None,
    };
    let doc = TowerDoc {
        spec_version: SPEC_VERSION,
        depth: tower.as_ref().map_or(0, |t| t.depth()),
        trivial: tower.is_none(),
        boundary_set: config.boundary_set.to_doc(),
        levels: tower.iter().flat_map(|t| t.levels().iter().map(LevelDoc)).collect(),
        bumps: series
            .iter()
            .flat_map(|s| {
                s.levels().map(|l| BumpSummary {
                    n: l.n(),
                    count: l.len(),
                    segments: l.segment_count(),
                    integral: l.integral(),
                })
            })
            .collect(),
    };
    write_atomic(&config.output_dir, "tower.json", |w| {
        serde_json::to_writer(&mut *w, &doc).map_err(|e| Error::Io(e.into()))?;
        w.write_all(b"\n")?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn series_for(config: &RunConfig, fault: Option<FaultArg>) -> Result<BumpSeries> {
    match tower_for(config, fault)? {
        Some(t) => BumpSeries::from_tower(Shared::new(t)),
        None => Ok(BumpSeries::empty()),
    }
}

fn evaluator(series: &BumpSeries, config: &RunConfig, backend: Backend) -> Result<HarmonicEvaluator> {
    if series.depth() == 0 {
        return Ok(trivial_evaluator());
    }
    HarmonicEvaluator::new(
        series.clone(),
        backend,
        EvaluatorOptions {
            max_freq: config.max_freq,
            quad_tol: config.tolerances.quadrature,
        },
    )
}

fn cmd_eval(config: &RunConfig, fault: Option<FaultArg>) -> Result<i32> {
    let series = series_for(config, fault)?;
    let series_eval = evaluator(&series, config, Backend::Series)?;
    let dir = &config.output_dir;
    let grid = &config.grid;
    match config.backend {
        BackendChoice::Series => write_atomic(dir, "grid_u.csv", |w| series_eval.write_grid_csv(grid, w))?,
        BackendChoice::Kernel => {
            let k = evaluator(&series, config, Backend::Kernel)?;
            write_atomic(dir, "grid_u.csv", |w| k.write_grid_csv(grid, w))?;
        }
        BackendChoice::Both => {
            let k = evaluator(&series, config, Backend::Kernel)?;
            write_atomic(dir, "grid_u_kernel.csv", |w| k.write_grid_csv(grid, w))?;
            write_atomic(dir, "grid_u_series.csv", |w| series_eval.write_grid_csv(grid, w))?;
        }
    }
    for kind in [Kind::Omega, Kind::Lambda] {
        let name = format!("grid_{}.csv", kind.name());
        write_atomic(dir, &name, |w| Interpolant::new(&series_eval, kind).write_grid_csv(grid, w))?;
    }
    Ok(EXIT_OK)
}

fn cmd_coeffs(config: &RunConfig, fault: Option<FaultArg>) -> Result<i32> {
    let series = series_for(config, fault)?;
    let k = config
        .max_freq
        .unwrap_or_else(|| default_max_freq(series.integral_phi() / std::f64::consts::TAU));
    let coeffs = series.fourier_coefficients(k);
    write_atomic(&config.output_dir, "coeffs.csv", |w| crate::bump::write_coefficients_csv(&coeffs, w))?;
    Ok(EXIT_OK)
}

fn cmd_verify(config: &RunConfig, fault: Option<FaultArg>) -> Result<i32> {
    let options = SuiteOptions {
        max_freq: config.max_freq,
        tolerances: config.tolerances,
        ..SuiteOptions::default()
    };
    let fault = fault.map(|FaultArg::Nesting| Fault::Nesting);
    let report = run_suite(&config.boundary_set, config.depth, &options, fault)?;
    write_atomic(&config.output_dir, "report.json", |w| {
        w.write_all(report.to_json().as_bytes())?;
        w.write_all(b"\n")?;
        Ok(())
    })?;
    for c in report.failures() {
        eprintln!("FAIL {}: {}", c.id, c.anchor);
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (args, f): (&CommonArgs, fn(&RunConfig, Option<FaultArg>) -> Result<i32>) = match &cli.command {
        Command::Build(a) => (a, cmd_build),
        Command::Eval(a) => (a, cmd_eval),
        Command::Coeffs(a) => (a, cmd_coeffs),
        Command::Verify(a) => (a, cmd_verify),
    };
    match load(args).and_then(|config| f(&config, args.inject_fault)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
