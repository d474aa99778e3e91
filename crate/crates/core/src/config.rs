//! JSON run configuration shared by every subcommand.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::boundary::{BoundarySet, BoundarySetDoc};
use crate::error::{Error, Result};
use crate::harmonic::GridSpec;
use crate::suite::Tolerances;

pub const SPEC_VERSION: u32 = 1;
pub const DEFAULT_DEPTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    Kernel,
    Series,
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    radii: Vec<f64>,
    angles: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TolerancesDoc {
    quadrature: Option<f64>,
    agreement: Option<f64>,
    ratio_window: Option<[f64; 2]>,
    fourier: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfigDoc {
    spec_version: u32,
    boundary_set: BoundarySetDoc,
    depth: Option<usize>,
    max_freq: Option<usize>,
    backend: Option<BackendChoice>,
    grid: Option<GridDoc>,
    tolerances: Option<TolerancesDoc>,
    output_dir: Option<PathBuf>,
}

/// A validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub boundary_set: BoundarySet,
    pub depth: usize,
    pub max_freq: Option<usize>,
    pub backend: BackendChoice,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Validation(format!("tolerance {name} = {x} must be positive")))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let doc: RunConfigDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.spec_version != SPEC_VERSION {
            return Err(Error::Validation(format!(
                "unsupported spec_version {} (expected {SPEC_VERSION})",
                doc.spec_version
            )));
        }
        let depth = doc.depth.unwrap_or(DEFAULT_DEPTH);
        if depth == 0 {
            return Err(Error::Validation("depth must be at least 1".into()));
        }
        let grid = doc.grid.map_or_else(GridSpec::default, |g| GridSpec {
            radii: g.radii,
            angles: g.angles,
        });
        grid.validate()?;
        let mut tolerances = Tolerances::default();
        if let Some(t) = doc.tolerances {
            if let Some(x) = t.quadrature {
                tolerances.quadrature = positive("quadrature", x)?;
            }
            if let Some(x) = t.agreement {
                tolerances.agreement = positive("agreement", x)?;
            }
            if let Some(x) = t.fourier {
                tolerances.fourier = positive("fourier", x)?;
            }
            if let Some([lo, hi]) = t.ratio_window {
                if !(positive("ratio_window", lo)? < positive("ratio_window", hi)?) {
                    return Err(Error::Validation(format!("ratio window [{lo}, {hi}] is empty")));
                }
                tolerances.ratio_window = (lo, hi);
            }
        }
        Ok(RunConfig {
            boundary_set: doc.boundary_set.to_set()?,
            depth,
            max_freq: doc.max_freq,
            backend: doc.backend.unwrap_or(BackendChoice::Series),
            grid,
            tolerances,
            output_dir: doc.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        })
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        RunConfig::from_json(&std::fs::read_to_string(path)?)
    }
}
