use std::path::{Path, PathBuf};

use gloc::boundary::ModelFile;
use gloc::nonprop::{TimeGrid, DEFAULT_PROBES, DEFAULT_SEED};
use gloc::spectral::BumpFunction;
use serde::Deserialize;

use crate::error::CliError;

/// Experiment description, read from TOML.
///
/// ```toml
/// model = "step.toml"
/// quasi_orbit = ["+inf"]
/// kappa = [[3.0, 0.0], [4.0, 1.0], [5.0, 0.0]]
/// eps = [0.2, 0.1, 0.05]
/// truncation = [200, 400]
/// output = "out"
///
/// [time]
/// start = 0.0
/// stop = 100.0
/// step = 0.5
///
/// [probes]
/// count = 20
/// seed = 20240917
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Model file, relative to the config file.
    pub model: PathBuf,
    pub quasi_orbit: Vec<String>,
    pub kappa: Vec<(f64, f64)>,
    pub eps: Vec<f64>,
    pub truncation: Vec<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default)]
    pub probes: ProbeSpec,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for TimeSpec {
    fn default() -> Self {
        let g = TimeGrid::default();
        TimeSpec { start: g.start, stop: g.stop, step: g.step }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub count: usize,
    pub seed: u64,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec { count: DEFAULT_PROBES, seed: DEFAULT_SEED }
    }
}

/// A validated config with its model loaded.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: ExperimentConfig,
    pub model: ModelFile,
    pub model_name: String,
    pub kappa: BumpFunction,
    pub grid: TimeGrid,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let de = toml::Deserializer::parse(text).map_err(|e| CliError::Config(e.to_string()))?;
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("at `{path}`: {}", e.into_inner().message()))
    })?;
    validate(&config)?;
    Ok(config)
}

fn validate(c: &ExperimentConfig) -> Result<(), CliError> {
    let bad = |field: &str, why: String| Err(CliError::Config(format!("at `{field}`: {why}")));
    if c.eps.is_empty() || c.eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return bad("eps", format!("values must be positive, got {:?}", c.eps));
    }
    if c.truncation.is_empty() || c.truncation[0] == 0 || c.truncation.windows(2).any(|w| w[0] >= w[1]) {
        return bad("truncation", format!("must be positive and increasing, got {:?}", c.truncation));
    }
    if c.quasi_orbit.is_empty() {
        return bad("quasi_orbit", "no boundary points given".into());
    }
    if !(c.time.step > 0.0) || c.time.stop < c.time.start {
        return bad("time", "need step > 0 and stop >= start".into());
    }
    if c.probes.count == 0 {
        return bad("probes.count", "must be positive".into());
    }
    if let Err(e) = BumpFunction::new(c.kappa.clone()) {
        return bad("kappa", e.to_string());
    }
    Ok(())
}

pub fn load(config_path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(config_path).map_err(|e| CliError::io(config_path, e))?;
    let config = parse_config(&text)?;
    let model_path = config_path.parent().unwrap_or(Path::new(".")).join(&config.model);
    let model_text = std::fs::read_to_string(&model_path).map_err(|e| CliError::io(&model_path, e))?;
    let model = ModelFile::parse(&model_text).map_err(|e| CliError::Model(format!("{}: {e}", model_path.display())))?;
    if let Some(n) = config.quasi_orbit.iter().find(|n| model.model.boundary_index(n).is_none()) {
        return Err(CliError::Config(format!("at `quasi_orbit`: unknown boundary point {n:?}")));
    }
    let model_name = model_path.file_stem().map_or("model".into(), |s| s.to_string_lossy().into_owned());
    let kappa = BumpFunction::new(config.kappa.clone()).expect("validated");
    let grid = TimeGrid { start: config.time.start, stop: config.time.stop, step: config.time.step };
    Ok(Loaded { config, model, model_name, kappa, grid })
}
