use std::path::{Path, PathBuf};
use std::time::Instant;

use gloc::boundary::ModelFile;
use gloc::nonprop::{probe_states, Experiment, ExperimentReport, CSV_HEADER};
use serde::Serialize;

use crate::config::Loaded;
use crate::error::CliError;

pub const CSV_NAME: &str = "report.csv";
pub const JSON_NAME: &str = "report.json";

#[derive(Debug, Serialize)]
struct Dump<'a> {
    model: &'a str,
    seed: u64,
    status: &'static str,
    error: Option<String>,
    runs: &'a [ExperimentReport],
}

#[derive(Debug)]
pub struct RunSummary {
    pub reports: Vec<ExperimentReport>,
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Runs every `(L, ε)` point, writes the CSV and JSON reports, and fails
/// if a verifier step fails or a target is missed. Reports are written in
/// both cases.
pub fn run(loaded: &Loaded, seed: u64, out_dir: &Path) -> Result<RunSummary, CliError> {
    let mut reports = Vec::new();
    let result = collect(loaded, seed, &mut reports);
    let error = match result {
        Err(e) => Some(e),
        Ok(()) => reports
            .iter()
            .find(|r| !r.met_target())
            .map(|r| CliError::TargetMissed(format!("{}: static norm {:.3e} > {}", r.run_id, r.static_norm, r.eps_target))),
    };
    let summary = write_outputs(loaded, seed, out_dir, reports, error.as_ref())?;
    match error {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}

fn collect(loaded: &Loaded, seed: u64, reports: &mut Vec<ExperimentReport>) -> Result<(), CliError> {
    let cfg = &loaded.config;
    let mut previous: Vec<Option<f64>> = vec![None; cfg.eps.len()];
    for &l in &cfg.truncation {
        let started = Instant::now();
        let model = ModelFile::new(
            loaded.model.model.with_radius(l).map_err(|e| CliError::Model(e.to_string()))?,
            loaded.model.band.clone(),
        )
        .map_err(|e| CliError::Model(e.to_string()))?;
        let exp = Experiment::new(&model, &loaded.kappa, &cfg.quasi_orbit).map_err(CliError::Verifier)?;
        let setup = started.elapsed().as_secs_f64();
        let probes = probe_states(model.model.interior_len(), cfg.probes.count, seed);
        for (i, &eps) in cfg.eps.iter().enumerate() {
            let t0 = Instant::now();
            let loc = exp.localize(eps).map_err(CliError::Verifier)?;
            let sweep = exp.sweep(&loc, &probes, &loaded.grid).map_err(CliError::Verifier)?;
            let allowance = previous[i].map(|p| (p - loc.static_norm).abs());
            previous[i] = Some(loc.static_norm);
            log::info!("L={l} eps={eps}: K_radius {:?}, static {:.3e}, sweep {:.3e}", loc.k_radius, loc.static_norm, sweep.max);
            reports.push(ExperimentReport {
                run_id: format!("{}-L{l}-eps{eps}", loaded.model_name),
                model: loaded.model_name.clone(),
                radius: l,
                quasi_orbit: exp.quasi_orbit(),
                kappa: loaded.kappa.nodes().to_vec(),
                eps_target: eps,
                e: loc.e.clone(),
                k_radius: loc.k_radius,
                static_norm: loc.static_norm,
                sweep_max: sweep.max,
                gap: exp.hypothesis().gap,
                chain: loc.chain,
                rho: loc.psi.as_ref().map(|p| p.rho),
                probes: sweep.probes,
                seed,
                truncation_allowance: allowance,
                runtime_s: setup + t0.elapsed().as_secs_f64(),
                series: sweep.series,
            });
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

fn write_outputs(
    loaded: &Loaded,
    seed: u64,
    out_dir: &Path,
    reports: Vec<ExperimentReport>,
    error: Option<&CliError>,
) -> Result<RunSummary, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &reports {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    let dump = Dump {
        model: &loaded.model_name,
        seed,
        status: error.map_or("ok", CliError::code),
        error: error.map(ToString::to_string),
        runs: &reports,
    };
    let json = serde_json::to_string_pretty(&dump).expect("reports serialize");
    let (csv_path, json_path) = (out_dir.join(CSV_NAME), out_dir.join(JSON_NAME));
    write_atomic(&csv_path, &csv)?;
    write_atomic(&json_path, &json)?;
    Ok(RunSummary { reports, csv: csv_path, json: json_path })
}
