use serde::Serialize;

use super::{Localization, ProofChain, SweepPoint};

pub const CSV_HEADER: &str = "run_id,L,eps_target,E,K_radius,static_norm,sweep_max,gap,runtime_s";

/// One `(L, ε)` point of an experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub run_id: String,
    pub model: String,
    pub radius: usize,
    pub quasi_orbit: Vec<String>,
    pub kappa: Vec<(f64, f64)>,
    pub eps_target: f64,
    pub e: Vec<String>,
    pub k_radius: Option<usize>,
    pub static_norm: f64,
    pub sweep_max: f64,
    pub gap: f64,
    pub chain: ProofChain,
    pub rho: Option<usize>,
    pub probes: usize,
    pub seed: u64,
    /// `|static(L) − static(L_prev)|` along the truncation ladder.
    pub truncation_allowance: Option<f64>,
    pub runtime_s: f64,
    pub series: Vec<SweepPoint>,
}

impl ExperimentReport {
    pub fn met_target(&self) -> bool {
        self.static_norm <= self.eps_target && self.sweep_max <= self.static_norm + 1e-10 && self.chain.holds()
    }

    pub fn localization_fields(loc: &Localization) -> (Vec<String>, Option<usize>, Option<usize>) {
        (loc.e.clone(), loc.k_radius, loc.psi.as_ref().map(|p| p.rho))
    }

    /// One CSV row matching [`CSV_HEADER`]. An empty `K` prints as `-1`.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.12e},{:.12e},{:.12e},{:.3}",
            self.run_id,
            self.radius,
            self.eps_target,
            self.e.join(";"),
            self.k_radius.map_or(-1, |k| k as i64),
            self.static_norm,
            self.sweep_max,
            self.gap,
            self.runtime_s
        )
    }
}
