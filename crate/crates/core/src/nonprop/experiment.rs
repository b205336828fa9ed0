use std::time::Instant;

use faer::Mat;
use serde::Serialize;

use super::hypothesis::{check_hypothesis, normalize_quasi_orbit, HypothesisReport};
use super::norms::{largest_singular_value, scaled_rows, weighted_rows_norm};
use super::psi::{construct_psi, Psi};
use crate::boundary::{interior_operator, ModelFile};
use crate::error::{Error, Result};
use crate::repr::op_norm;
use crate::spectral::{eigendecompose, BumpFunction, LowRank};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid { start: 0.0, stop: 100.0, step: 0.5 }
    }
}

impl TimeGrid {
    pub fn single(t: f64) -> Self {
        TimeGrid { start: t, stop: t, step: 1.0 }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor().max(0.0) as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `ε ≥ 2 sup|κ|`: the whole fiber over `Q` already works.
    APriori,
    Separation,
}

/// `‖1_{W_0}κ‖ = ‖κ1_{W_0}κ‖^{1/2} ≤ ‖ψ|_M κ‖ ≤ ε`, plus the cutoff bound
/// `‖ψf‖ + ‖fψ‖ ≤ ε` and the boundary contribution `sup_{sp(F_Q)} |ψκ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofChain {
    pub static_norm: f64,
    pub sqrt_kappa_w_kappa: f64,
    pub psi_kappa: f64,
    pub psi_f_sum: f64,
    pub boundary_term: f64,
    pub eps: f64,
}

const CHAIN_SLACK: f64 = 1e-12;

impl ProofChain {
    pub fn holds(&self) -> bool {
        let le = |a: f64, b: f64| a <= b * (1.0 + CHAIN_SLACK) + CHAIN_SLACK;
        le(self.static_norm, self.sqrt_kappa_w_kappa)
            && le(self.sqrt_kappa_w_kappa, self.static_norm)
            && le(self.static_norm, self.psi_kappa)
            && le(self.psi_kappa, self.eps)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Localization {
    pub eps: f64,
    pub e: Vec<String>,
    /// `K = Z ∩ [-K₀, K₀]`; `None` for `K = ∅`.
    pub k_radius: Option<usize>,
    pub static_norm: f64,
    pub method: Method,
    pub chain: ProofChain,
    #[serde(skip)]
    pub psi: Option<Psi>,
    #[serde(skip)]
    pub w0: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub t: f64,
    pub max: f64,
    pub masses: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub max: f64,
    pub probes: usize,
    pub series: Vec<SweepPoint>,
}

/// One truncated model with its cutoff: the hypothesis check and the
/// eigendecomposition of `H_L` are done once and shared by every query.
#[derive(Debug, Clone)]
pub struct Experiment {
    model: ModelFile,
    kappa: BumpFunction,
    q: Vec<usize>,
    hypothesis: HypothesisReport,
    kappa_h: LowRank,
    eigenvalues: Vec<f64>,
    setup_seconds: f64,
}

impl Experiment {
    pub fn new(model: &ModelFile, kappa: &BumpFunction, q: &[String]) -> Result<Self> {
        let start = Instant::now();
        let hypothesis = check_hypothesis(kappa, q, model)?;
        let q_labels = normalize_quasi_orbit(q, model)?;
        let q = q_labels.iter().map(|n| model.model.boundary_index(n).expect("checked")).collect();
        let h = interior_operator(&model.band, &model.model)?;
        if !model.band.is_self_adjoint(&model.model) {
            return Err(Error::NotSelfAdjoint { defect: model.band.self_adjoint_defect(&model.model) });
        }
        let d = eigendecompose(&h)?;
        drop(h);
        let kappa_h = d.low_rank(kappa);
        let eigenvalues = d.real_values();
        log::info!(
            "L={} eigendecomposition with rank-{} cutoff in {:.2}s",
            model.model.radius(),
            kappa_h.rank(),
            start.elapsed().as_secs_f64()
        );
        Ok(Experiment {
            model: model.clone(),
            kappa: kappa.clone(),
            q,
            hypothesis,
            kappa_h,
            eigenvalues,
            setup_seconds: start.elapsed().as_secs_f64(),
        })
    }

    pub fn model(&self) -> &ModelFile {
        &self.model
    }

    pub fn kappa(&self) -> &BumpFunction {
        &self.kappa
    }

    pub fn hypothesis(&self) -> &HypothesisReport {
        &self.hypothesis
    }

    pub fn quasi_orbit(&self) -> Vec<String> {
        self.q.iter().map(|&n| self.model.model.boundary()[n].label.clone()).collect()
    }

    /// `κ(H_L)` in low-rank form.
    pub fn kappa_h(&self) -> &LowRank {
        &self.kappa_h
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn setup_seconds(&self) -> f64 {
        self.setup_seconds
    }

    /// `sup_{sp(H_L)} |κ|`, which is `‖κ(H_L)‖`.
    pub fn kappa_norm(&self) -> f64 {
        self.kappa_h.norm()
    }

    fn index(&self, m: i64) -> usize {
        (m + self.model.model.radius() as i64) as usize
    }

    /// Points of `A^M_{Q,K}` for `K = [-k, k]` (or `K = ∅`).
    pub fn neighborhood(&self, k_radius: Option<usize>) -> Vec<i64> {
        let cm = &self.model.model;
        cm.interior()
            .filter(|&m| cm.fiber_of(m).is_some_and(|n| self.q.contains(&n)))
            .filter(|&m| k_radius.is_none_or(|k| m.unsigned_abs() as usize > k))
            .collect()
    }

    /// `‖1_{W_0} κ(H_L)‖` for an arbitrary set of interior points.
    pub fn static_norm(&self, w0: &[i64]) -> f64 {
        let rows: Vec<(usize, f64)> = w0.iter().map(|&m| (self.index(m), 1.0)).collect();
        op_norm(&scaled_rows(&self.kappa_h, &rows))
    }

    fn chain(&self, eps: f64, w0: &[i64], psi_interior: &dyn Fn(usize) -> f64, psi_boundary: f64) -> (f64, ProofChain) {
        let static_norm = self.static_norm(w0);
        let rows: Vec<(usize, f64)> = w0.iter().map(|&m| (self.index(m), 1.0)).collect();
        let sqrt_kappa_w_kappa = largest_singular_value(&scaled_rows(&self.kappa_h, &rows));
        let psi_kappa = weighted_rows_norm(&self.kappa_h, psi_interior);
        let boundary_sup = self.hypothesis.spectrum.points().iter().fold(0.0f64, |m, z| m.max(self.kappa.eval(z.re).abs()));
        let chain = ProofChain {
            static_norm,
            sqrt_kappa_w_kappa,
            psi_kappa,
            psi_f_sum: 2.0 * psi_kappa,
            boundary_term: psi_boundary * boundary_sup,
            eps,
        };
        log::info!(
            "eps={eps}: static {static_norm:.3e} = sqrt|κ1κ| {sqrt_kappa_w_kappa:.3e} <= |ψκ| {psi_kappa:.3e} <= {eps}"
        );
        (static_norm, chain)
    }

    /// A basic neighborhood `W = A_{Q,K}` with `‖1_{W_0}κ(H_L)‖ ≤ ε`.
    pub fn localize(&self, eps: f64) -> Result<Localization> {
        let cm = &self.model.model;
        let e = self.quasi_orbit();
        if eps >= 2.0 * self.kappa_norm() {
            let w0 = self.neighborhood(None);
            let fiber: Vec<bool> = cm.interior().map(|m| cm.fiber_of(m).is_some_and(|n| self.q.contains(&n))).collect();
            let (static_norm, chain) = self.chain(eps, &w0, &|i| if fiber[i] { 2.0 } else { 0.0 }, 2.0);
            return Ok(Localization { eps, e, k_radius: None, static_norm, method: Method::APriori, chain, psi: None, w0 });
        }
        let psi = construct_psi(cm, eps, &self.q, &self.kappa_h)?;
        let k_radius = self
            .neighborhood(None)
            .into_iter()
            .filter(|&m| psi.interior[self.index(m)] <= 1.0)
            .map(|m| m.unsigned_abs() as usize)
            .max();
        let w0 = self.neighborhood(k_radius);
        let (static_norm, mut chain) = self.chain(eps, &w0, &|i| psi.interior[i], 2.0);
        chain.psi_f_sum = 2.0 * chain.psi_kappa;
        Ok(Localization { eps, e, k_radius, static_norm, method: Method::Separation, chain, psi: Some(psi), w0 })
    }

    /// `max_{t,u} ‖1_{W_0} e^{itH} κ(H) u‖ / ‖u‖` over the grid and probes.
    pub fn sweep(&self, loc: &Localization, probes: &[Vec<C64>], grid: &TimeGrid) -> Result<SweepResult> {
        let f = &self.kappa_h;
        let n = f.vectors.nrows();
        if probes.iter().any(|u| u.len() != n) {
            return Err(Error::Structure("probe dimension differs from the window".into()));
        }
        let rows: Vec<usize> = loc.w0.iter().map(|&m| self.index(m)).collect();
        let b = Mat::from_fn(rows.len(), f.rank(), |i, j| f.vectors[(rows[i], j)]);
        let norms: Vec<f64> = probes.iter().map(|u| u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
        let c = Mat::from_fn(f.rank(), probes.len(), |k, j| {
            let vu: C64 = (0..n).map(|i| f.vectors[(i, k)].conj() * probes[j][i]).sum();
            f.coefficients[k] * vu
        });
        let mut series = Vec::new();
        let mut overall: f64 = 0.0;
        for t in grid.points() {
            let p = Mat::from_fn(f.rank(), probes.len(), |k, j| C64::from_polar(1.0, t * f.eigenvalues[k].re) * c[(k, j)]);
            let y = &b * &p;
            let masses: Vec<f64> = (0..probes.len())
                .map(|j| (0..y.nrows()).map(|i| y[(i, j)].norm_sqr()).sum::<f64>().sqrt() / norms[j])
                .collect();
            let max = masses.iter().copied().fold(0.0, f64::max);
            overall = overall.max(max);
            series.push(SweepPoint { t, max, masses });
        }
        Ok(SweepResult { max: overall, probes: probes.len(), series })
    }

    /// `‖1_{tail_ρ(Q)} κ(H_L)‖` for each radius: the mass of `κ(H_L)` on
    /// the `Q`-fibers beyond `ρ`.
    pub fn ideal_membership_residual(&self, radii: &[usize]) -> Vec<(usize, f64)> {
        radii.iter().map(|&r| (r, self.static_norm(&self.neighborhood(Some(r))))).collect()
    }

    /// `0, 1, 2, 4, ...` up to `L`.
    pub fn default_radii(&self) -> Vec<usize> {
        let l = self.model.model.radius();
        std::iter::once(0).chain(std::iter::successors(Some(1usize), |r| Some(r * 2)).take_while(|&r| r <= l)).collect()
    }
}

pub fn find_localization_neighborhood(eps: f64, kappa: &BumpFunction, q: &[String], model: &ModelFile) -> Result<Localization> {
    Experiment::new(model, kappa, q)?.localize(eps)
}

pub fn propagation_sweep(
    experiment: &Experiment,
    loc: &Localization,
    probes: &[Vec<C64>],
    grid: &TimeGrid,
) -> Result<SweepResult> {
    experiment.sweep(loc, probes, grid)
}

pub fn ideal_membership_residual(kappa: &BumpFunction, q: &[String], model: &ModelFile, radii: &[usize]) -> Result<Vec<(usize, f64)>> {
    Ok(Experiment::new(model, kappa, q)?.ideal_membership_residual(radii))
}
