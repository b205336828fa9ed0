use serde::Serialize;

use crate::boundary::{fourier_symbol_spectrum, ModelFile};
use crate::error::{Error, Result};
use crate::spectral::{essential_spectrum_union, support_gap, BumpFunction, SpectrumSet, DEFAULT_GRID};

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub quasi_orbit: Vec<String>,
    /// `(n, min Re, max Re)` of each sampled symbol range.
    pub ranges: Vec<(String, f64, f64)>,
    pub gap: f64,
    pub grid_step: f64,
    #[serde(skip)]
    pub spectrum: SpectrumSet,
}

/// `sp(F_Q)` as the union of the symbol ranges over `Q`, and its distance
/// to `supp κ`. A zero gap is an error.
pub fn check_hypothesis(kappa: &BumpFunction, q: &[String], model: &ModelFile) -> Result<HypothesisReport> {
    let q = normalize_quasi_orbit(q, model)?;
    let mut spectra = Vec::new();
    let mut ranges = Vec::new();
    for n in &q {
        let s = fourier_symbol_spectrum(&model.band, n, DEFAULT_GRID)?;
        ranges.push((n.clone(), s.min_re(), s.max_re()));
        spectra.push(s);
    }
    let spectrum = essential_spectrum_union(&spectra);
    let gap = support_gap(kappa, &spectrum);
    if gap <= 0.0 {
        return Err(Error::HypothesisFails { gap });
    }
    Ok(HypothesisReport { quasi_orbit: q, ranges, gap, grid_step: spectrum.step(), spectrum })
}

/// Boundary points are singleton orbits, so any nonempty set of known
/// boundary labels is a union of quasi-orbits.
pub(crate) fn normalize_quasi_orbit(q: &[String], model: &ModelFile) -> Result<Vec<String>> {
    if q.is_empty() {
        return Err(Error::BadModel("empty quasi-orbit".into()));
    }
    let mut out: Vec<String> = Vec::new();
    for n in q {
        if model.model.boundary_index(n).is_none() {
            return Err(Error::UnknownUnit(n.clone()));
        }
        if !out.contains(n) {
            out.push(n.clone());
        }
    }
    Ok(out)
}
