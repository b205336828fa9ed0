use std::collections::BTreeMap;

use faer::Mat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{BoundaryKernel, CompactificationModel, FiberGroup};
use crate::error::{Error, Result};
use crate::repr::OperatorMatrix;
use crate::spectral::{spectrum, tridiagonal_eigenvalues, SpectrumSet};
use crate::C64;

/// How a coefficient `a_k(m)` depends on the interior point `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    Const(C64),
    /// `left` for `m < at`, `right` otherwise.
    Step { left: C64, right: C64, at: i64 },
    /// `left + (right − left)(1 + tanh((m − center)/width))/2`.
    Tanh { left: C64, right: C64, center: f64, width: f64 },
    /// `values[i]` at `m = start + i`, constant beyond either end.
    Table { start: i64, values: Vec<C64>, below: C64, above: C64 },
}

impl Profile {
    pub fn eval(&self, m: i64) -> C64 {
        match self {
            Profile::Const(c) => *c,
            Profile::Step { left, right, at } => {
                if m < *at {
                    *left
                } else {
                    *right
                }
            }
            Profile::Tanh { left, right, center, width } => {
                let s = (1.0 + ((m as f64 - center) / width).tanh()) / 2.0;
                left + (right - left) * s
            }
            Profile::Table { start, values, below, above } => {
                if m < *start {
                    *below
                } else {
                    values.get((m - start) as usize).copied().unwrap_or(*above)
                }
            }
        }
    }
}

/// Declared rate at which `a_k(m) → a_k(n)` along the fibers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    /// Constant outside a finite set.
    Eventual,
    Power(f64),
    Exponential(f64),
}

/// `(H u)(m) = Σ_{|k| ≤ b} a_k(m) u(m − k)`, with limits `a_k(n)` at
/// the boundary points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBand", into = "RawBand")]
pub struct BandKernel {
    bandwidth: usize,
    coefficients: BTreeMap<i64, Profile>,
    limits: BTreeMap<String, BTreeMap<i64, C64>>,
    convergence: Convergence,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBand {
    bandwidth: usize,
    convergence: Convergence,
    coefficients: Vec<RawCoefficient>,
    limits: Vec<RawLimit>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficient {
    offset: i64,
    profile: Profile,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLimit {
    point: String,
    offset: i64,
    value: C64,
}

impl TryFrom<RawBand> for BandKernel {
    type Error = Error;

    fn try_from(raw: RawBand) -> Result<Self> {
        BandKernel::new(
            raw.bandwidth,
            raw.coefficients.into_iter().map(|c| (c.offset, c.profile)).collect(),
            raw.limits.into_iter().map(|l| (l.point, l.offset, l.value)).collect(),
            raw.convergence,
        )
    }
}

impl From<BandKernel> for RawBand {
    fn from(b: BandKernel) -> Self {
        RawBand {
            bandwidth: b.bandwidth,
            convergence: b.convergence,
            coefficients: b.coefficients.into_iter().map(|(offset, profile)| RawCoefficient { offset, profile }).collect(),
            limits: b
                .limits
                .into_iter()
                .flat_map(|(point, vals)| {
                    vals.into_iter().map(move |(offset, value)| RawLimit { point: point.clone(), offset, value })
                })
                .collect(),
        }
    }
}

const HERMITIAN_TOL: f64 = 1e-14;

impl BandKernel {
    pub fn new(
        bandwidth: usize,
        coefficients: Vec<(i64, Profile)>,
        limits: Vec<(String, i64, C64)>,
        convergence: Convergence,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (k, p) in coefficients {
            if k.unsigned_abs() as usize > bandwidth {
                return Err(Error::BadModel(format!("offset {k} exceeds bandwidth {bandwidth}")));
            }
            if coeffs.insert(k, p).is_some() {
                return Err(Error::BadModel(format!("offset {k} given twice")));
            }
        }
        let mut lims: BTreeMap<String, BTreeMap<i64, C64>> = BTreeMap::new();
        for (n, k, v) in limits {
            if k.unsigned_abs() as usize > bandwidth {
                return Err(Error::BadModel(format!("limit offset {k} exceeds bandwidth {bandwidth}")));
            }
            if lims.entry(n.clone()).or_default().insert(k, v).is_some() {
                return Err(Error::BadModel(format!("limit at {n} for offset {k} given twice")));
            }
        }
        Ok(BandKernel { bandwidth, coefficients: coeffs, limits: lims, convergence })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn convergence(&self) -> Convergence {
        self.convergence
    }

    pub fn profiles(&self) -> &BTreeMap<i64, Profile> {
        &self.coefficients
    }

    /// `a_k(m)`.
    pub fn coefficient(&self, k: i64, m: i64) -> C64 {
        self.coefficients.get(&k).map_or(C64::zero(), |p| p.eval(m))
    }

    /// `a_k(n)`; offsets without a declared limit are zero.
    pub fn limit(&self, n: &str, k: i64) -> Result<C64> {
        let lim = self.limits.get(n).ok_or_else(|| Error::UnknownUnit(n.to_string()))?;
        Ok(lim.get(&k).copied().unwrap_or_else(C64::zero))
    }

    pub fn limit_points(&self) -> impl Iterator<Item = &str> {
        self.limits.keys().map(String::as_str)
    }

    fn offsets(&self) -> std::ops::RangeInclusive<i64> {
        let b = self.bandwidth as i64;
        -b..=b
    }

    /// The restriction `F|_{Σ_n}` as a kernel on `Z`.
    pub fn boundary_kernel(&self, n: &str) -> Result<BoundaryKernel> {
        let lim = self.limits.get(n).ok_or_else(|| Error::UnknownUnit(n.to_string()))?;
        BoundaryKernel::new(n, FiberGroup::Lattice(1), lim.iter().map(|(&k, &v)| (vec![k], v)).collect())
    }

    /// Limits must be declared exactly at the boundary points of `cm`,
    /// whose isotropy must be `Z`.
    pub fn check_model(&self, cm: &CompactificationModel) -> Result<()> {
        for n in cm.boundary() {
            if !self.limits.contains_key(&n.label) {
                return Err(Error::BadModel(format!("no boundary limits at {}", n.label)));
            }
            if n.group != FiberGroup::Lattice(1) {
                return Err(Error::BadModel(format!("band kernels need Z isotropy at {}", n.label)));
            }
        }
        if let Some(extra) = self.limits.keys().find(|l| cm.boundary_index(l).is_none()) {
            return Err(Error::BadModel(format!("limits given at unknown point {extra}")));
        }
        Ok(())
    }

    /// Largest `|a_{−k}(m − k) − conj a_k(m)|` over the window and the
    /// boundary limits.
    pub fn self_adjoint_defect(&self, cm: &CompactificationModel) -> f64 {
        let mut worst: f64 = 0.0;
        for m in cm.interior() {
            for k in self.offsets() {
                worst = worst.max((self.coefficient(-k, m - k) - self.coefficient(k, m).conj()).norm());
            }
        }
        for n in self.limits.keys() {
            for k in self.offsets() {
                let (a, b) = (self.limit(n, -k).unwrap_or_default(), self.limit(n, k).unwrap_or_default());
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst
    }

    pub fn is_self_adjoint(&self, cm: &CompactificationModel) -> bool {
        self.self_adjoint_defect(cm) <= HERMITIAN_TOL
    }

    /// Largest `|a_k(m) − a_k(n)|` over the fiber points of `n` outside
    /// `[-ρ, ρ]`.
    pub fn limit_defect(&self, cm: &CompactificationModel, n: &str, rho: usize) -> Result<f64> {
        let idx = cm.boundary_index(n).ok_or_else(|| Error::UnknownUnit(n.to_string()))?;
        let mut worst: f64 = 0.0;
        for m in cm.fiber(idx).into_iter().filter(|m| m.unsigned_abs() as usize > rho) {
            for k in self.offsets() {
                worst = worst.max((self.coefficient(k, m) - self.limit(n, k)?).norm());
            }
        }
        Ok(worst)
    }

    /// Diagonal and off-diagonal of the interior operator when it is real,
    /// symmetric and tridiagonal.
    pub fn tridiagonal(&self, cm: &CompactificationModel) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.bandwidth > 1 {
            return None;
        }
        let window: Vec<i64> = cm.interior().collect();
        let d: Vec<C64> = window.iter().map(|&m| self.coefficient(0, m)).collect();
        let lower: Vec<C64> = window[1..].iter().map(|&m| self.coefficient(1, m)).collect();
        let upper: Vec<C64> = window[..window.len() - 1].iter().map(|&m| self.coefficient(-1, m)).collect();
        let real = d.iter().chain(&lower).all(|z| z.im == 0.0);
        if !real || lower.iter().zip(&upper).any(|(a, b)| a != b) {
            return None;
        }
        Some((d.iter().map(|z| z.re).collect(), lower.iter().map(|z| z.re).collect()))
    }
}

/// `H_0` on `ℓ²(Z ∩ [-L, L])` with a hard cutoff: `H[m, m−k] = a_k(m)`
/// whenever both points lie in the window.
pub fn interior_operator(bk: &BandKernel, cm: &CompactificationModel) -> Result<OperatorMatrix> {
    bk.check_model(cm)?;
    let l = cm.radius() as i64;
    let b = bk.bandwidth() as i64;
    let n = cm.interior_len();
    let entries = Mat::from_fn(n, n, |i, j| {
        let (m, mp) = (i as i64 - l, j as i64 - l);
        if (m - mp).abs() <= b {
            bk.coefficient(m - mp, m)
        } else {
            C64::zero()
        }
    });
    OperatorMatrix::new(cm.interior().map(|m| m.to_string()).collect(), vec![1.0; n], entries)
}

/// `sp(H_0)`, through QL iteration when `H_0` is a real Jacobi matrix.
pub fn interior_spectrum(bk: &BandKernel, cm: &CompactificationModel) -> Result<SpectrumSet> {
    bk.check_model(cm)?;
    match bk.tridiagonal(cm) {
        Some((d, e)) => Ok(SpectrumSet::exact_real(tridiagonal_eigenvalues(&d, &e)?)),
        None => spectrum(&interior_operator(bk, cm)?),
    }
}

/// `H_n` truncated to `[-R, R]`: entries `a_{j−j'}(n)`.
pub fn boundary_operator(bk: &BandKernel, n: &str, radius: usize) -> Result<OperatorMatrix> {
    if radius < bk.bandwidth() {
        return Err(Error::Radius { radius, bandwidth: bk.bandwidth() });
    }
    bk.boundary_kernel(n)?.convolution_matrix(radius)
}

/// Range of `â_n(θ) = Σ_k a_k(n) e^{ikθ}` on `grid` equispaced angles.
pub fn fourier_symbol_spectrum(bk: &BandKernel, n: &str, grid: usize) -> Result<SpectrumSet> {
    bk.boundary_kernel(n)?.symbol_spectrum(grid)
}
