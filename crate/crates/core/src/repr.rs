//! Matrix realizations of the convolution algebra.
//!
//! An [`OperatorMatrix`] acts on `ℓ²(basis; weights)` through its
//! coefficient matrix, `(Au)(i) = Σ_j A[i,j] u(j)`. Adjoints are taken with
//! respect to the weighted inner product. Spectral routines work on the
//! unitarily equivalent *standard form* `W^{1/2} A W^{-1/2}`, in which the
//! weighted adjoint is the ordinary conjugate transpose.

use std::fmt::Write;
use std::sync::Arc;

use faer::Mat;
use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::{Kernel, UnitFunction};
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid, UnitId};
use crate::scalar::{complex_to_c64, Real};
use crate::C64;

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    basis: Vec<String>,
    weights: Vec<f64>,
    entries: Mat<C64>,
}

impl OperatorMatrix {
    pub fn new(basis: Vec<String>, weights: Vec<f64>, entries: Mat<C64>) -> Result<Self> {
        let n = basis.len();
        if weights.len() != n || entries.nrows() != n || entries.ncols() != n {
            return Err(Error::Structure(format!(
                "basis of {n} labels, {} weights, {}x{} entries",
                weights.len(),
                entries.nrows(),
                entries.ncols()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::Structure(format!("non-positive weight {w}")));
        }
        Ok(OperatorMatrix { basis, weights, entries })
    }

    /// Matrix on `0..n` with counting weights.
    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        let basis = (0..n).map(|i| i.to_string()).collect();
        OperatorMatrix { basis, weights: vec![1.0; n], entries: Mat::from_fn(n, n, f) }
    }

    pub fn identity_on(basis: Vec<String>, weights: Vec<f64>) -> Self {
        let n = basis.len();
        let entries = Mat::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::zero() });
        OperatorMatrix { basis, weights, entries }
    }

    pub fn diagonal(basis: Vec<String>, weights: Vec<f64>, diag: &[C64]) -> Self {
        let n = basis.len();
        let entries = Mat::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::zero() });
        OperatorMatrix { basis, weights, entries }
    }

    /// Inverse of [`standard`](Self::standard).
    pub fn from_standard(basis: Vec<String>, weights: Vec<f64>, s: Mat<C64>) -> Result<Self> {
        let n = basis.len();
        if weights.len() != n || s.nrows() != n || s.ncols() != n {
            return Err(Error::Structure("dimension mismatch".into()));
        }
        let entries = Mat::from_fn(n, n, |i, j| s[(i, j)] * (weights[j] / weights[i]).sqrt());
        OperatorMatrix::new(basis, weights, entries)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn entries(&self) -> &Mat<C64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// `W^{1/2} A W^{-1/2}`.
    pub fn standard(&self) -> Mat<C64> {
        if self.has_unit_weights() {
            return self.entries.clone();
        }
        let w = &self.weights;
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| self.entries[(i, j)] * (w[i] / w[j]).sqrt())
    }

    /// Adjoint for the weighted inner product: `W⁻¹ A* W`.
    pub fn adjoint(&self) -> OperatorMatrix {
        let w = &self.weights;
        let n = self.dim();
        let entries = Mat::from_fn(n, n, |i, j| self.entries[(j, i)].conj() * (w[j] / w[i]));
        OperatorMatrix { basis: self.basis.clone(), weights: self.weights.clone(), entries }
    }

    fn check_compatible(&self, other: &OperatorMatrix) -> Result<()> {
        if self.basis != other.basis || self.weights != other.weights {
            return Err(Error::Structure("operators act on different spaces".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries * &other.entries))
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries - &other.entries))
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_compatible(other)?;
        Ok(self.with_entries(&self.entries + &other.entries))
    }

    pub fn scale(&self, c: C64) -> OperatorMatrix {
        let n = self.dim();
        self.with_entries(Mat::from_fn(n, n, |i, j| self.entries[(i, j)] * c))
    }

    pub fn with_entries(&self, entries: Mat<C64>) -> OperatorMatrix {
        OperatorMatrix { basis: self.basis.clone(), weights: self.weights.clone(), entries }
    }

    /// Operator norm on `ℓ²(basis; weights)`: the largest singular value of
    /// the standard form.
    pub fn op_norm(&self) -> f64 {
        op_norm(&self.standard())
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                m = m.max((self.entries[(i, j)] - other.entries[(i, j)]).norm());
            }
        }
        m
    }

    /// Largest entry of `S − S*` in standard form.
    pub fn self_adjoint_defect(&self) -> f64 {
        let s = self.standard();
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                m = m.max((s[(i, j)] - s[(j, i)].conj()).norm());
            }
        }
        m
    }

    /// Frobenius norm of `S S* − S* S` in standard form.
    pub fn normality_defect(&self) -> f64 {
        let s = self.standard();
        let c = &s * s.adjoint() - s.adjoint() * &s;
        c.norm_l2()
    }

    pub fn is_real(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| self.entries[(i, j)].im == 0.0))
    }

    /// Applies the operator to a coefficient vector.
    pub fn apply(&self, u: &[C64]) -> Vec<C64> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)] * u[j]).sum()).collect()
    }
}

/// Largest singular value.
pub fn op_norm(m: &Mat<C64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values().map(|s| s[0]).unwrap_or(f64::NAN)
}

/// Dense dump: a `# basis:` header, a `# weights:` header, then one row per
/// line as whitespace-separated `re im` pairs.
pub fn write_matrix(m: &OperatorMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "# basis: {}", m.basis.join(" ")).unwrap();
    let w: Vec<String> = m.weights.iter().map(|w| w.to_string()).collect();
    writeln!(s, "# weights: {}", w.join(" ")).unwrap();
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| format!("{} {}", m.entries[(i, j)].re, m.entries[(i, j)].im)).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<OperatorMatrix> {
    let mut basis = None;
    let mut weights = None;
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |message: String| Error::Parse { line: i + 1, message };
        if let Some(rest) = line.strip_prefix("# basis:") {
            basis = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
        } else if let Some(rest) = line.strip_prefix("# weights:") {
            weights = Some(
                rest.split_whitespace()
                    .map(|w| w.parse::<f64>().map_err(|_| err(format!("bad weight {w:?}"))))
                    .collect::<Result<Vec<_>>>()?,
            );
        } else if !line.is_empty() && !line.starts_with('#') {
            let nums = line
                .split_whitespace()
                .map(|x| x.parse::<f64>().map_err(|_| err(format!("bad number {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if nums.len() % 2 != 0 {
                return Err(err("odd number of fields".into()));
            }
            rows.push(nums.chunks(2).map(|c| C64::new(c[0], c[1])).collect());
        }
    }
    let basis = basis.ok_or(Error::Parse { line: 1, message: "missing basis header".into() })?;
    let n = basis.len();
    let weights = weights.unwrap_or_else(|| vec![1.0; n]);
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse { line: 1, message: format!("expected {n} rows of {n} entries") });
    }
    OperatorMatrix::new(basis, weights, Mat::from_fn(n, n, |i, j| rows[i][j]))
}

/// `Π_x(f) u = f ⋆ u` on `L²(Ξ_x; λ_x)`, in the arrow basis of `Ξ_x`.
///
/// Entry `[ξ, ζ] = f(ξζ⁻¹) λ^{r(ξ)}(ξζ⁻¹)`.
pub fn regular_rep<T: Real>(g: &FiniteGroupoid<T>, unit: &str, f: &Kernel<T>) -> Result<OperatorMatrix> {
    if !g.same_as(f.parent()) {
        return Err(Error::ParentMismatch);
    }
    let x = g.unit_id(unit).ok_or_else(|| Error::UnknownUnit(unit.to_string()))?;
    Ok(regular_rep_at(g, x, f))
}

pub(crate) fn regular_rep_at<T: Real>(g: &FiniteGroupoid<T>, x: UnitId, f: &Kernel<T>) -> OperatorMatrix {
    let fiber = g.source_fiber(x);
    let n = fiber.len();
    let entries = Mat::from_fn(n, n, |i, j| {
        let (xi, zeta) = (fiber[i], fiber[j]);
        match g.compose(xi, g.inverse(zeta)) {
            Some(eta) => complex_to_c64(&f.get(eta)) * g.left_weight(eta).lossy_f64(),
            None => C64::zero(),
        }
    });
    let basis = fiber.iter().map(|&a| g.arrow(a).label.clone()).collect();
    let weights = fiber.iter().map(|&a| g.weight(a).lossy_f64()).collect();
    OperatorMatrix { basis, weights, entries }
}

/// The vector representation `Π_0` on `ℓ²(M; μ)`, transported from `Π_z`
/// along the bijection `r_z: Ξ_z → M`.
#[derive(Debug, Clone)]
pub struct VectorRepresentation<T: Real> {
    groupoid: Arc<FiniteGroupoid<T>>,
    base: UnitId,
    fiber: Vec<ArrowId>,
    points: Vec<UnitId>,
}

impl<T: Real> VectorRepresentation<T> {
    pub fn new(groupoid: Arc<FiniteGroupoid<T>>, base: &str) -> Result<Self> {
        let z = groupoid.unit_id(base).ok_or_else(|| Error::UnknownUnit(base.to_string()))?;
        let fiber = groupoid.source_fiber(z).to_vec();
        let points: Vec<UnitId> = fiber.iter().map(|&a| groupoid.range(a)).collect();
        let mut seen = vec![false; groupoid.unit_count()];
        for p in &points {
            if std::mem::replace(&mut seen[p.0], true) {
                return Err(Error::NotPrincipal { unit: base.to_string() });
            }
        }
        Ok(VectorRepresentation { groupoid, base: z, fiber, points })
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.groupoid
    }

    /// The orbit `M`, ordered as the arrows of `Ξ_z`.
    pub fn points(&self) -> &[UnitId] {
        &self.points
    }

    pub fn basis(&self) -> Vec<String> {
        self.points.iter().map(|&m| self.groupoid.unit_label(m).to_string()).collect()
    }

    /// `μ = r_z(λ_z)`.
    pub fn measure(&self) -> Vec<f64> {
        self.fiber.iter().map(|&a| self.groupoid.weight(a).lossy_f64()).collect()
    }

    /// `Π_0(f) = R_z⁻¹ Π_z(f) R_z`.
    pub fn apply(&self, f: &Kernel<T>) -> Result<OperatorMatrix> {
        if !self.groupoid.same_as(f.parent()) {
            return Err(Error::ParentMismatch);
        }
        let m = regular_rep_at(&self.groupoid, self.base, f);
        OperatorMatrix::new(self.basis(), self.measure(), m.entries)
    }

    /// `Π_0(ψ) u = ψ|_M u`.
    pub fn multiplier(&self, psi: &UnitFunction<T>) -> Result<OperatorMatrix> {
        if !self.groupoid.same_as(psi.parent()) {
            return Err(Error::ParentMismatch);
        }
        let diag: Vec<C64> = self.points.iter().map(|&m| complex_to_c64(psi.get(m))).collect();
        Ok(OperatorMatrix::diagonal(self.basis(), self.measure(), &diag))
    }
}

impl VectorRepresentation<f64> {
    /// Recovers the kernel on `Ξ_M` whose vector representation is `m`.
    /// Every matrix arises this way when `Ξ_M` is a pair groupoid.
    pub fn kernel_from_matrix(&self, m: &OperatorMatrix) -> Result<Kernel<f64>> {
        if m.basis() != self.basis().as_slice() {
            return Err(Error::Structure("matrix basis differs from the orbit".into()));
        }
        let g = &self.groupoid;
        let mut k = Kernel::zero(g.clone());
        for (i, &xi) in self.fiber.iter().enumerate() {
            for (j, &zeta) in self.fiber.iter().enumerate() {
                let eta = g
                    .compose(xi, g.inverse(zeta))
                    .ok_or_else(|| Error::Structure("orbit arrows do not compose".into()))?;
                let v = m.entry(i, j) / *g.left_weight(eta);
                k.set(eta, Complex::new(v.re, v.im));
            }
        }
        Ok(k)
    }
}

/// `Π_0(f)` for the orbit through `base`.
pub fn vector_rep<T: Real>(g: &Arc<FiniteGroupoid<T>>, base: &str, f: &Kernel<T>) -> Result<OperatorMatrix> {
    VectorRepresentation::new(g.clone(), base)?.apply(f)
}

/// Multiplication by `ψ|_M` on `ℓ²(M; μ)` for the orbit through `base`.
pub fn multiplier_mult<T: Real>(g: &Arc<FiniteGroupoid<T>>, base: &str, psi: &UnitFunction<T>) -> Result<OperatorMatrix> {
    VectorRepresentation::new(g.clone(), base)?.multiplier(psi)
}
