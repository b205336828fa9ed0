use faer::{Mat, Side};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::repr::OperatorMatrix;
use crate::spectral::{tridiagonal_eigenvalues, BumpFunction, SpectrumSet, NORMALITY_TOLERANCE, SELF_ADJOINT_TOLERANCE};
use crate::C64;

/// Generic coefficient for the commuting pencil `A + cB`.
const PENCIL: f64 = 0.618_033_988_749_894_8;
const RESIDUAL: f64 = 1e-8;

/// Unitary diagonalization `S = V diag(λ) V*` of the standard form of a
/// normal operator.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    basis: Vec<String>,
    weights: Vec<f64>,
    values: Vec<C64>,
    vectors: Mat<C64>,
    self_adjoint: bool,
}

/// `Σ_k c_k v_k v_k*` restricted to the eigenpairs with `c_k ≠ 0`.
#[derive(Debug, Clone)]
pub struct LowRank {
    basis: Vec<String>,
    weights: Vec<f64>,
    /// Orthonormal columns in standard form.
    pub vectors: Mat<C64>,
    pub coefficients: Vec<C64>,
    /// Eigenvalues belonging to the kept columns.
    pub eigenvalues: Vec<C64>,
}

fn max_entry(s: &Mat<C64>) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..s.ncols() {
        for i in 0..s.nrows() {
            m = m.max(s[(i, j)].norm());
        }
    }
    m
}

fn self_adjoint_defect(s: &Mat<C64>) -> f64 {
    let n = s.nrows();
    let mut m: f64 = 0.0;
    for j in 0..n {
        for i in j..n {
            m = m.max((s[(i, j)] - s[(j, i)].conj()).norm());
        }
    }
    m
}

fn is_real(s: &Mat<C64>) -> bool {
    (0..s.ncols()).all(|j| (0..s.nrows()).all(|i| s[(i, j)].im == 0.0))
}

fn is_self_adjoint(s: &Mat<C64>) -> bool {
    self_adjoint_defect(s) <= SELF_ADJOINT_TOLERANCE * max_entry(s).max(f64::MIN_POSITIVE)
}

fn check_normal(s: &Mat<C64>) -> Result<()> {
    let c = s * s.adjoint() - s.adjoint() * s;
    let scale = s.norm_l2().powi(2).max(f64::MIN_POSITIVE);
    let defect = c.norm_l2() / scale;
    if defect > NORMALITY_TOLERANCE {
        return Err(Error::NotNormal { defect });
    }
    Ok(())
}

fn real_part(s: &Mat<C64>) -> Mat<f64> {
    Mat::from_fn(s.nrows(), s.ncols(), |i, j| s[(i, j)].re)
}

fn to_complex(m: faer::MatRef<'_, f64>) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0))
}

fn hermitian_eigen(s: &Mat<C64>) -> Result<(Vec<f64>, Mat<C64>)> {
    let fail = |e| Error::Numerical(format!("self-adjoint eigensolver: {e:?}"));
    if is_real(s) {
        let e = real_part(s).self_adjoint_eigen(Side::Lower).map_err(fail)?;
        let values = e.S().column_vector().iter().copied().collect();
        Ok((values, to_complex(e.U())))
    } else {
        let e = s.self_adjoint_eigen(Side::Lower).map_err(fail)?;
        let values = e.S().column_vector().iter().map(|z| z.re).collect();
        Ok((values, e.U().to_owned()))
    }
}

/// Real symmetric tridiagonal matrices go through QL iteration.
fn as_tridiagonal(s: &Mat<C64>) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = s.nrows();
    if !is_real(s) {
        return None;
    }
    for j in 0..n {
        for i in 0..n {
            if i.abs_diff(j) > 1 && s[(i, j)].re != 0.0 {
                return None;
            }
        }
    }
    let d = (0..n).map(|i| s[(i, i)].re).collect();
    let e = (1..n).map(|i| s[(i, i - 1)].re).collect::<Vec<_>>();
    if (1..n).any(|i| s[(i - 1, i)].re != e[i - 1]) {
        return None;
    }
    Some((d, e))
}

/// All eigenvalues with multiplicity. Non-normal matrices are rejected.
pub fn spectrum(h: &OperatorMatrix) -> Result<SpectrumSet> {
    let s = h.standard();
    if is_self_adjoint(&s) {
        if let Some((d, e)) = as_tridiagonal(&s) {
            return Ok(SpectrumSet::exact_real(tridiagonal_eigenvalues(&d, &e)?));
        }
        let fail = |e| Error::Numerical(format!("self-adjoint eigensolver: {e:?}"));
        let values: Vec<f64> = if is_real(&s) {
            real_part(&s).self_adjoint_eigenvalues(Side::Lower).map_err(fail)?
        } else {
            s.self_adjoint_eigenvalues(Side::Lower).map_err(fail)?
        };
        return Ok(SpectrumSet::exact_real(values));
    }
    Ok(eigendecompose(h)?.spectrum())
}

/// Unitary eigendecomposition of a normal operator, with the residual of
/// every eigenpair checked against `1e-8·‖H‖`.
pub fn eigendecompose(h: &OperatorMatrix) -> Result<Eigendecomposition> {
    let s = h.standard();
    let n = s.nrows();
    let self_adjoint = is_self_adjoint(&s);
    let (values, vectors) = if self_adjoint {
        let (values, vectors) = hermitian_eigen(&s)?;
        (values.into_iter().map(|x| C64::new(x, 0.0)).collect(), vectors)
    } else {
        check_normal(&s)?;
        // A = (S + S*)/2 and B = (S − S*)/2i commute; a generic combination
        // separates their joint eigenspaces.
        let i2 = C64::new(0.0, 2.0);
        let half = C64::new(0.5, 0.0);
        let pencil = Mat::from_fn(n, n, |i, j| {
            let (a, b) = (s[(i, j)], s[(j, i)].conj());
            (a + b) * half + (a - b) / i2 * PENCIL
        });
        let (_, vectors) = hermitian_eigen(&pencil)?;
        let sv = &s * &vectors;
        let values = (0..n).map(|k| (0..n).map(|i| vectors[(i, k)].conj() * sv[(i, k)]).sum()).collect();
        (values, vectors)
    };
    let d = Eigendecomposition { basis: h.basis().to_vec(), weights: h.weights().to_vec(), values, vectors, self_adjoint };
    let norm = d.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let residual = d.residual(&s);
    if residual > RESIDUAL * norm.max(1.0) {
        return Err(Error::Numerical(format!("eigenpair residual {residual:e}")));
    }
    Ok(d)
}

/// `κ(H)`. For a normal, non-self-adjoint `H` the function is applied to
/// the real part of each eigenvalue.
pub fn functional_calculus(kappa: &BumpFunction, h: &OperatorMatrix) -> Result<OperatorMatrix> {
    eigendecompose(h)?.apply(kappa)
}

/// `e^{itH}` for self-adjoint `H`.
pub fn evolution(h: &OperatorMatrix, t: f64) -> Result<OperatorMatrix> {
    let d = eigendecompose(h)?;
    if !d.is_self_adjoint() {
        return Err(Error::NotSelfAdjoint { defect: h.self_adjoint_defect() });
    }
    d.evolution(t)
}

impl Eigendecomposition {
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// Eigenvectors in standard form, one per column.
    pub fn vectors(&self) -> &Mat<C64> {
        &self.vectors
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    pub fn spectrum(&self) -> SpectrumSet {
        SpectrumSet::exact(self.values.clone())
    }

    /// The `k`-th eigenvector in the original weighted coordinates, labeled
    /// by basis element.
    pub fn eigenvector(&self, k: usize) -> Vec<(String, C64)> {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), self.vectors[(i, k)] / self.weights[i].sqrt()))
            .collect()
    }

    /// Largest `‖S v_k − λ_k v_k‖` against the standard form `s`.
    pub fn residual(&self, s: &Mat<C64>) -> f64 {
        let sv = s * &self.vectors;
        (0..self.values.len())
            .map(|k| (0..s.nrows()).map(|i| (sv[(i, k)] - self.values[k] * self.vectors[(i, k)]).norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// `φ(H)` for an arbitrary function of the eigenvalues.
    pub fn map(&self, phi: impl Fn(C64) -> C64) -> Result<OperatorMatrix> {
        let coefficients: Vec<C64> = self.values.iter().map(|&z| phi(z)).collect();
        self.combine(&self.vectors, &coefficients)
    }

    pub fn apply(&self, kappa: &BumpFunction) -> Result<OperatorMatrix> {
        self.low_rank(kappa).to_operator()
    }

    /// `κ(H)` keeping only the eigenvectors on which `κ` does not vanish.
    pub fn low_rank(&self, kappa: &BumpFunction) -> LowRank {
        let keep: Vec<usize> = (0..self.values.len()).filter(|&k| kappa.eval(self.values[k].re) != 0.0).collect();
        let n = self.basis.len();
        LowRank {
            basis: self.basis.clone(),
            weights: self.weights.clone(),
            vectors: Mat::from_fn(n, keep.len(), |i, j| self.vectors[(i, keep[j])]),
            coefficients: keep.iter().map(|&k| C64::new(kappa.eval(self.values[k].re), 0.0)).collect(),
            eigenvalues: keep.iter().map(|&k| self.values[k]).collect(),
        }
    }

    pub fn evolution(&self, t: f64) -> Result<OperatorMatrix> {
        self.map(|z| C64::new(0.0, t * z.re).exp())
    }

    fn combine(&self, v: &Mat<C64>, c: &[C64]) -> Result<OperatorMatrix> {
        combine(&self.basis, &self.weights, v, c)
    }
}

fn combine(basis: &[String], weights: &[f64], v: &Mat<C64>, c: &[C64]) -> Result<OperatorMatrix> {
    let scaled = Mat::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)] * c[j]);
    let s = if v.ncols() == 0 { Mat::from_fn(v.nrows(), v.nrows(), |_, _| C64::zero()) } else { &scaled * v.adjoint() };
    OperatorMatrix::from_standard(basis.to_vec(), weights.to_vec(), s)
}

impl LowRank {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_operator(&self) -> Result<OperatorMatrix> {
        combine(&self.basis, &self.weights, &self.vectors, &self.coefficients)
    }

    /// Operator norm, `max |c_k|`.
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}
