//! Spectra of normal matrices, functional calculus, and spectral sets.

mod bump;
mod decomp;
mod set;
mod tridiagonal;

pub use bump::BumpFunction;
pub use decomp::{eigendecompose, evolution, functional_calculus, spectrum, Eigendecomposition, LowRank};
pub use set::{essential_spectrum_union, support_gap, Hausdorff, SpectrumKind, SpectrumSet};
pub use tridiagonal::tridiagonal_eigenvalues;

/// Relative commutator-norm threshold for accepting a matrix as normal.
pub const NORMALITY_TOLERANCE: f64 = 1e-10;
/// Relative threshold on `S − S*` for taking the self-adjoint path.
pub const SELF_ADJOINT_TOLERANCE: f64 = 1e-12;
/// Grid points per torus dimension for sampled symbol ranges.
pub const DEFAULT_GRID: usize = 4096;
