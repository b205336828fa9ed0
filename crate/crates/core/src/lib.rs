//! Finite models of groupoid C*-algebras, their boundary observables, and
//! numerical checks of localization and non-propagation estimates.
//!
//! The algebraic layer ([`groupoid`], [`algebra`]) is generic over the
//! scalar field through [`Real`]; the numerical layers ([`repr`],
//! [`spectral`], [`boundary`], [`nonprop`]) work in double precision.

pub mod algebra;
pub mod boundary;
pub mod error;
pub mod groupoid;
pub mod nonprop;
pub mod repr;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;
pub use num_rational::BigRational;

/// Complex double, the entry type of every operator matrix.
pub type C64 = Complex<f64>;

pub type GroupoidF64 = groupoid::FiniteGroupoid<f64>;
pub type ExactGroupoid = groupoid::FiniteGroupoid<BigRational>;
pub type KernelF64 = algebra::Kernel<f64>;
pub type ExactKernel = algebra::Kernel<BigRational>;
pub type UnitFunctionF64 = algebra::UnitFunction<f64>;
pub type ExactUnitFunction = algebra::UnitFunction<BigRational>;

/// Thread count for dense linear algebra; `1` runs sequentially.
pub fn set_threads(n: usize) {
    faer::set_global_parallelism(if n <= 1 { faer::Par::Seq } else { faer::Par::rayon(n) });
}
