//! The convolution *-algebra `C_c(Ξ)` of a finite groupoid.

mod io;
mod kernel;
mod reduction;

pub use io::{parse_kernel, parse_unit_function, write_kernel, write_unit_function};
pub use kernel::{cx_action, hahn_norm, Kernel, Side, UnitFunction, DEFAULT_TOLERANCE};
pub use reduction::{restrict, Reduction};
