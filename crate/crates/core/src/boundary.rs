//! Compactifications `X = M ⊔ N` of an integer window, band-limited
//! kernels on them, and the convolution operators living at the boundary.

mod band;
mod file;
mod group_kernel;
mod model;
mod realize;
mod zmodel;

pub use band::{
    boundary_operator, fourier_symbol_spectrum, interior_operator, interior_spectrum, BandKernel, Convergence, Profile,
};
pub use file::ModelFile;
pub use group_kernel::BoundaryKernel;
pub use model::{
    continuity_check, membership_neighborhood, BoundaryPoint, CompactificationModel, ContinuityReport, Direction,
    FiberGroup, NeighborhoodSpec, Point, PointFunction, Ray, Witness, EPSILON_LADDER,
};
pub use realize::{build_compactified_groupoid, Compactified};
pub use zmodel::{step_potential_cutoff, step_potential_model};
