//! Localization and non-propagation estimates for band operators on
//! compactified models.
//!
//! For a self-adjoint `H` on the window and a cutoff `κ` whose support
//! avoids the boundary spectrum over a set `Q` of boundary points, the
//! verifier builds a cutoff `ψ ∈ C(X)` equal to `2` on `Q`, finds a basic
//! neighborhood `W` of `Q` with `‖1_{W_0} κ(H)‖ ≤ ε`, and checks that the
//! bound survives the time evolution `e^{itH}`.

mod experiment;
mod hypothesis;
mod norms;
mod psi;
mod report;

pub use experiment::{
    find_localization_neighborhood, ideal_membership_residual, propagation_sweep, Experiment, Localization, Method,
    ProofChain, SweepPoint, SweepResult, TimeGrid,
};
pub use hypothesis::{check_hypothesis, HypothesisReport};
pub use norms::{probe_states, weighted_rows_norm};
pub use psi::{construct_psi, Psi};
pub use report::{ExperimentReport, CSV_HEADER};

/// Default number of probe states in a sweep.
pub const DEFAULT_PROBES: usize = 20;
/// Default probe seed.
pub const DEFAULT_SEED: u64 = 20_240_917;
