use super::{BandKernel, BoundaryPoint, CompactificationModel, Convergence, Direction, FiberGroup, ModelFile, Profile, Ray};
use crate::spectral::BumpFunction;
use crate::C64;

/// The discrete line with a potential step: `a_{±1} = 1`, `a_0(m) = 4`
/// for `m < 0` and `0` for `m ≥ 0`, compactified by `±∞` with isotropy
/// `Z`. The boundary spectra are `[-2, 2]` at `+inf` and `[2, 6]` at
/// `-inf`.
pub fn step_potential_model(radius: usize) -> ModelFile {
    let point = |label: &str, start, direction| BoundaryPoint {
        label: label.into(),
        group: FiberGroup::Lattice(1),
        rays: vec![Ray { start, direction }],
    };
    let model = CompactificationModel::new(radius, vec![point("+inf", 1, Direction::Up), point("-inf", -1, Direction::Down)])
        .expect("step model");
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let four = C64::new(4.0, 0.0);
    let band = BandKernel::new(
        1,
        vec![
            (-1, Profile::Const(one)),
            (0, Profile::Step { left: four, right: zero, at: 0 }),
            (1, Profile::Const(one)),
        ],
        vec![
            ("+inf".into(), -1, one),
            ("+inf".into(), 0, zero),
            ("+inf".into(), 1, one),
            ("-inf".into(), -1, one),
            ("-inf".into(), 0, four),
            ("-inf".into(), 1, one),
        ],
        Convergence::Eventual,
    )
    .expect("step kernel");
    ModelFile::new(model, band).expect("consistent step model")
}

/// The hat on `[3, 5]` peaking at `4`, inside the `-inf` band and a unit
/// away from the `+inf` band.
pub fn step_potential_cutoff() -> BumpFunction {
    BumpFunction::hat(3.0, 4.0, 5.0, 1.0).expect("hat nodes")
}
