mod common;

use std::f64::consts::PI;

use gloc::boundary::{
    boundary_operator, build_compactified_groupoid, continuity_check, fourier_symbol_spectrum, interior_operator, interior_spectrum,
    membership_neighborhood, step_potential_model, BandKernel, BoundaryKernel, BoundaryPoint, CompactificationModel, Convergence,
    Direction, FiberGroup, ModelFile, NeighborhoodSpec, Point, PointFunction, Profile, Ray, EPSILON_LADDER,
};
use gloc::groupoid::{orbit_decomposition, validate, FiniteGroup};
use gloc::repr::OperatorMatrix;
use gloc::spectral::{spectrum, SpectrumKind, SpectrumSet, DEFAULT_GRID};
use gloc::{Complex, Error, C64};
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

fn ray(start: i64, direction: Direction) -> Ray {
    Ray { start, direction }
}

fn point(label: &str, group: FiberGroup, rays: Vec<Ray>) -> BoundaryPoint {
    BoundaryPoint { label: label.into(), group, rays }
}

fn two_ends(radius: usize) -> CompactificationModel {
    step_potential_model(radius).model
}

/// Constant coefficients `a_k` at every point and both limits.
fn constant_band(coeffs: &[(i64, f64)]) -> BandKernel {
    let b = coeffs.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
    let limits = ["+inf", "-inf"].iter().flat_map(|n| coeffs.iter().map(move |&(k, v)| (n.to_string(), k, c(v)))).collect();
    BandKernel::new(b, coeffs.iter().map(|&(k, v)| (k, Profile::Const(c(v)))).collect(), limits, Convergence::Eventual).unwrap()
}

#[test]
fn two_point_compactification() {
    let cm = two_ends(5);
    assert_eq!(cm.interior_core(), vec![0]);
    assert_eq!(cm.fiber(0), (1..=5).collect::<Vec<_>>());
    assert_eq!(cm.fiber(1), (-5..=-1).collect::<Vec<_>>());
    let cpt = build_compactified_groupoid::<f64>(&cm).unwrap();
    let g = cpt.groupoid();
    assert_eq!(g.unit_count(), 13);
    assert_eq!(g.arrow_count(), 11 * 11 + 2 * 11);
    let d = orbit_decomposition(g, &cpt.interior_set()).unwrap();
    assert_eq!(d.orbits.len(), 3);
    assert!(d.boundary.iter().all(|&n| g.is_truncated(n)));
    assert!(validate(g).is_valid());
}

#[test]
fn minimal_model_validates() {
    let cpt = build_compactified_groupoid::<f64>(&two_ends(1)).unwrap();
    assert!(validate(cpt.groupoid()).is_valid());
    assert_eq!(cpt.groupoid().unit_count(), 5);
}

#[test]
fn one_point_compactification() {
    let cm = CompactificationModel::new(4, vec![point("inf", FiberGroup::Lattice(1), vec![ray(1, Direction::Up), ray(-1, Direction::Down)])])
        .unwrap();
    assert_eq!(cm.interior_core(), vec![0]);
    assert_eq!(cm.fiber(0).len(), 8);
    let cpt = build_compactified_groupoid::<f64>(&cm).unwrap();
    let d = orbit_decomposition(cpt.groupoid(), &cpt.interior_set()).unwrap();
    assert_eq!(d.orbits.len(), 2);
    let half = CompactificationModel::new(3, vec![point("end", FiberGroup::Lattice(1), vec![ray(0, Direction::Up)])]).unwrap();
    assert_eq!(half.interior_core(), vec![-3, -2, -1]);
}

#[test]
fn finite_isotropy_is_realized_exactly() {
    let cm = CompactificationModel::new(
        2,
        vec![
            point("a", FiberGroup::Abelian(vec![2, 3]), vec![ray(1, Direction::Up)]),
            point("b", FiberGroup::Table(FiniteGroup::symmetric3()), vec![ray(-1, Direction::Down)]),
        ],
    )
    .unwrap();
    let cpt = build_compactified_groupoid::<f64>(&cm).unwrap();
    let g = cpt.groupoid();
    assert!(validate(g).is_valid());
    assert_eq!(g.isotropy(cpt.boundary_unit(0)).len(), 6);
    assert_eq!(g.isotropy(cpt.boundary_unit(1)).len(), 6);
    assert!(g.truncated_units().is_empty());
}

#[test]
fn inconsistent_models_are_rejected() {
    let z = FiberGroup::Lattice(1);
    let bad = [
        CompactificationModel::new(0, vec![point("a", z.clone(), vec![ray(1, Direction::Up)])]),
        CompactificationModel::new(3, vec![point("a", z.clone(), vec![ray(1, Direction::Up)]), point("b", z.clone(), vec![ray(2, Direction::Up)])]),
        CompactificationModel::new(3, vec![point("a", z.clone(), vec![ray(1, Direction::Up)]), point("a", z.clone(), vec![ray(-1, Direction::Down)])]),
        CompactificationModel::new(3, vec![point("a", z.clone(), vec![])]),
        CompactificationModel::new(3, vec![point("7", z.clone(), vec![ray(1, Direction::Up)])]),
        CompactificationModel::new(3, vec![point("a", FiberGroup::Lattice(3), vec![ray(1, Direction::Up)])]),
        CompactificationModel::new(3, vec![point("a", z.clone(), vec![ray(5, Direction::Up)])]),
        CompactificationModel::new(3, vec![point("a", FiberGroup::Abelian(vec![0]), vec![ray(1, Direction::Up)])]),
    ];
    for b in bad {
        assert_eq!(b.unwrap_err().code(), "E_BAD_MODEL");
    }
}

#[test]
fn membership_examples() {
    let cm = two_ends(6);
    let spec = NeighborhoodSpec::new([0], [1, 2]);
    assert!(membership_neighborhood(&cm, &spec, Point::Boundary(0)));
    assert!(!membership_neighborhood(&cm, &spec, Point::Boundary(1)));
    assert!(membership_neighborhood(&cm, &spec, Point::Interior(3)));
    assert!(!membership_neighborhood(&cm, &spec, Point::Interior(2)));
    assert!(!membership_neighborhood(&cm, &spec, Point::Interior(0)));
    assert!(!membership_neighborhood(&cm, &spec, Point::Interior(-3)));
    assert_eq!(spec.interior_part(&cm), vec![3, 4, 5, 6]);
}

#[test]
fn constant_function_is_continuous() {
    let cm = two_ends(10);
    let r = continuity_check(&cm, &PointFunction::real(&cm, |_| 2.5));
    assert!(r.continuous && r.witness.is_none());
    assert_eq!(r.scales.len(), 2 * EPSILON_LADDER.len());
    assert!(r.scales.iter().all(|s| s.2 == Some(0)));
}

#[test]
fn tanh_is_continuous_at_every_ladder_level() {
    let cm = two_ends(20);
    let phi = PointFunction::real(&cm, |x| match x {
        Point::Interior(m) => (m as f64).tanh(),
        Point::Boundary(0) => 1.0,
        Point::Boundary(_) => -1.0,
    });
    let r = continuity_check(&cm, &phi);
    assert!(r.continuous, "{r:?}");
    for (n, eps, rho) in &r.scales {
        let rho = rho.unwrap() as i64;
        let sign = if n == "+inf" { 1 } else { -1 };
        let (first_ok, last_bad) = (sign * (rho + 1), sign * rho);
        assert!((1.0 - (first_ok as f64).tanh().abs()) <= *eps);
        if rho > 0 {
            assert!((1.0 - (last_bad as f64).tanh().abs()) > *eps);
        }
    }
}

#[test]
fn oscillation_is_discontinuous_with_witness() {
    let cm = two_ends(20);
    let phi = PointFunction::real(&cm, |x| match x {
        Point::Interior(m) => if m % 2 == 0 { 1.0 } else { -1.0 },
        Point::Boundary(_) => 1.0,
    });
    let r = continuity_check(&cm, &phi);
    assert!(!r.continuous);
    let w = r.witness.unwrap();
    assert_eq!(w.eps, EPSILON_LADDER[0]);
    assert!(w.point.rem_euclid(2) == 1);
    assert!((w.deviation - 2.0).abs() < 1e-15);
    assert!(w.point.unsigned_abs() as usize > cm.radius() / 2);
}

#[test]
fn boundary_operator_examples() {
    let bk = constant_band(&[(-1, 1.0), (1, 1.0)]);
    let h = boundary_operator(&bk, "+inf", 3).unwrap();
    assert_eq!(h.basis(), ["[-3]", "[-2]", "[-1]", "[0]", "[1]", "[2]", "[3]"]);
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!(h.entry(i, j), c(if i.abs_diff(j) == 1 { 1.0 } else { 0.0 }));
        }
    }
    let diag = boundary_operator(&constant_band(&[(0, 2.5)]), "-inf", 4).unwrap();
    assert_eq!(diag.max_abs_diff(&OperatorMatrix::identity_on(diag.basis().to_vec(), vec![1.0; 9]).scale(c(2.5))), 0.0);
    assert_eq!(boundary_operator(&constant_band(&[(-2, 1.0), (2, 1.0)]), "+inf", 1).unwrap_err(), Error::Radius { radius: 1, bandwidth: 2 });
}

#[test]
fn symbol_spectrum_examples() {
    let free = fourier_symbol_spectrum(&constant_band(&[(-1, 1.0), (1, 1.0)]), "+inf", DEFAULT_GRID).unwrap();
    let step = 2.0 * 2.0 * PI / DEFAULT_GRID as f64;
    assert_eq!(free.kind(), SpectrumKind::Sampled { step });
    assert!((free.min_re() + 2.0).abs() <= step && (free.max_re() - 2.0).abs() <= step);
    let dense = SpectrumSet::exact_real((0..20_000).map(|k| 2.0 * (2.0 * PI * k as f64 / 20_000.0).cos()));
    assert!(free.hausdorff(&dense).within(step));
    let flat = fourier_symbol_spectrum(&constant_band(&[(0, 1.5)]), "+inf", DEFAULT_GRID).unwrap();
    assert!(flat.points().iter().all(|z| *z == c(1.5)));
    assert_eq!(flat.components(0.0), vec![(1.5, 1.5)]);
    let shifted = fourier_symbol_spectrum(&constant_band(&[(-1, 1.0), (0, 0.75), (1, 1.0)]), "-inf", DEFAULT_GRID).unwrap();
    let comps = shifted.components(0.0);
    assert_eq!(comps.len(), 1);
    assert!((comps[0].0 - (0.75 - 2.0)).abs() <= step && (comps[0].1 - 2.75).abs() <= step);
    let step_model = step_potential_model(10).band;
    let minus = fourier_symbol_spectrum(&step_model, "-inf", DEFAULT_GRID).unwrap().components(0.0);
    assert!((minus[0].0 - 2.0).abs() < 1e-12 && (minus[0].1 - 6.0).abs() < 1e-12);
}

#[test]
fn finite_abelian_symbols_are_characters() {
    let k = BoundaryKernel::new("n", FiberGroup::Abelian(vec![4]), vec![(vec![1], c(1.0)), (vec![3], c(1.0))]).unwrap();
    let s = k.symbol_spectrum(DEFAULT_GRID).unwrap();
    assert_eq!(s.kind(), SpectrumKind::Exact);
    let mut got = s.sorted_reals();
    got.iter_mut().for_each(|x| *x = (*x * 1e12).round() / 1e12);
    assert_eq!(got, vec![-2.0, 0.0, 0.0, 2.0]);
    let eig = spectrum(&k.convolution_matrix(0).unwrap()).unwrap();
    assert!(s.hausdorff(&eig).value <= 1e-12);
    let klein = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
    let t = BoundaryKernel::new("n", FiberGroup::Table(klein), vec![(vec![1], c(1.0)), (vec![2], c(2.0))]).unwrap();
    let mut tv = t.symbol_spectrum(DEFAULT_GRID).unwrap().sorted_reals();
    tv.iter_mut().for_each(|x| *x = (*x * 1e12).round() / 1e12);
    assert_eq!(tv, vec![-3.0, -1.0, 1.0, 3.0]);
}

#[test]
fn nonabelian_symbol_is_refused() {
    let k = BoundaryKernel::new("n", FiberGroup::Table(FiniteGroup::symmetric3()), vec![(vec![1], c(1.0))]).unwrap();
    assert_eq!(k.symbol_spectrum(DEFAULT_GRID).unwrap_err(), Error::NotAbelian("n".into()));
    assert_eq!(k.convolution_matrix(0).unwrap().dim(), 6);
}

#[test]
fn two_dimensional_lattice_symbol() {
    let k = BoundaryKernel::new(
        "n",
        FiberGroup::Lattice(2),
        vec![(vec![1, 0], c(1.0)), (vec![-1, 0], c(1.0)), (vec![0, 1], c(1.0)), (vec![0, -1], c(1.0))],
    )
    .unwrap();
    let s = k.symbol_spectrum(64).unwrap();
    assert_eq!(s.len(), 64 * 64);
    assert!((s.min_re() + 4.0).abs() < 1e-12 && (s.max_re() - 4.0).abs() < 1e-12);
    let h = spectrum(&k.convolution_matrix(6).unwrap()).unwrap();
    let oracle: Vec<f64> = {
        let one: Vec<f64> = (1..=13).map(|j| 2.0 * (j as f64 * PI / 14.0).cos()).collect();
        let mut v: Vec<f64> = one.iter().flat_map(|a| one.iter().map(move |b| a + b)).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    for (a, b) in h.sorted_reals().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn boundary_truncations_converge_to_the_symbol() {
    let bk = constant_band(&[(-1, 1.0), (1, 1.0)]);
    let symbol = fourier_symbol_spectrum(&bk, "+inf", DEFAULT_GRID).unwrap();
    let d: Vec<f64> = [64, 128, 256, 512]
        .iter()
        .map(|&r| spectrum(&boundary_operator(&bk, "+inf", r).unwrap()).unwrap().hausdorff(&symbol).value)
        .collect();
    for w in d.windows(2) {
        assert!(w[1] <= w[0] + 1e-3, "{d:?}");
    }
    assert!(d[3] < 0.01);
}

#[test]
fn interior_operator_assembly() {
    let cm = two_ends(4);
    let toeplitz = interior_operator(&constant_band(&[(-1, 0.5), (0, 2.0), (1, 0.5)]), &cm).unwrap();
    for i in 0..9 {
        for j in 0..9 {
            let want = match i as i64 - j as i64 {
                0 => 2.0,
                1 | -1 => 0.5,
                _ => 0.0,
            };
            assert_eq!(toeplitz.entry(i, j), c(want));
        }
    }
    let model = step_potential_model(4);
    let h = interior_operator(&model.band, &model.model).unwrap();
    assert_eq!(h.basis()[0], "-4");
    for (i, m) in (-4..=4).enumerate() {
        assert_eq!(h.entry(i, i), c(if m < 0 { 4.0 } else { 0.0 }));
        if i + 1 < 9 {
            assert_eq!(h.entry(i, i + 1), c(1.0));
            assert_eq!(h.entry(i + 1, i), c(1.0));
        }
    }
    assert!(h.self_adjoint_defect() <= 1e-14);
    assert!(model.band.is_self_adjoint(&model.model));
}

#[test]
fn interior_matches_vector_representation_of_groupoid_kernel() {
    let model = step_potential_model(6);
    let cpt = build_compactified_groupoid::<f64>(&model.model).unwrap();
    let f = cpt.band_kernel(&model.band).unwrap();
    let pi0 = cpt.vector_representation().unwrap().apply(&f).unwrap();
    let h = interior_operator(&model.band, &model.model).unwrap();
    assert_eq!(pi0.basis(), h.basis());
    assert_eq!(pi0.max_abs_diff(&h), 0.0);
}

#[test]
fn self_adjointness_needs_matching_offsets() {
    let cm = two_ends(5);
    let limits = vec![("+inf".into(), 1, c(1.0)), ("+inf".into(), -1, c(2.0)), ("-inf".into(), 0, c(0.0))];
    let skew = BandKernel::new(1, vec![(1, Profile::Const(c(1.0))), (-1, Profile::Const(c(2.0)))], limits, Convergence::Eventual).unwrap();
    assert!(!skew.is_self_adjoint(&cm));
    assert!((skew.self_adjoint_defect(&cm) - 1.0).abs() < 1e-15);
    let hop = Complex::new(0.0, 1.0);
    let twisted = BandKernel::new(
        1,
        vec![(1, Profile::Const(hop)), (-1, Profile::Const(hop.conj()))],
        vec![("+inf".into(), 1, hop), ("+inf".into(), -1, hop.conj()), ("-inf".into(), 1, hop), ("-inf".into(), -1, hop.conj())],
        Convergence::Power(1.0),
    )
    .unwrap();
    assert!(twisted.is_self_adjoint(&cm));
    let s = interior_spectrum(&twisted, &cm).unwrap().sorted_reals();
    let oracle: Vec<f64> = {
        let mut v: Vec<f64> = (1..=11).map(|k| 2.0 * (k as f64 * PI / 12.0).cos()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    for (a, b) in s.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn limits_and_profiles() {
    let tanh = Profile::Tanh { left: c(4.0), right: c(0.0), center: 0.0, width: 2.0 };
    assert!((tanh.eval(0) - c(2.0)).norm() < 1e-15);
    assert!((tanh.eval(40) - c(0.0)).norm() < 1e-15);
    let table = Profile::Table { start: -1, values: vec![c(1.0), c(2.0), c(3.0)], below: c(-5.0), above: c(7.0) };
    assert_eq!([table.eval(-2), table.eval(-1), table.eval(1), table.eval(2)], [c(-5.0), c(1.0), c(3.0), c(7.0)]);
    let model = step_potential_model(10);
    assert_eq!(model.band.limit_defect(&model.model, "+inf", 0).unwrap(), 0.0);
    assert_eq!(model.band.limit_defect(&model.model, "-inf", 0).unwrap(), 0.0);
    assert!(model.band.limit("north", 0).is_err());
}

#[test]
fn constant_coefficient_spectrum_stays_near_symbol_hull() {
    let bk = constant_band(&[(-2, 0.25), (-1, 1.0), (0, 0.5), (1, 1.0), (2, 0.25)]);
    let symbol = fourier_symbol_spectrum(&bk, "+inf", DEFAULT_GRID).unwrap();
    let (lo, hi) = (symbol.min_re() - symbol.step(), symbol.max_re() + symbol.step());
    let declared = 4.0;
    for l in [10, 20, 40, 80] {
        let s = interior_spectrum(&bk, &two_ends(l)).unwrap();
        let excess = s.sorted_reals().iter().map(|&x| (lo - x).max(x - hi).max(0.0)).fold(0.0, f64::max);
        assert!(excess <= declared / l as f64, "L={l}: {excess}");
    }
}

#[test]
fn model_files_round_trip() {
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/configs/step_model.toml")).unwrap();
    let parsed = ModelFile::parse(&shipped).unwrap();
    assert_eq!(parsed, step_potential_model(500));
    assert_eq!(ModelFile::parse(&parsed.to_toml()).unwrap(), parsed);
    let cm = CompactificationModel::new(
        3,
        vec![
            point("a", FiberGroup::Abelian(vec![2, 3]), vec![ray(1, Direction::Up)]),
            point("b", FiberGroup::Table(FiniteGroup::symmetric3()), vec![ray(-1, Direction::Down)]),
        ],
    )
    .unwrap();
    let text = toml::to_string(&cm).unwrap();
    assert_eq!(toml::from_str::<CompactificationModel>(&text).unwrap(), cm);
}

#[test]
fn malformed_model_files_are_bad_models() {
    let shipped = step_potential_model(5).to_toml();
    let cases = [
        shipped.replace("[band]", "[band]\ncolour = 1"),
        shipped.replace("interior_core = [0]", "interior_core = [0, 1]"),
        shipped.replace("label = \"-inf\"", "label = \"south\""),
        shipped.replace("lattice = 1", "lattice = 2"),
        "[model\n".to_string(),
    ];
    for text in &cases {
        let err = ModelFile::parse(text).unwrap_err();
        assert_eq!(err.code(), "E_BAD_MODEL", "{text}");
    }
    match ModelFile::parse("[model]\nradius = 2\nboundary = [\n").unwrap_err() {
        Error::BadModel(m) => assert!(m.contains("line 3"), "{m}"),
        e => panic!("{e:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighborhood_intersection_law(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let cm = CompactificationModel::new(
            8,
            vec![
                point("a", FiberGroup::Lattice(1), vec![ray(1, Direction::Up)]),
                point("b", FiberGroup::Abelian(vec![3]), vec![ray(-1, Direction::Down)]),
            ],
        )
        .unwrap();
        let spec = |r: &mut rand_chacha::ChaCha8Rng| {
            let e: Vec<usize> = (0..cm.boundary().len()).filter(|_| r.random_bool(0.5)).collect();
            let k: Vec<i64> = cm.interior().filter(|_| r.random_bool(0.3)).collect();
            NeighborhoodSpec::new(e, k)
        };
        let (s1, s2) = (spec(&mut r), spec(&mut r));
        let both = s1.intersect(&s2);
        for x in cm.points() {
            let lhs = membership_neighborhood(&cm, &s1, x) && membership_neighborhood(&cm, &s2, x);
            prop_assert_eq!(lhs, membership_neighborhood(&cm, &both, x));
        }
    }
}
