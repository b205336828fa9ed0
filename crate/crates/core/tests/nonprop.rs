mod common;

use common::dense;
use gloc::boundary::{BandKernel, Convergence, Profile, step_potential_cutoff, step_potential_model, CompactificationModel, ModelFile, Point};
use gloc::nonprop::{
    check_hypothesis, construct_psi, find_localization_neighborhood, ideal_membership_residual, probe_states, propagation_sweep,
    weighted_rows_norm, Experiment, ExperimentReport, Method, ProofChain, TimeGrid, CSV_HEADER,
};
use gloc::spectral::BumpFunction;
use gloc::{Error, C64};

fn plus() -> Vec<String> {
    vec!["+inf".into()]
}

fn kappa(x: f64) -> f64 {
    (1.0 - (x - 4.0).abs()).max(0.0)
}

fn step_matrix(l: usize) -> dense::Dense {
    dense::schrodinger(l, |m| if m < 0 { 4.0 } else { 0.0 })
}

fn experiment(l: usize) -> Experiment {
    Experiment::new(&step_potential_model(l), &step_potential_cutoff(), &plus()).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1e-300)
}

#[test]
fn hypothesis_on_each_side() {
    let model = step_potential_model(50);
    let cut = step_potential_cutoff();
    let r = check_hypothesis(&cut, &plus(), &model).unwrap();
    assert_eq!(r.quasi_orbit, plus());
    let (_, lo, hi) = &r.ranges[0];
    assert!((lo + 2.0).abs() <= r.grid_step && (hi - 2.0).abs() <= r.grid_step);
    assert!((r.gap - 1.0).abs() <= r.grid_step);
    for q in [vec!["-inf".to_string()], vec!["+inf".into(), "-inf".into()]] {
        assert!(matches!(check_hypothesis(&cut, &q, &model), Err(Error::HypothesisFails { .. })));
    }
    let far = BumpFunction::hat(6.5, 7.0, 7.5, 1.0).unwrap();
    let both = check_hypothesis(&far, &["-inf".into(), "+inf".into(), "-inf".into()], &model).unwrap();
    assert_eq!(both.quasi_orbit.len(), 2);
    assert!((both.gap - 0.5).abs() <= both.grid_step);
}

#[test]
fn bad_quasi_orbits() {
    let model = step_potential_model(10);
    let cut = step_potential_cutoff();
    assert_eq!(check_hypothesis(&cut, &["east".into()], &model).unwrap_err(), Error::UnknownUnit("east".into()));
    assert_eq!(check_hypothesis(&cut, &[], &model).unwrap_err().code(), "E_BAD_MODEL");
}

#[test]
fn static_norms_match_dense_oracle() {
    // ‖1_{(K,20]} κ(H_20)‖ from a dense Jacobi eigensolve.
    const FROZEN: [(usize, f64); 3] = [(0, 3.360957902126975e-2), (2, 2.677250013236787e-3), (5, 6.942229668401717e-5)];
    let exp = experiment(20);
    let k = dense::apply(&step_matrix(20), kappa);
    for (kr, frozen) in FROZEN {
        let w0 = exp.neighborhood(Some(kr));
        assert_eq!(w0, ((kr as i64 + 1)..=20).collect::<Vec<_>>());
        let rows: Vec<usize> = w0.iter().map(|&m| (m + 20) as usize).collect();
        let oracle = dense::row_restricted_norm(&k, &rows);
        assert!(close(oracle, frozen, 1e-9), "{oracle:e}");
        assert!(close(exp.static_norm(&w0), frozen, 1e-9));
    }
}

#[test]
fn cutoff_spectrum_matches_oracle() {
    let exp = experiment(12);
    let (vals, _) = dense::jacobi(&step_matrix(12));
    for (a, b) in exp.eigenvalues().iter().zip(&vals) {
        assert!((a - b).abs() < 1e-12);
    }
    let top = vals.iter().map(|&x| kappa(x)).fold(0.0, f64::max);
    assert!((exp.kappa_norm() - top).abs() < 1e-12);
    assert_eq!(exp.kappa_h().rank(), vals.iter().filter(|&&x| kappa(x) != 0.0).count());
}

#[test]
fn localization_meets_targets() {
    let exp = experiment(40);
    let mut previous = None;
    for eps in [0.5, 0.1, 1e-2, 1e-3, 1e-4] {
        let loc = exp.localize(eps).unwrap();
        assert_eq!(loc.method, Method::Separation);
        assert_eq!(loc.e, plus());
        assert!(loc.static_norm <= eps, "{eps}: {}", loc.static_norm);
        assert!(loc.chain.holds(), "{:?}", loc.chain);
        assert_eq!(loc.w0, exp.neighborhood(loc.k_radius));
        let k = loc.k_radius.unwrap();
        if let Some(p) = previous {
            assert!(k >= p);
        }
        previous = Some(k);
    }
}

#[test]
fn psi_separates_support_from_boundary() {
    let exp = experiment(30);
    let cm = &exp.model().model;
    let psi = construct_psi(cm, 1e-3, &[0], exp.kappa_h()).unwrap();
    assert_eq!(psi.at(cm, Point::Boundary(0)), 2.0);
    assert!(psi.interior.iter().chain(&psi.boundary).all(|&v| (0.0..=2.0).contains(&v)));
    for &m in &psi.support_core {
        assert_eq!(psi.at(cm, Point::Interior(m)), 0.0);
    }
    assert!(psi.tail_bound <= 1e-3 / 4.0);
    assert!(psi.rho <= cm.radius() / 2);
    let on_fiber: Vec<f64> = (psi.rho as i64 + 1..=30).map(|m| psi.at(cm, Point::Interior(m))).collect();
    assert!(on_fiber.iter().all(|&v| v >= 1.0));
    let dense_bound = weighted_rows_norm(exp.kappa_h(), |i| psi.interior[i]);
    let k = dense::apply(&step_matrix(30), kappa);
    let oracle = {
        let n = k.len();
        let g: dense::Dense =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|r| psi.interior[r].powi(2) * k[r][i] * k[r][j]).sum()).collect()).collect();
        dense::jacobi(&g).0.last().unwrap().sqrt()
    };
    assert!((dense_bound - oracle).abs() < 1e-12);
}

#[test]
fn small_window_cannot_separate_until_doubled() {
    let small = experiment(10).localize(1e-4).unwrap_err();
    assert_eq!(small, Error::NoSeparation { needed: 7, available: 5 });
    assert_eq!(small.code(), "E_NO_SEPARATION");
    let loc = experiment(20).localize(1e-4).unwrap();
    assert!(loc.static_norm <= 1e-4);
    assert_eq!(loc.psi.unwrap().rho, 7);
}

#[test]
fn large_targets_use_the_a_priori_bound() {
    let exp = experiment(15);
    let loc = exp.localize(2.0).unwrap();
    assert_eq!(loc.method, Method::APriori);
    assert_eq!(loc.k_radius, None);
    assert!(loc.psi.is_none());
    assert_eq!(loc.w0, (1..=15).collect::<Vec<_>>());
    assert!(loc.static_norm <= exp.kappa_norm() + 1e-15);
    assert!(loc.chain.holds());
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let exp = experiment(10);
    assert_eq!(exp.localize(0.0).unwrap_err().code(), "E_STRUCTURE");
    assert!(exp.localize(f64::NAN).is_err());
}

#[test]
fn sweep_never_exceeds_static_norm() {
    let exp = experiment(25);
    let loc = exp.localize(1e-2).unwrap();
    let probes = probe_states(51, 6, 11);
    let grid = TimeGrid { start: 0.0, stop: 30.0, step: 0.25 };
    let s = propagation_sweep(&exp, &loc, &probes, &grid).unwrap();
    assert_eq!(s.series.len(), 121);
    assert_eq!(s.probes, 6);
    assert!(s.max <= loc.static_norm + 1e-10);
    assert!(s.series.iter().all(|p| p.masses.len() == 6 && p.max <= s.max));
}

#[test]
fn sweep_matches_dense_evolution() {
    let l = 8;
    let exp = experiment(l);
    let loc = exp.localize(0.1).unwrap();
    let probes = probe_states(2 * l + 1, 2, 3);
    let t = 1.7;
    let s = exp.sweep(&loc, &probes, &TimeGrid::single(t)).unwrap();
    let (vals, v) = dense::jacobi(&step_matrix(l));
    let n = vals.len();
    let rows: Vec<usize> = loc.w0.iter().map(|&m| (m + l as i64) as usize).collect();
    for (u, got) in probes.iter().zip(&s.series[0].masses) {
        let coeffs: Vec<C64> =
            (0..n).map(|k| C64::from_polar(kappa(vals[k]), t * vals[k]) * (0..n).map(|i| u[i] * v[i][k]).sum::<C64>()).collect();
        let mass: f64 = rows.iter().map(|&r| (0..n).map(|k| coeffs[k] * v[r][k]).sum::<C64>().norm_sqr()).sum::<f64>().sqrt();
        assert!((mass - got).abs() < 1e-12, "{mass} {got}");
    }
}

#[test]
fn sweep_rejects_wrong_probe_dimension() {
    let exp = experiment(5);
    let loc = exp.localize(0.5).unwrap();
    assert_eq!(exp.sweep(&loc, &probe_states(4, 1, 0), &TimeGrid::default()).unwrap_err().code(), "E_STRUCTURE");
}

#[test]
fn probes_are_seeded_unit_vectors() {
    let a = probe_states(17, 3, 99);
    assert_eq!(a, probe_states(17, 3, 99));
    assert_ne!(a, probe_states(17, 3, 100));
    for u in &a {
        assert!((u.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn time_grid_points() {
    assert_eq!(TimeGrid::default().points().len(), 201);
    assert_eq!(TimeGrid { start: 1.0, stop: 2.0, step: 0.5 }.points(), vec![1.0, 1.5, 2.0]);
    assert_eq!(TimeGrid::single(3.0).points(), vec![3.0]);
}

#[test]
fn ideal_residual_decays() {
    let model = step_potential_model(64);
    let exp = experiment(64);
    let radii = exp.default_radii();
    assert_eq!(radii, vec![0, 1, 2, 4, 8, 16, 32, 64]);
    let r = ideal_membership_residual(&step_potential_cutoff(), &plus(), &model, &radii).unwrap();
    for w in r.windows(2) {
        assert!(w[1].1 <= w[0].1 + 1e-15);
    }
    assert!(r[6].1 < 1e-12);
    assert_eq!(r[7].1, 0.0);
}

#[test]
fn one_shot_localization() {
    let model = step_potential_model(20);
    let loc = find_localization_neighborhood(1e-2, &step_potential_cutoff(), &plus(), &model).unwrap();
    assert_eq!(loc.k_radius, Some(4));
}

#[test]
fn non_self_adjoint_band_is_refused() {
    let mut model = step_potential_model(10);
    let text = model.to_toml().replacen("const = [1.0, 0.0]", "const = [1.0, 0.5]", 1);
    model = ModelFile::parse(&text).unwrap();
    let err = Experiment::new(&model, &step_potential_cutoff(), &plus()).unwrap_err();
    assert_eq!(err.code(), "E_NOT_SELFADJOINT");
}

#[test]
fn single_point_compactification_localizes_both_ends() {
    let cm: CompactificationModel = toml::from_str(
        r#"
        radius = 40
        [[boundary]]
        label = "inf"
        group = { lattice = 1 }
        rays = [{ start = 1, direction = "up" }, { start = -1, direction = "down" }]
        "#,
    )
    .unwrap();
    let well = Profile::Table { start: -1, values: vec![C64::new(5.0, 0.0); 3], below: C64::new(0.0, 0.0), above: C64::new(0.0, 0.0) };
    let one = C64::new(1.0, 0.0);
    let band = BandKernel::new(
        1,
        vec![(-1, Profile::Const(one)), (0, well), (1, Profile::Const(one))],
        vec![("inf".into(), -1, one), ("inf".into(), 0, C64::new(0.0, 0.0)), ("inf".into(), 1, one)],
        Convergence::Eventual,
    )
    .unwrap();
    let model = ModelFile::new(cm, band).unwrap();
    let cut = BumpFunction::hat(3.0, 5.5, 8.0, 1.0).unwrap();
    let exp = Experiment::new(&model, &cut, &["inf".into()]).unwrap();
    assert!(exp.kappa_norm() > 0.5);
    let loc = exp.localize(1e-6).unwrap();
    let k = loc.k_radius.unwrap() as i64;
    assert!(loc.static_norm <= 1e-6 && loc.chain.holds());
    assert!(loc.w0.contains(&(k + 1)) && loc.w0.contains(&-(k + 1)));
    assert_eq!(loc.w0.len(), 2 * (40 - k as usize));
}

#[test]
fn report_rows() {
    let chain = ProofChain { static_norm: 1e-3, sqrt_kappa_w_kappa: 1e-3, psi_kappa: 2e-3, psi_f_sum: 4e-3, boundary_term: 0.0, eps: 1e-2 };
    let mut r = ExperimentReport {
        run_id: "step-L100-eps0.01".into(),
        model: "step".into(),
        radius: 100,
        quasi_orbit: plus(),
        kappa: vec![(3.0, 0.0), (4.0, 1.0), (5.0, 0.0)],
        eps_target: 0.01,
        e: plus(),
        k_radius: Some(4),
        static_norm: 1e-3,
        sweep_max: 9e-4,
        gap: 1.0,
        chain,
        rho: Some(3),
        probes: 20,
        seed: 1,
        truncation_allowance: None,
        runtime_s: 1.23456,
        series: vec![],
    };
    assert_eq!(CSV_HEADER.split(',').count(), r.csv_row().split(',').count());
    assert_eq!(
        r.csv_row(),
        "step-L100-eps0.01,100,0.01,+inf,4,1.000000000000e-3,9.000000000000e-4,1.000000000000e0,1.235"
    );
    assert!(r.met_target());
    r.k_radius = None;
    assert!(r.csv_row().contains(",-1,"));
    r.sweep_max = 2e-3;
    assert!(!r.met_target());
}

#[test]
fn halving_eps_halves_the_psi_bound() {
    let exp = experiment(60);
    let mut previous = f64::INFINITY;
    for eps in [0.4, 0.2, 0.1, 0.05, 0.025, 0.0125] {
        let sum = exp.localize(eps).unwrap().chain.psi_f_sum;
        assert!(sum <= eps, "eps {eps}: {sum}");
        assert!(sum <= previous);
        previous = sum;
    }
}

#[test]
fn zero_cutoff_localizes_trivially() {
    let model = step_potential_model(12);
    let exp = Experiment::new(&model, &BumpFunction::zero(), &plus()).unwrap();
    assert_eq!(exp.kappa_norm(), 0.0);
    let loc = exp.localize(1e-9).unwrap();
    assert_eq!(loc.static_norm, 0.0);
    assert!(exp.ideal_membership_residual(&exp.default_radii()).iter().all(|r| r.1 == 0.0));
}

#[test]
fn time_zero_is_the_static_mass() {
    let l = 10;
    let exp = experiment(l);
    let loc = exp.localize(0.1).unwrap();
    let probes = probe_states(2 * l + 1, 3, 5);
    let s = exp.sweep(&loc, &probes, &TimeGrid::single(0.0)).unwrap();
    let k = dense::apply(&step_matrix(l), kappa);
    let rows: Vec<usize> = loc.w0.iter().map(|&m| (m + l as i64) as usize).collect();
    for (u, got) in probes.iter().zip(&s.series[0].masses) {
        let ku: Vec<C64> = k.iter().map(|row| row.iter().zip(u).map(|(a, z)| z * *a).sum()).collect();
        let mass = rows.iter().map(|&r| ku[r].norm_sqr()).sum::<f64>().sqrt();
        assert!((mass - got).abs() < 1e-12);
        assert!(*got <= loc.static_norm + 1e-12);
    }
}

#[test]
fn annihilated_eigenvector_has_no_mass() {
    let l = 10;
    let exp = experiment(l);
    let loc = exp.localize(0.1).unwrap();
    let (vals, v) = dense::jacobi(&step_matrix(l));
    let k = vals.iter().position(|&x| kappa(x) == 0.0).unwrap();
    let u: Vec<C64> = v.iter().map(|row| C64::new(row[k], 0.0)).collect();
    let s = exp.sweep(&loc, &[u], &TimeGrid { start: 0.0, stop: 10.0, step: 1.0 }).unwrap();
    assert!(s.max < 1e-12, "{}", s.max);
}

#[test]
fn static_norm_is_monotone_and_a_priori_bounded() {
    let exp = experiment(30);
    let sup = exp.kappa().sup_abs();
    let mut last = f64::INFINITY;
    for k in [None, Some(0), Some(1), Some(3), Some(7), Some(15), Some(29)] {
        let s = exp.static_norm(&exp.neighborhood(k));
        assert!(s <= last + 1e-15 && s <= sup);
        last = s;
    }
    let fiber = exp.neighborhood(None);
    let both: Vec<i64> = (-30..=30).filter(|&m| m != 0).collect();
    assert!(exp.static_norm(&fiber) <= exp.static_norm(&both) + 1e-15);
    assert!(exp.static_norm(&both) <= sup);
    assert_eq!(exp.static_norm(&[]), 0.0);
}

#[test]
fn doubling_the_window_is_stable() {
    for eps in [0.2, 0.1, 0.05] {
        let (a, b) = (experiment(100).localize(eps).unwrap(), experiment(200).localize(eps).unwrap());
        assert!((a.static_norm - b.static_norm).abs() <= 5e-2);
    }
}
