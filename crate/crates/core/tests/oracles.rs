mod common;

use common::*;
use nematic::diagnostics::{averaged_energy, dissipation, frank_energy, total_energy};
use nematic::dynamics::{
    gl_force, gl_potential, lans_correction, taylor_green_uniform_d, Model, SimParams, SimState,
};
use nematic::fields::{hs_seminorm, l2_inner, Grid, VectorField};
use std::f64::consts::PI;

#[test]
fn lans_matches_direct_fourier_sum() {
    let g = Grid::standard(2, 16).unwrap();
    let tg = taylor_green_uniform_d(g);
    let want = brute_force_lans_tg(16, 0.5);
    for truncate in [false, true] {
        let got = lans_correction(&tg.u, 0.5, truncate)
            .unwrap()
            .into_physical();
        for i in 0..2 {
            let err = max_abs_diff(&field_values(got.comp(i)), &want[i]);
            assert!(err < 1e-10, "component {i}: {err}");
        }
    }
}

#[test]
fn averaged_energy_matches_quadrature() {
    let g = Grid::standard(2, 32).unwrap();
    let tg = taylor_green_uniform_d(g);
    let p = SimParams {
        model: Model::LcAlpha,
        alpha: 1.0,
        ..SimParams::default()
    };
    let got = averaged_energy(&tg, &p).unwrap();
    let want = brute_force_averaged_energy_tg(32, 1.0);
    assert!((got - want).abs() < 1e-10 * want, "{got} vs {want}");
    // and the closed form: ½·2π² + α²·2π²
    assert!((want - 3.0 * PI * PI).abs() < 1e-10);
}

#[test]
fn taylor_green_dissipation_matches_quadrature() {
    let g = Grid::standard(2, 32).unwrap();
    let tg = taylor_green_uniform_d(g);
    let p = SimParams::default();
    let alpha_free =
        brute_force_averaged_energy_tg(32, 1.0) - brute_force_averaged_energy_tg(32, 0.0);
    // |Def u|² = α⁻² (E^α − E⁰) at α = 1
    let want = p.nu * alpha_free;
    let got = dissipation(&tg, &p).unwrap();
    assert!((got - want).abs() < 1e-10 * want);
}

#[test]
fn gl_force_is_the_gradient_of_the_potential() {
    for dim in [2, 3] {
        let g = Grid::standard(dim, if dim == 2 { 32 } else { 12 }).unwrap();
        let (d, dir) = gl_test_pair(g);
        let eps = 0.3;
        let h = 1e-5;
        let plus = d.axpby(1.0, &dir, h).unwrap();
        let minus = d.axpby(1.0, &dir, -h).unwrap();
        let fd =
            (gl_potential(&plus, eps).unwrap() - gl_potential(&minus, eps).unwrap()) / (2.0 * h);
        let exact = l2_inner(&gl_force(&d, eps, false).unwrap(), &dir).unwrap();
        assert!(
            (fd - exact).abs() <= 1e-6 * exact.abs(),
            "dim {dim}: {fd} vs {exact}"
        );
    }
}

#[test]
fn frank_energy_reduces_to_dirichlet_energy() {
    for (name, d) in unit_directors() {
        let k = 1.7;
        let frank = frank_energy(&d, k, k, k).unwrap();
        let dirichlet = k * hs_seminorm(&d, 1).powi(2);
        assert!(
            (frank - dirichlet).abs() <= 1e-8 * dirichlet,
            "{name}: {frank} vs {dirichlet}"
        );
    }
}

#[test]
fn energy_of_zero_director_is_the_penalty_volume() {
    let g = Grid::standard(2, 16).unwrap();
    let s = SimState::new(0.0, VectorField::zeros(g, 2), VectorField::zeros(g, 2)).unwrap();
    let p = SimParams {
        epsilon: 1.0,
        ..SimParams::default()
    };
    let e = total_energy(&s, &p).unwrap();
    assert!((e.penalty - PI * PI).abs() < 1e-12);
}
