//! Independent reference computations shared by the oracle tests and the
//! acceptance run. Nothing here goes through the library's transforms.
#![allow(dead_code)]

use nematic::dynamics::{random_seeded, SimState};
use nematic::fields::{Field, Grid, VectorField};
use std::f64::consts::TAU;

/// Taylor–Green velocity gradient `G_ij = ∂_j u_i` at `(x, y)`.
pub fn tg_gradient(x: f64, y: f64) -> [[f64; 2]; 2] {
    [
        [x.cos() * y.cos(), -x.sin() * y.sin()],
        [x.sin() * y.sin(), -x.cos() * y.cos()],
    ]
}

/// `α²(1 − α²Δ)⁻¹ ∂_j T_ij` for Taylor–Green on the 2π square with `n`
/// points per side, where `T = GGᵀ + GG − GᵀG` is assembled pointwise and
/// transformed with a plain O(N²) discrete Fourier sum.
pub fn brute_force_lans_tg(n: usize, alpha: f64) -> [Vec<f64>; 2] {
    let h = TAU / n as f64;
    let pts: Vec<(f64, f64)> = (0..n * n)
        .map(|p| ((p / n) as f64 * h, (p % n) as f64 * h))
        .collect();
    let mut t = vec![[[0.0; 2]; 2]; n * n];
    for (p, &(x, y)) in pts.iter().enumerate() {
        let g = tg_gradient(x, y);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0.0;
                for k in 0..2 {
                    s += g[i][k] * g[j][k] + g[i][k] * g[k][j] - g[k][i] * g[k][j];
                }
                t[p][i][j] = s;
            }
        }
    }
    let half = n as i64 / 2;
    let modes: Vec<(i64, i64)> = (-half + 1..=half)
        .flat_map(|a| (-half + 1..=half).map(move |b| (a, b)))
        .collect();
    let inv_n = 1.0 / (n * n) as f64;
    // Fourier coefficients of the two divergence components.
    let mut coeff = vec![[(0.0, 0.0); 2]; modes.len()];
    for (q, &(a, b)) in modes.iter().enumerate() {
        let ka = if a == half { 0.0 } else { a as f64 };
        let kb = if b == half { 0.0 } else { b as f64 };
        let filt = alpha * alpha / (1.0 + alpha * alpha * (ka * ka + kb * kb));
        for i in 0..2 {
            let (mut re, mut im) = (0.0, 0.0);
            for (p, &(x, y)) in pts.iter().enumerate() {
                let phase = -(a as f64 * x + b as f64 * y);
                let (s, c) = phase.sin_cos();
                // i k_j T_ij
                let v = t[p][i][0] * ka + t[p][i][1] * kb;
                re += -v * s;
                im += v * c;
            }
            coeff[q][i] = (re * inv_n * filt, im * inv_n * filt);
        }
    }
    let mut out = [vec![0.0; n * n], vec![0.0; n * n]];
    for (p, &(x, y)) in pts.iter().enumerate() {
        for (q, &(a, b)) in modes.iter().enumerate() {
            let (s, c) = (a as f64 * x + b as f64 * y).sin_cos();
            for i in 0..2 {
                let (re, im) = coeff[q][i];
                out[i][p] += re * c - im * s;
            }
        }
    }
    out
}

/// `½∫(|u|² + 2α²|Def u|²)` for Taylor–Green by pointwise quadrature of the
/// analytic integrand.
pub fn brute_force_averaged_energy_tg(n: usize, alpha: f64) -> f64 {
    let h = TAU / n as f64;
    let mut sum = 0.0;
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (a as f64 * h, b as f64 * h);
            let u = [x.sin() * y.cos(), -x.cos() * y.sin()];
            let g = tg_gradient(x, y);
            let mut def2 = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    let e = 0.5 * (g[i][j] + g[j][i]);
                    def2 += e * e;
                }
            }
            sum += 0.5 * (u[0] * u[0] + u[1] * u[1] + 2.0 * alpha * alpha * def2);
        }
    }
    sum * h * h
}

/// A director with `|d| ≠ 1` somewhere, and a perturbation direction.
pub fn gl_test_pair(grid: Grid) -> (VectorField, VectorField) {
    let base = random_seeded(grid, 11).d;
    let wiggle = VectorField::from_fn(grid, grid.dim(), |p| {
        [
            0.3 * p[1].sin(),
            0.2 * (p[0] + p[1]).cos(),
            0.1 * p[0].cos(),
        ]
    });
    let d = base.axpby(0.8, &wiggle, 1.0).unwrap();
    let dir = random_seeded(grid, 12).u;
    (d, dir)
}

/// Three smooth unit-length directors.
pub fn unit_directors() -> Vec<(&'static str, VectorField)> {
    let g2 = Grid::standard(2, 64).unwrap();
    let g3 = Grid::standard(3, 32).unwrap();
    let planar = VectorField::from_fn(g2, 2, |p| {
        let th = 0.7 * p[0].sin() + 0.4 * (2.0 * p[1]).cos() + 0.2 * (p[0] + p[1]).sin();
        [th.cos(), th.sin(), 0.0]
    });
    let spherical = VectorField::from_fn(g3, 3, |p| {
        let th = 1.0 + 0.3 * p[0].sin() * p[2].cos();
        let ph = 0.5 * p[1].cos() + 0.2 * p[2].sin();
        [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
    });
    let twist_bend = VectorField::from_fn(g3, 3, |p| {
        let tilt = 0.3 * p[0].sin();
        [p[2].cos() * tilt.cos(), p[2].sin() * tilt.cos(), tilt.sin()]
    });
    vec![
        ("planar", planar),
        ("spherical", spherical),
        ("twist-bend", twist_bend),
    ]
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn field_values(f: &Field) -> Vec<f64> {
    f.values().into_owned()
}

pub fn l2_distance(a: &SimState, b: &SimState) -> f64 {
    let diff = a.u.axpby(1.0, &b.u, -1.0).unwrap();
    nematic::fields::lp_norm(&diff, 2.0).unwrap()
}
