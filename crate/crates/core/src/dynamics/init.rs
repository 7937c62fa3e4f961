//! Initial conditions.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::params::SimState;
use crate::error::Result;
use crate::fields::{l2_norm_sq, leray_project, Field, Grid, VectorField};

fn unit_x(grid: Grid) -> VectorField {
    let mut e = vec![0.0; grid.dim()];
    e[0] = 1.0;
    VectorField::constant(grid, &e)
}

/// `u = (sin x cos y, −cos x sin y[, 0])` with `d ≡ e_x`.
pub fn taylor_green_uniform_d(grid: Grid) -> SimState {
    let k = grid.k0();
    let u = VectorField::from_fn(grid, grid.dim(), |p| {
        let (x, y) = (k * p[0], k * p[1]);
        [x.sin() * y.cos(), -x.cos() * y.sin(), 0.0]
    });
    SimState::new(0.0, u, unit_x(grid)).expect("finite by construction")
}

/// Director with a +1 and a −1 winding centre, at `(L/2, L/4)` and
/// `(L/2, 3L/4)` in the x–y plane, and zero velocity. The director is
/// `w / √(|w|² + ε²)` for the smooth periodic field
/// `w = (sin x', sin y' + 1 − cos x')` (primes: coordinates shifted so the
/// zeros of `w` sit at the centres), so `|d| < 1` and the cores have width
/// about `ε`. In 3D the director has no z component.
pub fn vortex_pair(grid: Grid, epsilon: f64) -> SimState {
    let k = grid.k0();
    let e2 = epsilon * epsilon;
    let d = VectorField::from_fn(grid, grid.dim(), |p| {
        let x = k * p[0] - std::f64::consts::PI;
        let y = k * p[1] - std::f64::consts::FRAC_PI_2;
        let w = [x.sin(), y.sin() + 1.0 - x.cos()];
        let s = 1.0 / (w[0] * w[0] + w[1] * w[1] + e2).sqrt();
        [s * w[0], s * w[1], 0.0]
    });
    let u = VectorField::zeros(grid, grid.dim());
    SimState::new(0.0, u, d).expect("finite by construction")
}

const RANDOM_BAND: i64 = 4;

/// Band-limited field with independent complex Gaussian coefficients on
/// every mode `0 < |m|_∞ ≤ 4`.
fn random_field(grid: Grid, ncomp: usize, rng: &mut ChaCha8Rng) -> VectorField {
    let dim = grid.dim();
    let band = RANDOM_BAND.min(grid.n() as i64 / 2 - 1);
    let mut modes = Vec::new();
    let r = -band..=band;
    let zs: Vec<i64> = if dim == 3 {
        r.clone().collect()
    } else {
        vec![0]
    };
    for a in r.clone() {
        for b in r.clone() {
            for &c in &zs {
                let m = [a, b, c];
                // one representative per conjugate pair
                let first = m.iter().copied().find(|v| *v != 0);
                if matches!(first, Some(v) if v > 0) {
                    modes.push(m);
                }
            }
        }
    }
    let comps = (0..ncomp)
        .map(|_| {
            let list: Vec<_> = modes
                .iter()
                .map(|&m| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    (m, Complex64::new(re, im))
                })
                .collect();
            Field::from_modes(grid, &list).expect("band inside grid")
        })
        .collect();
    VectorField::new(comps).expect("shared grid")
}

/// Seeded random data: a band-limited solenoidal velocity with RMS speed
/// 1/2, and a unit director `w/|w|` where `w` is a random unit vector plus a
/// band-limited perturbation of sup-norm 0.6, so `d` is smooth and has no
/// defects.
pub fn random_seeded(grid: Grid, seed: u64) -> SimState {
    let dim = grid.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let u = leray_project(&random_field(grid, dim, &mut rng)).expect("dim components");
    let energy: f64 = u.comps().iter().map(l2_norm_sq).sum();
    let u = u.scale(0.5 * (grid.volume() / energy).sqrt());

    let base: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = base.iter().map(|v| v * v).sum::<f64>().sqrt();
    let base: Vec<f64> = base.iter().map(|v| v / norm).collect();
    let pert = random_field(grid, dim, &mut rng).into_physical();
    let sup = pert
        .magnitude()
        .values()
        .iter()
        .fold(0.0_f64, |m, v| m.max(*v));
    let pv: Vec<Vec<f64>> = pert
        .comps()
        .iter()
        .map(|c| c.values().into_owned())
        .collect();
    let mut dv = vec![vec![0.0; grid.len()]; dim];
    for p in 0..grid.len() {
        let w: Vec<f64> = (0..dim).map(|i| base[i] + 0.6 * pv[i][p] / sup).collect();
        let s = 1.0 / w.iter().map(|v| v * v).sum::<f64>().sqrt();
        for i in 0..dim {
            dv[i][p] = s * w[i];
        }
    }
    let d = dv
        .into_iter()
        .map(|v| Field::from_values(grid, v))
        .collect::<Result<Vec<_>>>()
        .and_then(VectorField::new)
        .expect("sample count fixed by grid");
    SimState::new(0.0, u, d).expect("finite by construction")
}

/// 3D Beltrami flow `u = (sin z, cos z, 0)` (`curl u = u`) with `d ≡ e_x`.
pub fn beltrami(grid: Grid) -> Result<SimState> {
    if grid.dim() != 3 {
        return Err(crate::Error::Grid("beltrami flow needs dim = 3".into()));
    }
    let k = grid.k0();
    let u = VectorField::from_fn(grid, 3, |p| {
        let z = k * p[2];
        [z.sin(), z.cos(), 0.0]
    });
    SimState::new(0.0, u, unit_x(grid))
}
