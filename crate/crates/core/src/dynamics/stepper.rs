use num_complex::Complex64;

use super::params::{Integrator, SimParams, SimState};
use super::terms::explicit_terms;
use crate::error::{Error, Result};
use crate::fields::{leray_project, Field, Grid, VectorField};

/// `(1 + a|k|²)⁻¹ [(1 − b|k|²) x + dt·r]` per mode and component.
fn implicit_update(
    grid: Grid,
    x: &VectorField,
    rhs: &VectorField,
    dt: f64,
    a: f64,
    b: f64,
) -> Result<VectorField> {
    let plan = crate::fields::plan(&grid);
    let table = &plan.modes.k2_full;
    let comps = x
        .comps()
        .iter()
        .zip(rhs.comps())
        .map(|(xc, rc)| {
            let xs = xc.spectrum();
            let rs = rc.spectrum();
            let coeffs: Vec<Complex64> = (0..grid.spectral_len())
                .map(|i| (xs[i] * (1.0 - b * table[i]) + rs[i] * dt) / (1.0 + a * table[i]))
                .collect();
            Field::from_spectrum(grid, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(comps)
}

fn finish(t: f64, u: VectorField, d: VectorField) -> Result<SimState> {
    let u = leray_project(&u)?.into_physical();
    let d = d.into_physical();
    if !u.is_finite() || !d.is_finite() {
        return Err(Error::BlowUp {
            t,
            reason: "non-finite state".into(),
        });
    }
    Ok(SimState { t, u, d })
}

/// Advances the state by one time step of the configured IMEX scheme.
pub fn step(state: &SimState, params: &SimParams) -> Result<SimState> {
    params.validate()?;
    state.validate()?;
    let grid = *state.grid();
    let dt = params.dt;
    let nu = params.viscous_coefficient();
    let gamma = params.gamma;
    let t_next = state.t + dt;

    let n0 = explicit_terms(state, params)?;
    let (u_hat, d_hat) = (&n0.u_hat, &n0.d_hat);
    match params.integrator {
        Integrator::Imex1 => {
            let u = implicit_update(grid, u_hat, &n0.momentum, dt, dt * nu, 0.0)?;
            let d = implicit_update(grid, d_hat, &n0.director, dt, dt * gamma, 0.0)?;
            finish(t_next, u, d)
        }
        Integrator::Imex2 => {
            let u1 = implicit_update(grid, u_hat, &n0.momentum, dt, dt * nu, 0.0)?;
            let d1 = implicit_update(grid, d_hat, &n0.director, dt, dt * gamma, 0.0)?;
            let predicted = finish(t_next, u1, d1)?;
            let n1 = explicit_terms(&predicted, params)?;
            let mom = n0.momentum.axpby(0.5, &n1.momentum, 0.5)?;
            let dir = n0.director.axpby(0.5, &n1.director, 0.5)?;
            let h = 0.5 * dt;
            let u = implicit_update(grid, u_hat, &mom, dt, h * nu, h * nu)?;
            let d = implicit_update(grid, d_hat, &dir, dt, h * gamma, h * gamma)?;
            finish(t_next, u, d)
        }
    }
}
