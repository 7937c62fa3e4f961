use crate::dynamics::{gl_force, gl_potential, Model, SimParams, SimState};
use crate::error::{Error, Result};
use crate::fields::{
    curl, def_tensor, divergence, helmholtz, hs_seminorm, l2_inner, lp_norm, vector_laplacian,
    VectorField,
};

/// One row of the diagnostics time series.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub kinetic: f64,
    pub elastic: f64,
    pub penalty: f64,
    pub total_e: f64,
    pub e_alpha: f64,
    pub dissipation: f64,
    pub energy_residual: f64,
    pub max_d: f64,
    pub div_residual: f64,
    pub helicity: f64,
    pub enstrophy: f64,
}

impl DiagnosticsRecord {
    pub const COLUMNS: [&'static str; 12] = [
        "t",
        "kinetic",
        "elastic",
        "penalty",
        "total_E",
        "E_alpha",
        "dissipation",
        "energy_residual",
        "max_d",
        "div_residual",
        "helicity",
        "enstrophy",
    ];

    pub fn values(&self) -> [f64; 12] {
        [
            self.t,
            self.kinetic,
            self.elastic,
            self.penalty,
            self.total_e,
            self.e_alpha,
            self.dissipation,
            self.energy_residual,
            self.max_d,
            self.div_residual,
            self.helicity,
            self.enstrophy,
        ]
    }

    pub fn from_values(v: [f64; 12]) -> Self {
        Self {
            t: v[0],
            kinetic: v[1],
            elastic: v[2],
            penalty: v[3],
            total_e: v[4],
            e_alpha: v[5],
            dissipation: v[6],
            energy_residual: v[7],
            max_d: v[8],
            div_residual: v[9],
            helicity: v[10],
            enstrophy: v[11],
        }
    }

    /// The energy whose decay the model's energy law describes: `total_E`
    /// for `lc`, and the averaged kinetic energy plus the director terms for
    /// `lc-alpha`.
    pub fn law_energy(&self, model: Model) -> f64 {
        match model {
            Model::Lc => self.total_e,
            Model::LcAlpha => self.e_alpha + self.elastic + self.penalty,
        }
    }
}

/// Components of `E = ½∫|u|² + ½λ∫|∇d|² + λ∫F(d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Energy {
    pub kinetic: f64,
    pub elastic: f64,
    pub penalty: f64,
}

impl Energy {
    pub fn total(&self) -> f64 {
        self.kinetic + self.elastic + self.penalty
    }
}

pub fn total_energy(state: &SimState, params: &SimParams) -> Result<Energy> {
    let kinetic = 0.5 * lp_norm(&state.u, 2.0)?.powi(2);
    let elastic = 0.5 * params.lambda * hs_seminorm(&state.d, 1).powi(2);
    let penalty = params.lambda * gl_potential(&state.d, params.epsilon)?;
    Ok(Energy {
        kinetic,
        elastic,
        penalty,
    })
}

/// `E^α = ½∫(|u|² + 2α²|Def u|²)`.
pub fn averaged_energy(state: &SimState, params: &SimParams) -> Result<f64> {
    let kinetic = 0.5 * lp_norm(&state.u, 2.0)?.powi(2);
    if params.alpha == 0.0 {
        return Ok(kinetic);
    }
    let def = def_tensor(&state.u)?;
    Ok(kinetic + params.alpha.powi(2) * def.l2_norm_sq())
}

/// Energy dissipation rate. For `lc`: `ν|Def u|² + λγ|Δd − f(d)|²`; for
/// `lc-alpha`: `ν(|∇u|² + α²|Δu|²) + λγ|Δd − f(d)|²`. `f(d)` is truncated
/// exactly as in the time stepper when dealiasing is on.
pub fn dissipation(state: &SimState, params: &SimParams) -> Result<f64> {
    let viscous = match params.model {
        Model::Lc => params.nu * def_tensor(&state.u)?.l2_norm_sq(),
        Model::LcAlpha => {
            params.nu
                * (hs_seminorm(&state.u, 1).powi(2)
                    + params.alpha.powi(2) * hs_seminorm(&state.u, 2).powi(2))
        }
    };
    if params.lambda == 0.0 {
        return Ok(viscous);
    }
    let f = gl_force(&state.d, params.epsilon, params.dealias)?;
    let h = vector_laplacian(&state.d.to_spectral()?).axpby(1.0, &f, -1.0)?;
    let h2 = lp_norm(&h, 2.0)?.powi(2);
    Ok(viscous + params.lambda * params.gamma * h2)
}

/// `|(E₁ − E₀)/dt + ½(D₀ + D₁)| / max(½(D₀ + D₁), 1)` for two records `dt`
/// apart, using the energy of the model's law.
pub fn energy_law_residual(
    prev: &DiagnosticsRecord,
    next: &DiagnosticsRecord,
    dt: f64,
    model: Model,
) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::param("dt", format!("must be > 0, got {dt}")));
    }
    let rate = (next.law_energy(model) - prev.law_energy(model)) / dt;
    let mid = 0.5 * (prev.dissipation + next.dissipation);
    Ok((rate + mid).abs() / mid.max(1.0))
}

/// `∫ v·(∇×v)` with `v = (1 − α²Δ)u`. Planar flows have no helicity, so
/// `None` is returned for 2D grids.
pub fn helicity(u: &VectorField, alpha: f64) -> Result<Option<f64>> {
    if u.grid().dim() == 2 {
        return Ok(None);
    }
    let v = helmholtz(&u.to_spectral()?, alpha)?;
    let w = curl(&v)?;
    Ok(Some(l2_inner(&v, &w)?))
}

/// Diagnostics for one state; `energy_residual` is left at 0 for the caller
/// to fill in from consecutive records.
pub fn record(state: &SimState, params: &SimParams) -> Result<DiagnosticsRecord> {
    let e = total_energy(state, params)?;
    let div = divergence(&state.u)?;
    let grad_scale = hs_seminorm(&state.u, 1);
    let enstrophy = grad_scale * grad_scale;
    let div_residual = lp_norm(&div, 2.0)? / grad_scale.max(1.0);
    Ok(DiagnosticsRecord {
        t: state.t,
        kinetic: e.kinetic,
        elastic: e.elastic,
        penalty: e.penalty,
        total_e: e.total(),
        e_alpha: averaged_energy(state, params)?,
        dissipation: dissipation(state, params)?,
        energy_residual: 0.0,
        max_d: lp_norm(&state.d, f64::INFINITY)?,
        div_residual,
        helicity: helicity(&state.u, params.alpha)?.unwrap_or(0.0),
        enstrophy,
    })
}
