use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fields::{lp_norm, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Navier–Stokes coupled to Ginzburg–Landau director relaxation.
    Lc,
    /// Same director equation, with the Lagrangian-averaged momentum balance.
    LcAlpha,
}

impl Model {
    pub fn tag(self) -> u8 {
        match self {
            Model::Lc => 0,
            Model::LcAlpha => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Model::Lc),
            1 => Some(Model::LcAlpha),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Lc => "lc",
            Model::LcAlpha => "lc-alpha",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lc" => Ok(Model::Lc),
            "lc-alpha" => Ok(Model::LcAlpha),
            other => Err(format!("unknown model `{other}` (expected lc or lc-alpha)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrator {
    /// Backward Euler on diffusion, forward Euler on everything else.
    Imex1,
    /// Crank–Nicolson on diffusion with a Heun predictor/corrector on the
    /// explicit terms. One-step, so restarts need no history.
    Imex2,
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Integrator::Imex1 => "imex1",
            Integrator::Imex2 => "imex2",
        })
    }
}

impl FromStr for Integrator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "imex1" => Ok(Integrator::Imex1),
            "imex2" => Ok(Integrator::Imex2),
            other => Err(format!(
                "unknown integrator `{other}` (expected imex1 or imex2)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimParams {
    /// Kinematic viscosity ν.
    pub nu: f64,
    /// Elastic constant λ.
    pub lambda: f64,
    /// Relaxation parameter γ.
    pub gamma: f64,
    /// Ginzburg–Landau penalization ε.
    pub epsilon: f64,
    /// Averaging scale α; must be 0 for [`Model::Lc`].
    pub alpha: f64,
    pub dt: f64,
    pub model: Model,
    pub dealias: bool,
    pub integrator: Integrator,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            nu: 0.1,
            lambda: 1.0,
            gamma: 1.0,
            epsilon: 0.1,
            alpha: 0.0,
            dt: 1e-3,
            model: Model::Lc,
            dealias: true,
            integrator: Integrator::Imex1,
        }
    }
}

impl SimParams {
    /// Checks the physical constraints. `nu` and `lambda` may be zero so
    /// that inviscid and uncoupled limits can be run.
    pub fn validate(&self) -> Result<()> {
        let nonneg = |name: &'static str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::param(
                    name,
                    format!("must be finite and >= 0, got {v}"),
                ))
            }
        };
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ))
            }
        };
        nonneg("nu", self.nu)?;
        nonneg("lambda", self.lambda)?;
        positive("gamma", self.gamma)?;
        positive("epsilon", self.epsilon)?;
        nonneg("alpha", self.alpha)?;
        positive("dt", self.dt)?;
        if self.model == Model::Lc && self.alpha != 0.0 {
            return Err(Error::param("alpha", "model lc requires alpha = 0"));
        }
        Ok(())
    }

    /// Coefficient of `-|k|²` in the implicit velocity operator.
    pub fn viscous_coefficient(&self) -> f64 {
        match self.model {
            // Div Def u = ½Δu on solenoidal fields
            Model::Lc => 0.5 * self.nu,
            Model::LcAlpha => self.nu,
        }
    }
}

/// Velocity and director at time `t`, both in physical representation.
#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub u: VectorField,
    pub d: VectorField,
}

impl SimState {
    pub fn new(t: f64, u: VectorField, d: VectorField) -> Result<Self> {
        let state = Self {
            t,
            u: u.into_physical(),
            d: d.into_physical(),
        };
        state.validate()?;
        Ok(state)
    }

    pub fn validate(&self) -> Result<()> {
        self.u.check_grid(&self.d)?;
        let dim = self.u.grid().dim();
        if self.u.len() != dim || self.d.len() != dim {
            return Err(Error::Shape(format!(
                "velocity and director need {dim} components, got {} and {}",
                self.u.len(),
                self.d.len()
            )));
        }
        if !self.t.is_finite() || !self.u.is_finite() || !self.d.is_finite() {
            return Err(Error::NonFinite("state"));
        }
        Ok(())
    }

    pub fn grid(&self) -> &crate::fields::Grid {
        self.u.grid()
    }

    pub fn kinetic_l2(&self) -> f64 {
        lp_norm(&self.u, 2.0).unwrap_or(f64::NAN)
    }
}
