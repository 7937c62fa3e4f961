use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::dynamics::{
    beltrami, random_seeded, taylor_green_uniform_d, vortex_pair, Integrator, Model, SimParams,
    SimState,
};
use crate::error::{Error, Result};
use crate::fields::Grid;

/// Initial condition selector.
#[derive(Clone, Debug, PartialEq)]
pub enum Init {
    TaylorGreen,
    VortexPair,
    RandomSeeded,
    /// 3D only.
    Beltrami,
    /// Velocity and director read from a snapshot; its time is reset to 0.
    File(PathBuf),
}

impl Init {
    fn parse(s: &str) -> Option<Init> {
        Some(match s {
            "taylor-green-uniform-d" => Init::TaylorGreen,
            "vortex-pair" => Init::VortexPair,
            "random-seeded" => Init::RandomSeeded,
            "beltrami" => Init::Beltrami,
            _ => Init::File(PathBuf::from(s.strip_prefix("file:")?)),
        })
    }

    fn name(&self) -> String {
        match self {
            Init::TaylorGreen => "taylor-green-uniform-d".into(),
            Init::VortexPair => "vortex-pair".into(),
            Init::RandomSeeded => "random-seeded".into(),
            Init::Beltrami => "beltrami".into(),
            Init::File(p) => format!("file:{}", p.display()),
        }
    }
}

/// Run configuration, read from a JSON object. Missing keys take the
/// defaults of [`Config::default`]; unknown keys are rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub dim: usize,
    pub n: usize,
    pub length: f64,
    pub nu: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Steps between diagnostics records.
    pub save_every: u64,
    /// Steps between snapshots; 0 disables them.
    pub snapshot_every: u64,
    pub model: Model,
    pub init: Init,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub integrator: Integrator,
    pub dealias: bool,
}

impl Default for Config {
    fn default() -> Self {
        let p = SimParams::default();
        Self {
            dim: 2,
            n: 64,
            length: std::f64::consts::TAU,
            nu: p.nu,
            lambda: p.lambda,
            gamma: p.gamma,
            epsilon: p.epsilon,
            alpha: p.alpha,
            dt: p.dt,
            t_end: 1.0,
            save_every: 10,
            snapshot_every: 0,
            model: p.model,
            init: Init::TaylorGreen,
            seed: 0,
            output_dir: PathBuf::from("out"),
            integrator: p.integrator,
            dealias: p.dealias,
        }
    }
}

fn number(key: &str, v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::config(key, format!("expected a number, got {v}")))
}

fn integer(key: &str, v: &Value) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::config(key, format!("expected a non-negative integer, got {v}")))
}

fn string<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::config(key, format!("expected a string, got {v}")))
}

pub fn parse_config(text: &str) -> Result<Config> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::config("<document>", e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(Error::config("<document>", "expected a JSON object"));
    };
    let mut c = Config::default();
    for (key, v) in &map {
        let k = key.as_str();
        match k {
            "dim" => c.dim = integer(k, v)? as usize,
            "n" => c.n = integer(k, v)? as usize,
            "length" => c.length = number(k, v)?,
            "nu" => c.nu = number(k, v)?,
            "lambda" => c.lambda = number(k, v)?,
            "gamma" => c.gamma = number(k, v)?,
            "epsilon" => c.epsilon = number(k, v)?,
            "alpha" => c.alpha = number(k, v)?,
            "dt" => c.dt = number(k, v)?,
            "t_end" => c.t_end = number(k, v)?,
            "save_every" => c.save_every = integer(k, v)?,
            "snapshot_every" => c.snapshot_every = integer(k, v)?,
            "seed" => c.seed = integer(k, v)?,
            "model" => c.model = string(k, v)?.parse().map_err(|e| Error::config(k, e))?,
            "integrator" => {
                c.integrator = string(k, v)?.parse().map_err(|e| Error::config(k, e))?
            }
            "init" => {
                let s = string(k, v)?;
                c.init = Init::parse(s)
                    .ok_or_else(|| Error::config(k, format!("unknown initial condition `{s}`")))?;
            }
            "output_dir" => c.output_dir = PathBuf::from(string(k, v)?),
            "dealias" => {
                c.dealias = v
                    .as_bool()
                    .ok_or_else(|| Error::config(k, format!("expected a boolean, got {v}")))?
            }
            _ => return Err(Error::config(k, "unknown key")),
        }
    }
    c.validate()?;
    Ok(c)
}

/// Pretty JSON with every key present, in sorted order.
pub fn serialize_config(c: &Config) -> String {
    let mut m: BTreeMap<&str, Value> = BTreeMap::new();
    m.insert("dim", c.dim.into());
    m.insert("n", c.n.into());
    m.insert("length", c.length.into());
    m.insert("nu", c.nu.into());
    m.insert("lambda", c.lambda.into());
    m.insert("gamma", c.gamma.into());
    m.insert("epsilon", c.epsilon.into());
    m.insert("alpha", c.alpha.into());
    m.insert("dt", c.dt.into());
    m.insert("t_end", c.t_end.into());
    m.insert("save_every", c.save_every.into());
    m.insert("snapshot_every", c.snapshot_every.into());
    m.insert("model", c.model.to_string().into());
    m.insert("init", c.init.name().into());
    m.insert("seed", c.seed.into());
    m.insert("output_dir", c.output_dir.display().to_string().into());
    m.insert("integrator", c.integrator.to_string().into());
    m.insert("dealias", c.dealias.into());
    let obj: Map<String, Value> = m.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    serde_json::to_string_pretty(&Value::Object(obj)).expect("plain JSON values")
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::config(
                "dim",
                format!("must be 2 or 3, got {}", self.dim),
            ));
        }
        if self.n < 8 || self.n % 2 != 0 {
            return Err(Error::config(
                "n",
                format!("must be even and >= 8, got {}", self.n),
            ));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::config(
                "length",
                format!("must be > 0, got {}", self.length),
            ));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::config(
                "t_end",
                format!("must be >= 0, got {}", self.t_end),
            ));
        }
        if self.save_every == 0 {
            return Err(Error::config("save_every", "must be >= 1"));
        }
        if self.init == Init::Beltrami && self.dim != 3 {
            return Err(Error::config("init", "beltrami needs dim = 3"));
        }
        self.params().validate().map_err(|e| match e {
            Error::Param { name, reason } => Error::config(name, reason),
            other => other,
        })
    }

    pub fn params(&self) -> SimParams {
        SimParams {
            nu: self.nu,
            lambda: self.lambda,
            gamma: self.gamma,
            epsilon: self.epsilon,
            alpha: self.alpha,
            dt: self.dt,
            model: self.model,
            dealias: self.dealias,
            integrator: self.integrator,
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dim, self.n, self.length)
    }

    /// Number of steps to reach `t_end`.
    pub fn steps(&self) -> u64 {
        (self.t_end / self.dt).round() as u64
    }

    pub fn initial_state(&self) -> Result<SimState> {
        let grid = self.grid()?;
        match &self.init {
            Init::TaylorGreen => Ok(taylor_green_uniform_d(grid)),
            Init::VortexPair => Ok(vortex_pair(grid, self.epsilon)),
            Init::RandomSeeded => Ok(random_seeded(grid, self.seed)),
            Init::Beltrami => beltrami(grid),
            Init::File(path) => {
                let (state, _) = super::read_snapshot(path)?;
                if *state.grid() != grid {
                    return Err(Error::config("init", "snapshot grid differs from config"));
                }
                SimState::new(0.0, state.u, state.d)
            }
        }
    }
}
