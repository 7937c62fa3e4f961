//! Command-line interface.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::diagnostics::gn_probe;
use crate::dynamics::taylor_green_uniform_d;
use crate::error::{Error, Result};
use crate::fields::lp_norm;
use crate::io::{parse_config, Config, Init};
use crate::run::{resume, run, simulate};

#[derive(Parser, Debug)]
#[command(
    name = "nematic",
    about = "Nematic liquid-crystal flow on periodic boxes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a configuration from its initial condition.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Continue a run from a snapshot.
    Resume {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Sample the interpolation-inequality ratios.
    ProbeGn {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Taylor–Green decay error at several time steps, and the observed order.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        dts: Vec<f64>,
    },
    /// Print the version.
    Version,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_BLOW_UP: i32 = 2;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BlowUp { .. } => EXIT_BLOW_UP,
        _ => EXIT_CONFIG,
    }
}

fn load(path: &Path) -> Result<Config> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config("<file>", format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Relative L² error of the Taylor–Green velocity after `t_end` against the
/// exact viscous decay, for each time step.
pub fn taylor_green_errors(config: &Config, dts: &[f64]) -> Result<Vec<f64>> {
    let grid = config.grid()?;
    dts.iter()
        .map(|&dt| {
            let c = Config {
                dt,
                init: Init::TaylorGreen,
                ..config.clone()
            };
            c.validate()?;
            let params = c.params();
            let s0 = taylor_green_uniform_d(grid);
            let end = simulate(s0.clone(), &params, 0, c.steps(), u64::MAX, |_| Ok(()))
                .map_err(|s| s.error)?;
            let k2 = 2.0 * grid.k0().powi(2);
            let exact =
                s0.u.scale((-params.viscous_coefficient() * k2 * end.t).exp());
            let diff = end.u.axpby(1.0, &exact, -1.0)?;
            Ok(lp_norm(&diff, 2.0)? / lp_norm(&exact, 2.0)?)
        })
        .collect()
}

/// Least-squares slope of `log e` against `log dt`.
pub fn observed_order(dts: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = dts.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Run { config } => {
            let c = load(&config)?;
            let o = run(&c)?;
            writeln!(
                out,
                "t = {}, {} records written to {}",
                o.state.t,
                o.records.len(),
                c.output_dir.display()
            )?;
        }
        Command::Resume { snapshot, config } => {
            let c = load(&config)?;
            let o = resume(&c, &snapshot)?;
            writeln!(
                out,
                "t = {}, {} records appended in {}",
                o.state.t,
                o.records.len(),
                c.output_dir.display()
            )?;
        }
        Command::ProbeGn {
            dim,
            n,
            samples,
            seed,
        } => {
            let r = gn_probe(dim, n, samples, seed)?;
            writeln!(
                out,
                "n = {n}, samples = {samples}, zero fields = {}",
                r.zero_fields
            )?;
            for f in &r.families {
                let hist: Vec<String> = f.histogram.iter().map(|c| c.to_string()).collect();
                writeln!(
                    out,
                    "{:<14} max {:.6e}  skipped {}  histogram {}",
                    f.name,
                    f.max,
                    f.skipped,
                    hist.join(" ")
                )?;
            }
        }
        Command::Convergence { config, dts } => {
            let c = load(&config)?;
            if dts.len() < 2 {
                return Err(Error::config("dts", "need at least two time steps"));
            }
            let errors = taylor_green_errors(&c, &dts)?;
            for (dt, e) in dts.iter().zip(&errors) {
                writeln!(out, "dt = {dt:e}  error = {e:.6e}")?;
            }
            for k in 1..dts.len() {
                let p = (errors[k - 1] / errors[k]).ln() / (dts[k - 1] / dts[k]).ln();
                writeln!(out, "order {:e} -> {:e}: {p:.4}", dts[k - 1], dts[k])?;
            }
            writeln!(out, "observed order: {:.4}", observed_order(&dts, &errors))?;
        }
        Command::Version => writeln!(out, "nematic {}", env!("CARGO_PKG_VERSION"))?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on usage or configuration errors,
/// 2 on blow-up.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
