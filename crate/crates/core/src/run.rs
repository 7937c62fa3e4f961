//! Time loop, diagnostics schedule and output files of a run.

use std::fs;
use std::path::Path;

use crate::diagnostics::{energy_law_residual, record, DiagnosticsRecord};
use crate::dynamics::{step, SimParams, SimState};
use crate::error::{Error, Result};
use crate::io::{append_csv, read_snapshot, serialize_config, write_snapshot, Config};

/// Kinetic energy growth factor treated as blow-up.
pub const BLOW_UP_GROWTH: f64 = 1e6;

pub const CSV_NAME: &str = "diagnostics.csv";
pub const FINAL_NAME: &str = "final.nlc";
pub const CHECKPOINT_NAME: &str = "checkpoint.nlc";

/// What the time loop reports after each step (and once for the initial
/// state of a fresh run).
pub struct StepEvent<'a> {
    pub step: u64,
    pub state: &'a SimState,
    /// Present on record steps.
    pub record: Option<&'a DiagnosticsRecord>,
}

/// A loop that ended early, with the last state that passed all checks.
#[derive(Debug)]
pub struct Stopped {
    pub error: Error,
    pub last_good: SimState,
}

/// Advances `state`, taken to be at step `first_step`, up to `last_step`.
/// Records are produced at step 0 (only when `first_step == 0`), at every
/// multiple of `save_every` and at `last_step`. Each record's
/// `energy_residual` compares it with the state one step earlier.
pub fn simulate(
    state: SimState,
    params: &SimParams,
    first_step: u64,
    last_step: u64,
    save_every: u64,
    mut on_event: impl FnMut(StepEvent<'_>) -> Result<()>,
) -> std::result::Result<SimState, Stopped> {
    let save_every = save_every.max(1);
    let stop = |error, last_good| Stopped { error, last_good };
    let initial = match record(&state, params) {
        Ok(r) => r,
        Err(e) => return Err(stop(e, state)),
    };
    let reference = initial.kinetic.max(initial.total_e).max(f64::MIN_POSITIVE);
    let mut cached = Some((first_step, initial));
    if first_step == 0 {
        let event = StepEvent {
            step: 0,
            state: &state,
            record: Some(&initial),
        };
        if let Err(e) = on_event(event) {
            return Err(stop(e, state));
        }
    }

    let mut current = state;
    for i in first_step + 1..=last_step {
        let next = match step(&current, params) {
            Ok(s) => s,
            Err(e) => return Err(stop(e, current)),
        };
        let kinetic = 0.5 * next.kinetic_l2().powi(2);
        if !(kinetic <= BLOW_UP_GROWTH * reference) {
            let reason =
                format!("kinetic energy {kinetic:e} exceeds {BLOW_UP_GROWTH:e} x {reference:e}");
            return Err(stop(Error::BlowUp { t: next.t, reason }, current));
        }
        let rec = if i % save_every == 0 || i == last_step {
            let prev = match cached.take() {
                Some((k, r)) if k == i - 1 => Ok(r),
                _ => record(&current, params),
            };
            let rec = prev.and_then(|prev| {
                let mut r = record(&next, params)?;
                r.energy_residual = energy_law_residual(&prev, &r, params.dt, params.model)?;
                Ok(r)
            });
            match rec {
                Ok(r) => Some(r),
                Err(e) => return Err(stop(e, current)),
            }
        } else {
            None
        };
        if let Some(r) = rec {
            cached = Some((i, r));
        }
        let event = StepEvent {
            step: i,
            state: &next,
            record: rec.as_ref(),
        };
        if let Err(e) = on_event(event) {
            return Err(stop(e, next));
        }
        current = next;
    }
    Ok(current)
}

pub struct RunOutput {
    pub state: SimState,
    pub records: Vec<DiagnosticsRecord>,
}

fn snapshot_name(step: u64) -> String {
    format!("snap_{step:08}.nlc")
}

fn drive(config: &Config, state: SimState, first_step: u64) -> Result<RunOutput> {
    let params = config.params();
    let dir = &config.output_dir;
    let csv = dir.join(CSV_NAME);
    let mut records = Vec::new();
    let result = simulate(
        state,
        &params,
        first_step,
        config.steps(),
        config.save_every,
        |ev| {
            if let Some(r) = ev.record {
                append_csv(r, &csv)?;
                records.push(*r);
            }
            if config.snapshot_every > 0 && ev.step % config.snapshot_every == 0 {
                write_snapshot(ev.state, &params, &dir.join(snapshot_name(ev.step)))?;
            }
            Ok(())
        },
    );
    match result {
        Ok(state) => {
            write_snapshot(&state, &params, &dir.join(FINAL_NAME))?;
            Ok(RunOutput { state, records })
        }
        Err(Stopped { error, last_good }) => {
            write_snapshot(&last_good, &params, &dir.join(CHECKPOINT_NAME))?;
            Err(error)
        }
    }
}

/// Runs a configuration from its initial condition, writing
/// `config.json`, `diagnostics.csv`, periodic snapshots and `final.nlc`
/// into the output directory. On failure the last good state is saved as
/// `checkpoint.nlc`.
pub fn run(config: &Config) -> Result<RunOutput> {
    config.validate()?;
    let state = config.initial_state()?;
    fs::create_dir_all(&config.output_dir)?;
    fs::write(
        config.output_dir.join("config.json"),
        serialize_config(config),
    )?;
    let csv = config.output_dir.join(CSV_NAME);
    if csv.exists() {
        fs::remove_file(&csv)?;
    }
    drive(config, state, 0)
}

/// Continues from a snapshot with the parameters of `config`, appending to
/// the output directory's CSV. The step counter is recovered from the
/// snapshot time, so records and snapshots fall on the same steps as in an
/// uninterrupted run.
pub fn resume(config: &Config, snapshot: &Path) -> Result<RunOutput> {
    config.validate()?;
    let (state, _) = read_snapshot(snapshot)?;
    if *state.grid() != config.grid()? {
        return Err(Error::config("n", "snapshot grid differs from config"));
    }
    let first = (state.t / config.dt).round() as u64;
    fs::create_dir_all(&config.output_dir)?;
    drive(config, state, first)
}
