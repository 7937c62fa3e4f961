//! NLC1 binary snapshots. Layout, all little-endian: magic `NLC1`, format
//! version `u32`, `dim: u8`, `n: u64` once per axis, `length: f64`,
//! `t: f64`, model tag `u8`, then `ν λ γ ε α dt` as `f64`, then the physical
//! samples (row-major) of every velocity component followed by every
//! director component.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::dynamics::{Model, SimParams, SimState};
use crate::error::{Error, Result};
use crate::fields::{Field, Grid, VectorField};

const MAGIC: &[u8; 4] = b"NLC1";
const VERSION: u32 = 1;

pub fn encode_snapshot(state: &SimState, params: &SimParams) -> Vec<u8> {
    let grid = state.grid();
    let mut out = Vec::with_capacity(64 + 2 * grid.dim() * grid.len() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(grid.dim() as u8);
    for _ in 0..grid.dim() {
        out.extend_from_slice(&(grid.n() as u64).to_le_bytes());
    }
    out.extend_from_slice(&grid.length().to_le_bytes());
    out.extend_from_slice(&state.t.to_le_bytes());
    out.push(params.model.tag());
    for v in [
        params.nu,
        params.lambda,
        params.gamma,
        params.epsilon,
        params.alpha,
        params.dt,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for c in state.u.comps().iter().chain(state.d.comps()) {
        for v in c.values().iter() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn write_snapshot(state: &SimState, params: &SimParams, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&encode_snapshot(state, params))?;
    Ok(())
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < k {
            return Err(Error::Snapshot(format!(
                "truncated file while reading {what}"
            )));
        }
        let s = &self.buf[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Parses a snapshot. Only the parameters stored in the header are
/// recovered; `dealias` and `integrator` take their defaults.
pub fn decode_snapshot(bytes: &[u8]) -> Result<(SimState, SimParams)> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    r.pos = 4;
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(Error::Snapshot(format!(
            "version mismatch: file has {version}, expected {VERSION}"
        )));
    }
    let dim = r.u8("dim")? as usize;
    if dim != 2 && dim != 3 {
        return Err(Error::Snapshot(format!("unsupported dim {dim}")));
    }
    let ns = (0..dim).map(|_| r.u64("n")).collect::<Result<Vec<_>>>()?;
    if ns.iter().any(|&n| n != ns[0]) {
        return Err(Error::Snapshot(format!("unequal axis sizes {ns:?}")));
    }
    let length = r.f64("length")?;
    let grid = Grid::new(dim, ns[0] as usize, length)
        .map_err(|e| Error::Snapshot(format!("header: {e}")))?;
    let t = r.f64("t")?;
    let tag = r.u8("model")?;
    let model =
        Model::from_tag(tag).ok_or_else(|| Error::Snapshot(format!("unknown model tag {tag}")))?;
    let mut block = [0.0; 6];
    for v in &mut block {
        *v = r.f64("parameters")?;
    }
    let expected = 2 * dim * grid.len() * 8;
    let rest = bytes.len() - r.pos;
    if rest < expected {
        return Err(Error::Snapshot(format!(
            "truncated payload: {rest} of {expected} bytes"
        )));
    }
    if rest > expected {
        return Err(Error::Snapshot(format!(
            "{} trailing bytes after payload",
            rest - expected
        )));
    }
    let mut comps = Vec::with_capacity(2 * dim);
    for _ in 0..2 * dim {
        let raw = r.take(grid.len() * 8, "payload")?;
        let vals = raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        comps.push(Field::from_values(grid, vals)?);
    }
    let d = VectorField::new(comps.split_off(dim))?;
    let u = VectorField::new(comps)?;
    let state = SimState { t, u, d };
    state
        .validate()
        .map_err(|e| Error::Snapshot(format!("payload: {e}")))?;
    let params = SimParams {
        nu: block[0],
        lambda: block[1],
        gamma: block[2],
        epsilon: block[3],
        alpha: block[4],
        dt: block[5],
        model,
        ..SimParams::default()
    };
    Ok((state, params))
}

pub fn read_snapshot(path: &Path) -> Result<(SimState, SimParams)> {
    decode_snapshot(&fs::read(path)?)
}
