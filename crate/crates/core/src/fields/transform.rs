//! Cached FFT plans and per-mode wavenumber tables for a [`Grid`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;

/// Wavenumber data for every stored spectral coefficient.
pub struct Modes {
    /// Derivative wavenumbers, Nyquist components zeroed.
    pub k: Vec<[f64; 3]>,
    /// `|k|^2` built from `k`.
    pub k2: Vec<f64>,
    /// `|k|^2` with the Nyquist wavenumber included, so that every mode is
    /// damped by implicit diffusion.
    pub k2_full: Vec<f64>,
    /// Retained by the 2/3 rule.
    pub kept: Vec<bool>,
    /// Multiplicity of the coefficient in the full spectrum (1 or 2).
    pub weight: Vec<f64>,
    /// Signed integer mode numbers (Nyquist kept as `+n/2`).
    pub index: Vec<[i64; 3]>,
}

pub(crate) struct Plan {
    pub grid: Grid,
    r2c: Arc<dyn RealToComplex<f64>>,
    c2r: Arc<dyn ComplexToReal<f64>>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    pub modes: Modes,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key(usize, usize, u64);

pub(crate) fn plan(grid: &Grid) -> Arc<Plan> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Plan>>>> = OnceLock::new();
    let key = Key(grid.dim(), grid.n(), grid.length().to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    map.entry(key)
        .or_insert_with(|| Arc::new(Plan::new(*grid)))
        .clone()
}

impl Plan {
    fn new(grid: Grid) -> Self {
        let n = grid.n();
        let mut real = RealFftPlanner::<f64>::new();
        let mut cplx = FftPlanner::<f64>::new();
        Self {
            grid,
            r2c: real.plan_fft_forward(n),
            c2r: real.plan_fft_inverse(n),
            fwd: cplx.plan_fft_forward(n),
            inv: cplx.plan_fft_inverse(n),
            modes: Modes::new(&grid),
        }
    }

    fn half(&self) -> usize {
        self.grid.n() / 2 + 1
    }

    /// Shape of the half-complex spectral array.
    fn spectral_shape(&self) -> Vec<usize> {
        let n = self.grid.n();
        let mut shape = vec![n; self.grid.dim()];
        *shape.last_mut().unwrap() = self.half();
        shape
    }

    /// Forward transform, normalized so that coefficients are Fourier
    /// coefficients: `f(x) = Σ c_k exp(i k·x)`.
    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let n = self.grid.n();
        let h = self.half();
        let rows = values.len() / n;
        let mut out = vec![Complex64::new(0.0, 0.0); rows * h];
        let mut input = vec![0.0; n];
        let mut scratch = self.r2c.make_scratch_vec();
        for (row, dst) in values.chunks_exact(n).zip(out.chunks_exact_mut(h)) {
            input.copy_from_slice(row);
            self.r2c
                .process_with_scratch(&mut input, dst, &mut scratch)
                .expect("r2c buffer sizes are fixed by the plan");
        }
        for axis in (0..self.grid.dim() - 1).rev() {
            self.along_axis(&mut out, axis, &self.fwd);
        }
        let norm = 1.0 / self.grid.len() as f64;
        for c in out.iter_mut() {
            *c *= norm;
        }
        out
    }

    /// Inverse of [`Plan::forward`]; the imaginary parts of the
    /// self-conjugate planes are discarded.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<f64> {
        let n = self.grid.n();
        let h = self.half();
        let mut work = spectrum.to_vec();
        for axis in 0..self.grid.dim() - 1 {
            self.along_axis(&mut work, axis, &self.inv);
        }
        let rows = work.len() / h;
        let mut out = vec![0.0; rows * n];
        let mut scratch = self.c2r.make_scratch_vec();
        for (row, dst) in work.chunks_exact_mut(h).zip(out.chunks_exact_mut(n)) {
            row[0].im = 0.0;
            row[h - 1].im = 0.0;
            self.c2r
                .process_with_scratch(row, dst, &mut scratch)
                .expect("c2r buffer sizes are fixed by the plan");
        }
        out
    }

    fn along_axis(&self, data: &mut [Complex64], axis: usize, fft: &Arc<dyn Fft<f64>>) {
        let shape = self.spectral_shape();
        let n = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let mut lines = vec![Complex64::new(0.0, 0.0); data.len()];
        let mut pos = 0;
        for o in 0..outer {
            let base = o * n * stride;
            for s in 0..stride {
                for j in 0..n {
                    lines[pos + j] = data[base + j * stride + s];
                }
                pos += n;
            }
        }
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(&mut lines, &mut scratch);
        let mut pos = 0;
        for o in 0..outer {
            let base = o * n * stride;
            for s in 0..stride {
                for j in 0..n {
                    data[base + j * stride + s] = lines[pos + j];
                }
                pos += n;
            }
        }
    }
}

impl Modes {
    fn new(grid: &Grid) -> Self {
        let n = grid.n();
        let h = n / 2 + 1;
        let dim = grid.dim();
        let k0 = grid.k0();
        let cutoff = n as f64 / 3.0;
        let len = grid.spectral_len();
        let mut modes = Modes {
            k: Vec::with_capacity(len),
            k2: Vec::with_capacity(len),
            k2_full: Vec::with_capacity(len),
            kept: Vec::with_capacity(len),
            weight: Vec::with_capacity(len),
            index: Vec::with_capacity(len),
        };
        for idx in 0..len {
            let last = idx % h;
            let mut fft_idx = [0usize; 3];
            fft_idx[dim - 1] = last;
            let mut rest = idx / h;
            for a in (0..dim - 1).rev() {
                fft_idx[a] = rest % n;
                rest /= n;
            }
            let mut k = [0.0; 3];
            let mut index = [0i64; 3];
            let mut kept = true;
            for a in 0..dim {
                let m = grid.mode_number(fft_idx[a]);
                index[a] = m;
                if m.unsigned_abs() as usize != n / 2 {
                    k[a] = m as f64 * k0;
                }
                if m.unsigned_abs() as f64 > cutoff {
                    kept = false;
                }
            }
            modes.k.push(k);
            modes.k2.push(k.iter().map(|v| v * v).sum());
            modes
                .k2_full
                .push(index.iter().map(|&m| (m as f64 * k0).powi(2)).sum());
            modes.kept.push(kept);
            modes
                .weight
                .push(if last == 0 || last == n / 2 { 1.0 } else { 2.0 });
            modes.index.push(index);
        }
        modes
    }
}
