use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform periodic box `[0, L)^dim` with `n` points per axis.
///
/// Physical samples are stored row-major with axis 0 (x) slowest. Spectral
/// coefficients use the half-complex layout of a real transform: the last
/// axis keeps only the `n/2 + 1` non-negative wavenumbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Grid(format!("dim must be 2 or 3, got {dim}")));
        }
        if n % 2 != 0 {
            return Err(Error::Grid(format!("n must be even, got {n}")));
        }
        if n < 8 {
            return Err(Error::Grid(format!("n must be at least 8, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Grid(format!(
                "length must be positive, got {length}"
            )));
        }
        Ok(Self { dim, n, length })
    }

    /// `n = 64`, `L = 2π` box of the given dimension.
    pub fn standard(dim: usize, n: usize) -> Result<Self> {
        Self::new(dim, n, 2.0 * PI)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of physical samples, `n^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Number of stored spectral coefficients, `n^(dim-1) (n/2 + 1)`.
    pub fn spectral_len(&self) -> usize {
        self.n.pow(self.dim as u32 - 1) * (self.n / 2 + 1)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Quadrature weight of one sample, `(L/n)^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(self.dim as i32)
    }

    /// Base wavenumber `2π/L`.
    pub fn k0(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Signed integer mode number of FFT index `i`, in `{-n/2+1, ..., n/2}`.
    pub fn mode_number(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Wavenumbers along one axis in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.mode_number(i) as f64 * self.k0())
            .collect()
    }

    /// Coordinates of the physical sample with flat index `idx`; unused
    /// trailing entries are zero in 2D.
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        let n = self.n;
        match self.dim {
            2 => [(idx / n) as f64 * h, (idx % n) as f64 * h, 0.0],
            _ => [
                (idx / (n * n)) as f64 * h,
                ((idx / n) % n) as f64 * h,
                (idx % n) as f64 * h,
            ],
        }
    }
}

/// Validating constructor mirroring [`Grid::new`].
pub fn make_grid(dim: usize, n: usize, length: f64) -> Result<Grid> {
    Grid::new(dim, n, length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        let g = make_grid(2, 64, 2.0 * PI).unwrap();
        assert!((g.volume() - 4.0 * PI * PI).abs() < 1e-12);
        assert!((g.cell_volume() * g.len() as f64 - g.volume()).abs() < 1e-12);
        let g = make_grid(3, 32, 2.0 * PI).unwrap();
        assert!((g.volume() - 8.0 * PI.powi(3)).abs() < 1e-10);
        assert!((g.cell_volume() * g.len() as f64 - g.volume()).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(make_grid(2, 63, 2.0 * PI).is_err());
        assert!(make_grid(4, 64, 2.0 * PI).is_err());
        assert!(make_grid(1, 64, 2.0 * PI).is_err());
        assert!(make_grid(2, 6, 2.0 * PI).is_err());
        assert!(make_grid(2, 64, 0.0).is_err());
        assert!(make_grid(2, 64, -1.0).is_err());
    }

    #[test]
    fn wavenumber_range() {
        let g = make_grid(2, 8, 2.0 * PI).unwrap();
        let k = g.wavenumbers();
        let want = [0.0, 1.0, 2.0, 3.0, 4.0, -3.0, -2.0, -1.0];
        for (a, b) in k.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let g = make_grid(2, 8, 4.0 * PI).unwrap();
        assert!((g.wavenumbers()[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn points_are_row_major() {
        let g = make_grid(3, 8, 8.0).unwrap();
        assert_eq!(g.point(0), [0.0, 0.0, 0.0]);
        assert_eq!(g.point(1), [0.0, 0.0, 1.0]);
        assert_eq!(g.point(8), [0.0, 1.0, 0.0]);
        assert_eq!(g.point(64), [1.0, 0.0, 0.0]);
    }
}
