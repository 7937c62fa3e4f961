use std::borrow::Cow;

use num_complex::Complex64;

use super::grid::Grid;
use super::transform::{plan, Modes};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Repr {
    Physical(Vec<f64>),
    Spectral(Vec<Complex64>),
}

/// Real scalar field on a periodic grid, held either as samples or as
/// half-complex Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid,
    repr: Repr,
}

impl Field {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            repr: Repr::Physical(vec![0.0; grid.len()]),
        }
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self {
            grid,
            repr: Repr::Physical(vec![value; grid.len()]),
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self {
            grid,
            repr: Repr::Physical(values),
        }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            repr: Repr::Physical(values),
        })
    }

    pub fn from_spectrum(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.spectral_len() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                grid.spectral_len(),
                coeffs.len()
            )));
        }
        Ok(Self {
            grid,
            repr: Repr::Spectral(coeffs),
        })
    }

    /// Real field `Σ c_m exp(i m·k0·x) + c.c.` from explicit coefficients on
    /// integer mode numbers. Each entry also sets its conjugate partner, so
    /// list every mode once; modes must lie strictly inside the Nyquist band.
    pub fn from_modes(grid: Grid, modes: &[([i64; 3], Complex64)]) -> Result<Self> {
        let n = grid.n() as i64;
        let dim = grid.dim();
        let h = grid.n() / 2 + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.spectral_len()];
        let index = |m: [i64; 3]| -> usize {
            let mut idx = 0usize;
            for a in 0..dim - 1 {
                idx = idx * grid.n() + m[a].rem_euclid(n) as usize;
            }
            idx * h + m[dim - 1] as usize
        };
        for (m, c) in modes {
            if m[..dim].iter().any(|v| 2 * v.abs() >= n) {
                return Err(Error::Shape(format!("mode {m:?} outside band")));
            }
            let (m, c) = if m[dim - 1] < 0 {
                ([-m[0], -m[1], -m[2]], c.conj())
            } else {
                (*m, *c)
            };
            if m[dim - 1] == 0 {
                if m.iter().all(|v| *v == 0) {
                    coeffs[0] += Complex64::new(2.0 * c.re, 0.0);
                    continue;
                }
                coeffs[index(m)] += c;
                coeffs[index([-m[0], -m[1], -m[2]])] += c.conj();
            } else {
                coeffs[index(m)] += c;
            }
        }
        Self::from_spectrum(grid, coeffs)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_spectral(&self) -> bool {
        matches!(self.repr, Repr::Spectral(_))
    }

    pub fn is_finite(&self) -> bool {
        match &self.repr {
            Repr::Physical(v) => v.iter().all(|x| x.is_finite()),
            Repr::Spectral(c) => c.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
        }
    }

    /// Spectral copy of the field; rejects non-finite samples.
    pub fn to_spectral(&self) -> Result<Field> {
        if !self.is_finite() {
            return Err(Error::NonFinite("field transform input"));
        }
        Ok(Field {
            grid: self.grid,
            repr: Repr::Spectral(self.spectrum().into_owned()),
        })
    }

    pub fn to_physical(&self) -> Field {
        Field {
            grid: self.grid,
            repr: Repr::Physical(self.values().into_owned()),
        }
    }

    pub fn into_physical(self) -> Field {
        match self.repr {
            Repr::Physical(_) => self,
            Repr::Spectral(c) => Field {
                grid: self.grid,
                repr: Repr::Physical(plan(&self.grid).inverse(&c)),
            },
        }
    }

    pub fn into_spectral(self) -> Field {
        match self.repr {
            Repr::Spectral(_) => self,
            Repr::Physical(v) => Field {
                grid: self.grid,
                repr: Repr::Spectral(plan(&self.grid).forward(&v)),
            },
        }
    }

    /// Physical samples, transforming if needed.
    pub fn values(&self) -> Cow<'_, [f64]> {
        match &self.repr {
            Repr::Physical(v) => Cow::Borrowed(v),
            Repr::Spectral(c) => Cow::Owned(plan(&self.grid).inverse(c)),
        }
    }

    /// Half-complex Fourier coefficients, transforming if needed.
    pub fn spectrum(&self) -> Cow<'_, [Complex64]> {
        match &self.repr {
            Repr::Spectral(c) => Cow::Borrowed(c),
            Repr::Physical(v) => Cow::Owned(plan(&self.grid).forward(v)),
        }
    }

    /// Coefficient of the mode with signed integer numbers `m` (only the
    /// stored half; negative last-axis modes come from conjugate symmetry).
    pub fn coefficient(&self, m: [i64; 3]) -> Complex64 {
        let n = self.grid.n() as i64;
        let dim = self.grid.dim();
        let wrap = |v: i64| v.rem_euclid(n) as usize;
        let (m, conj) = if m[dim - 1] < 0 {
            ([-m[0], -m[1], -m[2]], true)
        } else {
            (m, false)
        };
        let h = self.grid.n() / 2 + 1;
        let last = wrap(m[dim - 1]);
        let mut idx = 0usize;
        for a in 0..dim - 1 {
            idx = idx * self.grid.n() + wrap(m[a]);
        }
        let c = self.spectrum()[idx * h + last];
        if conj {
            c.conj()
        } else {
            c
        }
    }

    /// Apply a Fourier multiplier, returning a spectral field.
    pub(crate) fn multiply(&self, symbol: impl Fn(&Modes, usize) -> Complex64) -> Field {
        let p = plan(&self.grid);
        let coeffs = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(i, c)| c * symbol(&p.modes, i))
            .collect();
        Field {
            grid: self.grid,
            repr: Repr::Spectral(coeffs),
        }
    }

    /// Linear combination `a·self + b·other` in the representation of `self`.
    pub fn axpby(&self, a: f64, other: &Field, b: f64) -> Result<Field> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let repr = match &self.repr {
            Repr::Physical(x) => {
                let y = other.values();
                Repr::Physical(x.iter().zip(y.iter()).map(|(x, y)| a * x + b * y).collect())
            }
            Repr::Spectral(x) => {
                let y = other.spectrum();
                Repr::Spectral(x.iter().zip(y.iter()).map(|(x, y)| x * a + y * b).collect())
            }
        };
        Ok(Field {
            grid: self.grid,
            repr,
        })
    }

    pub fn scale(&self, a: f64) -> Field {
        let repr = match &self.repr {
            Repr::Physical(x) => Repr::Physical(x.iter().map(|v| a * v).collect()),
            Repr::Spectral(x) => Repr::Spectral(x.iter().map(|v| v * a).collect()),
        };
        Field {
            grid: self.grid,
            repr,
        }
    }
}

/// `dim`-component vector field; all components share one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    comps: Vec<Field>,
}

impl VectorField {
    pub fn new(comps: Vec<Field>) -> Result<Self> {
        let Some(first) = comps.first() else {
            return Err(Error::Shape(
                "vector field needs at least one component".into(),
            ));
        };
        if comps.iter().any(|c| c.grid != first.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { comps })
    }

    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            comps: vec![Field::zeros(grid); ncomp],
        }
    }

    pub fn constant(grid: Grid, value: &[f64]) -> Self {
        Self {
            comps: value.iter().map(|v| Field::constant(grid, *v)).collect(),
        }
    }

    pub fn from_fn(grid: Grid, ncomp: usize, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let points: Vec<[f64; 3]> = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        let comps = (0..ncomp)
            .map(|c| Field {
                grid,
                repr: Repr::Physical(points.iter().map(|p| p[c]).collect()),
            })
            .collect();
        Self { comps }
    }

    pub fn grid(&self) -> &Grid {
        self.comps[0].grid()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> &[Field] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Field {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Field> {
        self.comps
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(Field::is_finite)
    }

    pub fn to_spectral(&self) -> Result<VectorField> {
        Ok(Self {
            comps: self
                .comps
                .iter()
                .map(Field::to_spectral)
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_physical(&self) -> VectorField {
        Self {
            comps: self.comps.iter().map(Field::to_physical).collect(),
        }
    }

    pub fn into_physical(self) -> VectorField {
        Self {
            comps: self.comps.into_iter().map(Field::into_physical).collect(),
        }
    }

    pub fn into_spectral(self) -> VectorField {
        Self {
            comps: self.comps.into_iter().map(Field::into_spectral).collect(),
        }
    }

    pub fn axpby(&self, a: f64, other: &VectorField, b: f64) -> Result<VectorField> {
        if self.len() != other.len() {
            return Err(Error::Shape("component count mismatch".into()));
        }
        Ok(Self {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(x, y)| x.axpby(a, y, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, a: f64) -> VectorField {
        Self {
            comps: self.comps.iter().map(|c| c.scale(a)).collect(),
        }
    }

    /// Pointwise Euclidean magnitude.
    pub fn magnitude(&self) -> Field {
        let vals: Vec<_> = self.comps.iter().map(Field::values).collect();
        let out = (0..self.grid().len())
            .map(|i| vals.iter().map(|v| v[i] * v[i]).sum::<f64>().sqrt())
            .collect();
        Field {
            grid: *self.grid(),
            repr: Repr::Physical(out),
        }
    }

    pub(crate) fn check_grid(&self, other: &VectorField) -> Result<()> {
        if self.grid() != other.grid() {
            Err(Error::GridMismatch)
        } else {
            Ok(())
        }
    }
}

/// Square matrix of fields, `entries[i][j]`.
#[derive(Clone, Debug)]
pub struct Tensor {
    entries: Vec<Vec<Field>>,
}

impl Tensor {
    pub(crate) fn new(entries: Vec<Vec<Field>>) -> Self {
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Field {
        &self.entries[i][j]
    }

    pub fn trace(&self) -> Result<Field> {
        let mut acc = self.entries[0][0].clone();
        for i in 1..self.size() {
            acc = acc.axpby(1.0, &self.entries[i][i], 1.0)?;
        }
        Ok(acc)
    }

    /// Squared Frobenius norm in L², `Σ_ij ∫ T_ij²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|f| super::norms::l2_norm_sq(f))
            .sum()
    }
}

/// Fields and vector fields that admit Fourier multipliers.
pub trait Spectral: Sized {
    fn grid(&self) -> &Grid;
    #[doc(hidden)]
    fn apply(&self, symbol: &dyn Fn(&Modes, usize) -> Complex64) -> Self;
}

impl Spectral for Field {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn apply(&self, symbol: &dyn Fn(&Modes, usize) -> Complex64) -> Self {
        self.multiply(symbol)
    }
}

impl Spectral for VectorField {
    fn grid(&self) -> &Grid {
        self.comps[0].grid()
    }

    fn apply(&self, symbol: &dyn Fn(&Modes, usize) -> Complex64) -> Self {
        Self {
            comps: self.comps.iter().map(|c| c.multiply(symbol)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: Grid, seed: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        Field::from_values(grid, values).unwrap()
    }

    fn rel_err(a: &[f64], b: &[f64]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
        let den: f64 = b.iter().map(|y| y * y).sum();
        (num / den).sqrt()
    }

    #[test]
    fn round_trip_and_parseval() {
        for (dim, n) in [(2, 8), (2, 64), (2, 128), (3, 8), (3, 32)] {
            let grid = Grid::standard(dim, n).unwrap();
            let f = random_field(grid, 7 + n as u64);
            let back = f.to_spectral().unwrap().to_physical();
            assert!(rel_err(&back.values(), &f.values()) < 1e-12, "{dim}D n={n}");

            let spec = f.to_spectral().unwrap();
            let parseval = super::super::norms::l2_norm_sq(&spec);
            let quad = super::super::norms::l2_norm_sq(&f);
            assert!((parseval - quad).abs() / quad < 1e-12);
        }
    }

    #[test]
    fn constant_maps_to_mean_mode() {
        let grid = Grid::standard(2, 16).unwrap();
        let f = Field::constant(grid, 2.5).to_spectral().unwrap();
        let c = f.spectrum();
        assert!((c[0].re - 2.5).abs() < 1e-14 && c[0].im.abs() < 1e-14);
        assert!(c[1..].iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn sine_has_two_modes() {
        let grid = Grid::standard(2, 32).unwrap();
        let f = Field::from_fn(grid, |x| x[0].sin());
        for m0 in -15..=16 {
            for m1 in -15..=16 {
                let c = f.coefficient([m0, m1, 0]);
                if (m0, m1) == (1, 0) {
                    assert!((c - Complex64::new(0.0, -0.5)).norm() < 1e-14);
                } else if (m0, m1) == (-1, 0) {
                    assert!((c - Complex64::new(0.0, 0.5)).norm() < 1e-14);
                } else {
                    assert!(c.norm() < 1e-14, "mode {m0},{m1}: {c}");
                }
            }
        }
    }

    #[test]
    fn conjugate_symmetry_on_self_conjugate_planes() {
        let grid = Grid::standard(3, 8).unwrap();
        let f = random_field(grid, 3);
        for m0 in -3..=4i64 {
            for m1 in -3..=4i64 {
                let a = f.coefficient([m0, m1, 0]);
                let b = f.coefficient([-m0, -m1, 0]);
                assert!((a - b.conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_finite() {
        let grid = Grid::standard(2, 8).unwrap();
        let mut v = vec![0.0; grid.len()];
        v[3] = f64::NAN;
        let f = Field::from_values(grid, v).unwrap();
        assert!(matches!(f.to_spectral(), Err(Error::NonFinite(_))));
    }

    #[test]
    fn vector_field_rejects_mixed_grids() {
        let a = Field::zeros(Grid::standard(2, 8).unwrap());
        let b = Field::zeros(Grid::standard(2, 16).unwrap());
        assert!(matches!(
            VectorField::new(vec![a, b]),
            Err(Error::GridMismatch)
        ));
    }
}
