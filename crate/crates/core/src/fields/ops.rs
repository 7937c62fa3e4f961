//! Spectral differential operators. All derivatives are exact Fourier
//! multipliers with the Nyquist component of `k` removed.

use num_complex::Complex64;

use super::field::{Field, Spectral, Tensor, VectorField};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn derivative(f: &Field, axis: usize) -> Field {
    f.multiply(|m, i| I * m.k[i][axis])
}

pub fn gradient(f: &Field) -> VectorField {
    let comps = (0..f.grid().dim()).map(|j| derivative(f, j)).collect();
    VectorField::new(comps).expect("components share one grid")
}

/// `J[i][j] = ∂_j v_i`.
pub fn jacobian(v: &VectorField) -> Tensor {
    let dim = v.grid().dim();
    Tensor::new(
        v.comps()
            .iter()
            .map(|c| (0..dim).map(|j| derivative(c, j)).collect())
            .collect(),
    )
}

fn check_dim(v: &VectorField) -> Result<()> {
    if v.len() != v.grid().dim() {
        return Err(Error::Shape(format!(
            "expected {} components, got {}",
            v.grid().dim(),
            v.len()
        )));
    }
    Ok(())
}

pub fn divergence(v: &VectorField) -> Result<Field> {
    check_dim(v)?;
    let specs: Vec<_> = v.comps().iter().map(Field::spectrum).collect();
    let grid = *v.grid();
    let modes = &super::transform::plan(&grid).modes;
    let coeffs = (0..grid.spectral_len())
        .map(|i| {
            specs
                .iter()
                .enumerate()
                .map(|(j, s)| I * modes.k[i][j] * s[i])
                .sum()
        })
        .collect();
    Field::from_spectrum(grid, coeffs)
}

pub fn laplacian(f: &Field) -> Field {
    f.multiply(|m, i| real(-m.k2[i]))
}

/// Componentwise Laplacian.
pub fn vector_laplacian(v: &VectorField) -> VectorField {
    v.apply(&|m, i| real(-m.k2[i]))
}

/// L²-orthogonal projection onto divergence-free fields, mode-wise
/// `(I - k kᵀ/|k|²)`; the mean mode passes through unchanged.
pub fn leray_project(v: &VectorField) -> Result<VectorField> {
    check_dim(v)?;
    let grid = *v.grid();
    let dim = grid.dim();
    let modes = &super::transform::plan(&grid).modes;
    let specs: Vec<Vec<Complex64>> = v
        .comps()
        .iter()
        .map(|c| c.spectrum().into_owned())
        .collect();
    let mut out = specs.clone();
    for i in 0..grid.spectral_len() {
        let k2 = modes.k2[i];
        if k2 == 0.0 {
            continue;
        }
        let k = modes.k[i];
        let kdotu: Complex64 = (0..dim).map(|j| specs[j][i] * k[j]).sum();
        for (j, comp) in out.iter_mut().enumerate() {
            comp[i] -= kdotu * (k[j] / k2);
        }
    }
    VectorField::new(
        out.into_iter()
            .map(|c| Field::from_spectrum(grid, c))
            .collect::<Result<_>>()?,
    )
}

/// `(1 - α²Δ)^{-1}` as the multiplier `1/(1 + α²|k|²)`.
pub fn helmholtz_inverse<T: Spectral>(f: &T, alpha: f64) -> Result<T> {
    if !(alpha >= 0.0) {
        return Err(Error::param("alpha", format!("must be >= 0, got {alpha}")));
    }
    let a2 = alpha * alpha;
    Ok(f.apply(&|m, i| real(1.0 / (1.0 + a2 * m.k2[i]))))
}

/// `(1 - α²Δ)` as the multiplier `1 + α²|k|²`.
pub fn helmholtz<T: Spectral>(f: &T, alpha: f64) -> Result<T> {
    if !(alpha >= 0.0) {
        return Err(Error::param("alpha", format!("must be >= 0, got {alpha}")));
    }
    let a2 = alpha * alpha;
    Ok(f.apply(&|m, i| real(1.0 + a2 * m.k2[i])))
}

/// 2/3-rule truncation: zero every mode with some `|k_j| > n/3 · 2π/L`.
pub fn dealias<T: Spectral>(f: &T) -> T {
    f.apply(&|m, i| if m.kept[i] { real(1.0) } else { real(0.0) })
}

/// `Def u = ½(∇u + ∇uᵀ)`.
pub fn def_tensor(u: &VectorField) -> Result<Tensor> {
    check_dim(u)?;
    let j = jacobian(u);
    let dim = u.grid().dim();
    let entries = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| j.get(a, b).axpby(0.5, j.get(b, a), 0.5))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Tensor::new(entries))
}

/// Curl of a 3-vector field; planar fields are treated as independent of z.
pub fn curl(v: &VectorField) -> Result<VectorField> {
    if v.len() != 3 {
        return Err(Error::Shape("curl needs three components".into()));
    }
    let dim = v.grid().dim();
    let d = |c: usize, axis: usize| -> Field {
        if axis < dim {
            derivative(v.comp(c), axis)
        } else {
            Field::zeros(*v.grid()).into_spectral()
        }
    };
    VectorField::new(vec![
        d(2, 1).axpby(1.0, &d(1, 2), -1.0)?,
        d(0, 2).axpby(1.0, &d(2, 0), -1.0)?,
        d(1, 0).axpby(1.0, &d(0, 1), -1.0)?,
    ])
}
