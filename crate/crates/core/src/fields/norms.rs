//! Quadrature norms and inner products.

use super::field::{Field, VectorField};
use super::transform::plan;
use crate::error::{Error, Result};

/// Anything made of scalar components on one grid; norms use the pointwise
/// Euclidean magnitude across components.
pub trait Components {
    fn components(&self) -> Vec<&Field>;
}

impl Components for Field {
    fn components(&self) -> Vec<&Field> {
        vec![self]
    }
}

impl Components for VectorField {
    fn components(&self) -> Vec<&Field> {
        self.comps().iter().collect()
    }
}

/// `∫ f²`, by Parseval for spectral fields and by quadrature otherwise.
pub(crate) fn l2_norm_sq(f: &Field) -> f64 {
    let grid = f.grid();
    if f.is_spectral() {
        let modes = &plan(grid).modes;
        let s = f.spectrum();
        grid.volume()
            * s.iter()
                .zip(&modes.weight)
                .map(|(c, w)| w * c.norm_sqr())
                .sum::<f64>()
    } else {
        grid.cell_volume() * f.values().iter().map(|x| x * x).sum::<f64>()
    }
}

/// Discrete `L^p` norm for `p ∈ {2, 4, 8, ∞}` (pass `f64::INFINITY`).
pub fn lp_norm<T: Components>(f: &T, p: f64) -> Result<f64> {
    let comps = f.components();
    if p == 2.0 {
        return Ok(comps.iter().map(|c| l2_norm_sq(c)).sum::<f64>().sqrt());
    }
    if p != 4.0 && p != 8.0 && p != f64::INFINITY {
        return Err(Error::param("p", format!("unsupported exponent {p}")));
    }
    let grid = *comps[0].grid();
    let vals: Vec<_> = comps.iter().map(|c| c.values()).collect();
    let mag2 = (0..grid.len()).map(|i| vals.iter().map(|v| v[i] * v[i]).sum::<f64>());
    if p == f64::INFINITY {
        return Ok(mag2.fold(0.0, f64::max).sqrt());
    }
    let half = p / 2.0;
    let sum: f64 = mag2.map(|m| m.powf(half)).sum();
    Ok((grid.cell_volume() * sum).powf(1.0 / p))
}

/// `⟨a, b⟩ = Σ_c ∫ a_c b_c`.
pub fn l2_inner<T: Components>(a: &T, b: &T) -> Result<f64> {
    let (ca, cb) = (a.components(), b.components());
    if ca.len() != cb.len() {
        return Err(Error::Shape("component count mismatch".into()));
    }
    let mut acc = 0.0;
    for (x, y) in ca.iter().zip(&cb) {
        if x.grid() != y.grid() {
            return Err(Error::GridMismatch);
        }
        let (xv, yv) = (x.values(), y.values());
        acc += xv.iter().zip(yv.iter()).map(|(p, q)| p * q).sum::<f64>();
    }
    Ok(acc * ca[0].grid().cell_volume())
}

/// `|D^s f| = (∫ | |k|^s f̂ |²)^{1/2}` summed over components.
pub fn hs_seminorm<T: Components>(f: &T, s: u32) -> f64 {
    let comps = f.components();
    let grid = comps[0].grid();
    let modes = &plan(grid).modes;
    let sum: f64 = comps
        .iter()
        .map(|c| {
            c.spectrum()
                .iter()
                .enumerate()
                .map(|(i, z)| modes.weight[i] * modes.k2[i].powi(s as i32) * z.norm_sqr())
                .sum::<f64>()
        })
        .sum();
    (grid.volume() * sum).sqrt()
}

/// Full Sobolev norm `|f|_s = (Σ_{j≤s} |D^j f|²)^{1/2}`.
pub fn hs_norm<T: Components>(f: &T, s: u32) -> f64 {
    (0..=s)
        .map(|j| hs_seminorm(f, j).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;
    use std::f64::consts::PI;

    #[test]
    fn sine_norms() {
        let g = Grid::standard(2, 32).unwrap();
        let s = Field::from_fn(g, |x| x[0].sin());
        let want = (2.0 * PI * PI).sqrt();
        assert!((lp_norm(&s, 2.0).unwrap() - want).abs() < 1e-12);
        assert!((lp_norm(&s.to_spectral().unwrap(), 2.0).unwrap() - want).abs() < 1e-12);
        // ∫ sin⁴ over the 2-torus = (3/8)·4π²
        let l4 = (1.5 * PI * PI).powf(0.25);
        assert!((lp_norm(&s, 4.0).unwrap() - l4).abs() < 1e-12);
        assert!((lp_norm(&s, f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        assert!((hs_seminorm(&s, 1) - want).abs() < 1e-12);
        assert!((hs_seminorm(&s, 3) - want).abs() < 1e-12);
        // |sin|_2² = 3·2π² (orders 0, 1, 2 each contribute 2π²)
        assert!((hs_norm(&s, 2) - (3.0_f64).sqrt() * want).abs() < 1e-12);
    }

    #[test]
    fn constant_and_orthogonality() {
        let g = Grid::standard(2, 16).unwrap();
        let one = Field::constant(g, 1.0);
        assert_eq!(lp_norm(&one, f64::INFINITY).unwrap(), 1.0);
        assert!(hs_seminorm(&one, 2) < 1e-14);
        let s = Field::from_fn(g, |x| x[0].sin());
        let c = Field::from_fn(g, |x| x[0].cos());
        assert!(l2_inner(&s, &c).unwrap().abs() < 1e-13);
    }

    #[test]
    fn unsupported_exponent() {
        let g = Grid::standard(2, 8).unwrap();
        assert!(lp_norm(&Field::zeros(g), 3.0).is_err());
        assert!(lp_norm(&Field::zeros(g), 1.0).is_err());
    }

    #[test]
    fn vector_norm_uses_magnitude() {
        let g = Grid::standard(2, 16).unwrap();
        let v = VectorField::from_fn(g, 2, |x| [x[0].cos(), x[0].sin(), 0.0]);
        assert!((lp_norm(&v, f64::INFINITY).unwrap() - 1.0).abs() < 1e-14);
        assert!((lp_norm(&v, 8.0).unwrap() - g.volume().powf(1.0 / 8.0)).abs() < 1e-12);
    }
}
