use crate::error::{Error, Result};
use crate::fields::{curl, divergence, Field, VectorField};

/// Oseen–Frank energy `∫ κ₁(div d)² + κ₂|d × curl d|² + κ₃(d·curl d)²`.
/// A two-component director on a 2D grid is embedded with `d₃ = 0`.
pub fn frank_energy(d: &VectorField, k1: f64, k2: f64, k3: f64) -> Result<f64> {
    for (name, k) in [("k1", k1), ("k2", k2), ("k3", k3)] {
        if !(k >= 0.0) {
            return Err(Error::param(name, format!("must be >= 0, got {k}")));
        }
    }
    let grid = *d.grid();
    let d3 = match (grid.dim(), d.len()) {
        (_, 3) => d.to_physical(),
        (2, 2) => {
            let mut comps = d.to_physical().into_comps();
            comps.push(Field::zeros(grid));
            VectorField::new(comps)?
        }
        (dim, n) => {
            return Err(Error::Shape(format!(
                "director with {n} components on a {dim}D grid"
            )))
        }
    };
    let div = if grid.dim() == 2 {
        let planar = VectorField::new(d3.comps()[..2].to_vec())?;
        divergence(&planar)?
    } else {
        divergence(&d3)?
    };
    let div = div.values().into_owned();
    let w = curl(&d3)?.into_physical();
    let w: Vec<_> = w.comps().iter().map(|c| c.values().into_owned()).collect();
    let v: Vec<_> = d3.comps().iter().map(|c| c.values().into_owned()).collect();

    let sum: f64 = (0..grid.len())
        .map(|p| {
            let a = [v[0][p], v[1][p], v[2][p]];
            let b = [w[0][p], w[1][p], w[2][p]];
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            let cross2: f64 = cross.iter().map(|c| c * c).sum();
            k1 * div[p] * div[p] + k2 * cross2 + k3 * dot * dot
        })
        .sum();
    Ok(sum * grid.cell_volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;
    use std::f64::consts::PI;

    #[test]
    fn twist_director() {
        let g = Grid::standard(3, 16).unwrap();
        let d = VectorField::from_fn(g, 3, |p| [p[2].cos(), p[2].sin(), 0.0]);
        let e = frank_energy(&d, 0.3, 0.7, 2.0).unwrap();
        assert!((e - 2.0 * 8.0 * PI.powi(3)).abs() < 1e-10);
    }

    #[test]
    fn constant_and_errors() {
        let g = Grid::standard(2, 16).unwrap();
        let d = VectorField::constant(g, &[0.6, 0.8]);
        assert!(frank_energy(&d, 1.0, 1.0, 1.0).unwrap().abs() < 1e-20);
        assert!(frank_energy(&d, -1.0, 1.0, 1.0).is_err());
        let bad = VectorField::constant(g, &[1.0]);
        assert!(frank_energy(&bad, 1.0, 1.0, 1.0).is_err());
    }
}
