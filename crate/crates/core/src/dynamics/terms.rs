//! Nonlinear terms of the liquid-crystal system. Products are formed on the
//! grid and, when requested, truncated with the 2/3 rule.

use super::params::{Model, SimParams, SimState};
use crate::error::{Error, Result};
use crate::fields::{
    dealias, derivative, helmholtz_inverse, jacobian, leray_project, Field, Grid, VectorField,
};

/// Physical samples of `∂_j v_i`, indexed `[i][j]`.
pub(crate) type Gradient = Vec<Vec<Vec<f64>>>;

pub(crate) fn physical_gradient(v: &VectorField) -> Gradient {
    let j = jacobian(&v.clone().into_spectral());
    let dim = v.grid().dim();
    (0..v.len())
        .map(|i| {
            (0..dim)
                .map(|k| j.get(i, k).values().into_owned())
                .collect()
        })
        .collect()
}

fn component_values(v: &VectorField) -> Vec<Vec<f64>> {
    v.comps().iter().map(|c| c.values().into_owned()).collect()
}

fn spectral(grid: Grid, values: Vec<f64>, truncate: bool) -> Field {
    let f = Field::from_values(grid, values)
        .expect("sample count fixed by grid")
        .into_spectral();
    if truncate {
        dealias(&f)
    } else {
        f
    }
}

fn vector(comps: Vec<Field>) -> VectorField {
    VectorField::new(comps).expect("components share one grid")
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::param(
            "epsilon",
            format!("must be > 0, got {epsilon}"),
        ))
    }
}

/// Ginzburg–Landau force `f(d) = ε⁻²(|d|² − 1) d`, evaluated pointwise.
pub fn gl_force(d: &VectorField, epsilon: f64, truncate: bool) -> Result<VectorField> {
    check_epsilon(epsilon)?;
    let vals = component_values(d);
    Ok(gl_force_from(*d.grid(), &vals, epsilon, truncate))
}

fn gl_force_from(grid: Grid, d: &[Vec<f64>], epsilon: f64, truncate: bool) -> VectorField {
    let inv = 1.0 / (epsilon * epsilon);
    let coef: Vec<f64> = (0..grid.len())
        .map(|p| {
            let m2: f64 = d.iter().map(|c| c[p] * c[p]).sum();
            inv * (m2 - 1.0)
        })
        .collect();
    let comps = d
        .iter()
        .map(|c| {
            let vals = c.iter().zip(&coef).map(|(x, s)| s * x).collect();
            if truncate {
                spectral(grid, vals, true)
            } else {
                Field::from_values(grid, vals).expect("sample count fixed by grid")
            }
        })
        .collect();
    vector(comps)
}

/// `∫ F(d)`, with `F(d) = (|d|² − 1)² / (4ε²)`.
pub fn gl_potential(d: &VectorField, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let vals = component_values(d);
    let grid = d.grid();
    let scale = 0.25 / (epsilon * epsilon);
    let sum: f64 = (0..grid.len())
        .map(|p| {
            let m2: f64 = vals.iter().map(|c| c[p] * c[p]).sum();
            (m2 - 1.0) * (m2 - 1.0)
        })
        .sum();
    Ok(scale * sum * grid.cell_volume())
}

/// Componentwise transport `(u·∇)w`.
pub fn advect(u: &VectorField, w: &VectorField, truncate: bool) -> Result<VectorField> {
    u.check_grid(w)?;
    if u.len() != u.grid().dim() {
        return Err(Error::Shape(
            "advecting velocity needs dim components".into(),
        ));
    }
    let uv = component_values(u);
    let gw = physical_gradient(w);
    Ok(advect_from(*u.grid(), &uv, &gw, truncate))
}

fn advect_from(grid: Grid, u: &[Vec<f64>], grad_w: &Gradient, truncate: bool) -> VectorField {
    let comps = grad_w
        .iter()
        .map(|gi| {
            let vals = (0..grid.len())
                .map(|p| u.iter().zip(gi).map(|(uj, g)| uj[p] * g[p]).sum())
                .collect();
            spectral(grid, vals, truncate)
        })
        .collect();
    vector(comps)
}

/// `∂_i T_ij` (contraction on the first index).
fn div_first(grid: Grid, t: &[Vec<Field>]) -> VectorField {
    let dim = grid.dim();
    let comps = (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| derivative(&t[i][j], i))
                .reduce(|a, b| a.axpby(1.0, &b, 1.0).expect("shared grid"))
                .expect("dim >= 2")
        })
        .collect();
    vector(comps)
}

/// `∂_j T_ij` (contraction on the second index).
fn div_second(grid: Grid, t: &[Vec<Field>]) -> VectorField {
    let dim = grid.dim();
    let comps = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| derivative(&t[i][j], j))
                .reduce(|a, b| a.axpby(1.0, &b, 1.0).expect("shared grid"))
                .expect("dim >= 2")
        })
        .collect();
    vector(comps)
}

/// `Div(∇dᵀ·∇d)` with components `∂_i (∂_i d^k ∂_j d^k)`. The elastic
/// constant is applied by the caller.
pub fn elastic_stress_div(d: &VectorField, truncate: bool) -> VectorField {
    let gd = physical_gradient(d);
    stress_div_from(*d.grid(), &gd, truncate)
}

fn stress_div_from(grid: Grid, gd: &Gradient, truncate: bool) -> VectorField {
    let dim = grid.dim();
    let mut t: Vec<Vec<Option<Field>>> = vec![vec![None; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let vals = (0..grid.len())
                .map(|p| gd.iter().map(|gk| gk[i][p] * gk[j][p]).sum())
                .collect();
            let f = spectral(grid, vals, truncate);
            t[j][i] = Some(f.clone());
            t[i][j] = Some(f);
        }
    }
    let t: Vec<Vec<Field>> = t
        .into_iter()
        .map(|row| row.into_iter().map(|f| f.expect("filled")).collect())
        .collect();
    div_first(grid, &t)
}

/// Index contraction used for the divergence inside the averaging term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Contraction {
    #[cfg_attr(not(test), allow(dead_code))]
    First,
    Second,
}

/// Contraction that makes the inviscid averaged flow conserve its modified
/// kinetic energy (see the energy-conservation tests).
pub(crate) const LANS_CONTRACTION: Contraction = Contraction::Second;

/// Sign of `U^α` on the right-hand side of `u_t = …`.
pub(crate) const LANS_SIGN: f64 = -1.0;

/// `U^α(u) = α²(1 − α²Δ)⁻¹ Div[∇u·∇uᵀ + ∇u·∇u − ∇uᵀ·∇u]` with
/// `(∇u)_ij = ∂_j u_i`.
pub fn lans_correction(u: &VectorField, alpha: f64, truncate: bool) -> Result<VectorField> {
    if !(alpha >= 0.0) {
        return Err(Error::param("alpha", format!("must be >= 0, got {alpha}")));
    }
    if u.len() != u.grid().dim() {
        return Err(Error::Shape("velocity needs dim components".into()));
    }
    let gu = physical_gradient(u);
    lans_from(*u.grid(), &gu, alpha, truncate, LANS_CONTRACTION)
}

pub(crate) fn lans_from(
    grid: Grid,
    g: &Gradient,
    alpha: f64,
    truncate: bool,
    contraction: Contraction,
) -> Result<VectorField> {
    let dim = grid.dim();
    if alpha == 0.0 {
        return Ok(VectorField::zeros(grid, dim).into_spectral());
    }
    let t: Vec<Vec<Field>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let vals = (0..grid.len())
                        .map(|p| {
                            (0..dim)
                                .map(|k| {
                                    // (G Gᵀ)_ij + (G G)_ij − (Gᵀ G)_ij
                                    g[i][k][p] * g[j][k][p] + g[i][k][p] * g[k][j][p]
                                        - g[k][i][p] * g[k][j][p]
                                })
                                .sum()
                        })
                        .collect();
                    spectral(grid, vals, truncate)
                })
                .collect()
        })
        .collect();
    let div = match contraction {
        Contraction::First => div_first(grid, &t),
        Contraction::Second => div_second(grid, &t),
    };
    let filtered = helmholtz_inverse(&div, alpha)?;
    Ok(filtered.scale(alpha * alpha))
}

/// Explicit parts of both evolution equations, sharing the gradients.
pub(crate) struct Explicit {
    pub momentum: VectorField,
    pub director: VectorField,
    pub u_hat: VectorField,
    pub d_hat: VectorField,
}

pub(crate) fn explicit_terms(state: &SimState, p: &SimParams) -> Result<Explicit> {
    let grid = *state.grid();
    let tr = p.dealias;
    let u = component_values(&state.u);
    let d = component_values(&state.d);
    let u_hat = state.u.to_spectral()?;
    let d_hat = state.d.to_spectral()?;
    let gu = physical_gradient(&u_hat);
    let gd = physical_gradient(&d_hat);

    let mut mom = advect_from(grid, &u, &gu, tr).scale(-1.0);
    if p.lambda != 0.0 {
        let mut stress = stress_div_from(grid, &gd, tr);
        if p.model == Model::LcAlpha {
            stress = helmholtz_inverse(&stress, p.alpha)?;
        }
        mom = mom.axpby(1.0, &stress, -p.lambda)?;
    }
    if p.model == Model::LcAlpha && p.alpha > 0.0 {
        let corr = lans_from(grid, &gu, p.alpha, tr, LANS_CONTRACTION)?;
        mom = mom.axpby(1.0, &corr, LANS_SIGN)?;
    }
    let momentum = leray_project(&mom)?;

    let adv = advect_from(grid, &u, &gd, tr);
    let gl = gl_force_from(grid, &d, p.epsilon, tr).into_spectral();
    let director = adv.axpby(-1.0, &gl, -p.gamma)?;

    let ok = momentum.is_finite() && director.is_finite();
    if !ok {
        return Err(Error::BlowUp {
            t: state.t,
            reason: "non-finite explicit terms".into(),
        });
    }
    Ok(Explicit {
        momentum,
        director,
        u_hat,
        d_hat,
    })
}

/// Explicit (non-stiff) part of `du/dt`; viscosity is left to the implicit
/// solve in [`super::step`].
pub fn momentum_rhs(state: &SimState, params: &SimParams) -> Result<VectorField> {
    Ok(explicit_terms(state, params)?.momentum)
}

/// Explicit part of `dd/dt`: `-(u·∇)d - γ f(d)`; `γΔd` is implicit.
pub fn director_rhs(state: &SimState, params: &SimParams) -> Result<VectorField> {
    Ok(explicit_terms(state, params)?.director)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{helmholtz, l2_inner};

    #[test]
    fn averaged_energy_rate_vanishes_for_chosen_convention() {
        let g = Grid::standard(3, 16).unwrap();
        let s = crate::dynamics::random_seeded(g, 3);
        let alpha = 0.5;
        let uh = s.u.to_spectral().unwrap();
        let gu = physical_gradient(&uh);
        let u = component_values(&s.u);
        let adv = leray_project(&advect_from(g, &u, &gu, false)).unwrap();
        let w = helmholtz(&uh, alpha).unwrap();
        let rate = |c, sign: f64| {
            let l = leray_project(&lans_from(g, &gu, alpha, false, c).unwrap()).unwrap();
            -l2_inner(&w, &adv).unwrap() + sign * l2_inner(&w, &l).unwrap()
        };
        let scale = l2_inner(&w, &adv).unwrap().abs();
        assert!(scale > 1e-3);
        assert!(rate(LANS_CONTRACTION, LANS_SIGN).abs() < 1e-12 * scale.max(1.0));
        for (c, sign) in [
            (Contraction::First, 1.0),
            (Contraction::First, -1.0),
            (Contraction::Second, -LANS_SIGN),
        ] {
            assert!(rate(c, sign).abs() > 0.1 * scale);
        }
    }

    fn g2(n: usize) -> Grid {
        Grid::standard(2, n).unwrap()
    }

    fn max_diff(a: &VectorField, b: &VectorField) -> f64 {
        a.comps()
            .iter()
            .zip(b.comps())
            .flat_map(|(x, y)| {
                let (x, y) = (x.values().into_owned(), y.values().into_owned());
                x.into_iter()
                    .zip(y)
                    .map(|(p, q)| (p - q).abs())
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }

    fn state(u: VectorField, d: VectorField) -> SimState {
        SimState::new(0.0, u, d).unwrap()
    }

    #[test]
    fn gl_force_examples() {
        let g = g2(16);
        let d = VectorField::constant(g, &[2.0, 0.0]);
        let f = gl_force(&d, 1.0, true).unwrap();
        assert!(max_diff(&f, &VectorField::constant(g, &[6.0, 0.0])) < 1e-12);
        let unit = VectorField::from_fn(g, 2, |p| [p[0].cos(), p[0].sin(), 0.0]);
        assert!(
            max_diff(
                &gl_force(&unit, 0.1, false).unwrap(),
                &VectorField::zeros(g, 2)
            ) < 1e-12
        );
        assert!(gl_force(&d, 0.0, true).is_err());
    }

    #[test]
    fn gl_potential_examples() {
        let g = g2(16);
        let zero = VectorField::zeros(g, 2);
        let v = gl_potential(&zero, 1.0).unwrap();
        assert!((v - std::f64::consts::PI.powi(2)).abs() < 1e-12);
        let unit = VectorField::constant(g, &[0.6, 0.8]);
        assert!(gl_potential(&unit, 0.1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn advect_examples() {
        let g = g2(32);
        let u = VectorField::constant(g, &[1.0, 0.0]);
        let w = VectorField::from_fn(g, 2, |p| [p[0].sin(), 0.0, 0.0]);
        let expect = VectorField::from_fn(g, 2, |p| [p[0].cos(), 0.0, 0.0]);
        assert!(max_diff(&advect(&u, &w, true).unwrap(), &expect) < 1e-12);
        let zero = VectorField::zeros(g, 2);
        assert!(max_diff(&advect(&zero, &w, true).unwrap(), &zero) < 1e-14);
        let c = VectorField::constant(g, &[0.3, -2.0]);
        assert!(max_diff(&advect(&u, &c, true).unwrap(), &zero) < 1e-14);
        let other = VectorField::zeros(g2(16), 2);
        assert!(advect(&u, &other, true).is_err());
    }

    #[test]
    fn stress_examples() {
        let g = g2(32);
        let d = VectorField::from_fn(g, 2, |p| [p[0].sin(), 0.0, 0.0]);
        let expect = VectorField::from_fn(g, 2, |p| [-(2.0 * p[0]).sin(), 0.0, 0.0]);
        assert!(max_diff(&elastic_stress_div(&d, true), &expect) < 1e-12);
        let c = VectorField::constant(g, &[1.0, 0.0]);
        assert!(max_diff(&elastic_stress_div(&c, true), &VectorField::zeros(g, 2)) < 1e-14);
    }

    #[test]
    fn momentum_examples() {
        let g = g2(32);
        let p = SimParams::default();
        let tg = crate::dynamics::taylor_green_uniform_d(g);
        let m = momentum_rhs(&tg, &p).unwrap();
        assert!(max_diff(&m, &VectorField::zeros(g, 2)) < 1e-12);

        let d = VectorField::from_fn(g, 2, |p| [p[0].sin(), 0.0, 0.0]);
        let s = state(VectorField::zeros(g, 2), d.clone());
        let m = momentum_rhs(&s, &p).unwrap();
        let expect = leray_project(&elastic_stress_div(&d, true))
            .unwrap()
            .scale(-1.0);
        assert!(max_diff(&m, &expect) < 1e-12);
        // a function of x only is a gradient, so the projection removes it
        assert!(max_diff(&m, &VectorField::zeros(g, 2)) < 1e-12);
    }

    #[test]
    fn director_examples() {
        let g = g2(32);
        let zero = VectorField::zeros(g, 2);
        let p = SimParams {
            epsilon: 1.0,
            ..SimParams::default()
        };
        let s = state(zero.clone(), VectorField::constant(g, &[0.0, 1.0]));
        assert!(max_diff(&director_rhs(&s, &p).unwrap(), &zero) < 1e-14);
        let s = state(zero.clone(), VectorField::constant(g, &[2.0, 0.0]));
        let expect = VectorField::constant(g, &[-6.0, 0.0]);
        assert!(max_diff(&director_rhs(&s, &p).unwrap(), &expect) < 1e-12);

        let u = VectorField::constant(g, &[1.0, 0.0]);
        let d = VectorField::from_fn(g, 2, |p| [p[0].sin(), 0.0, 0.0]);
        let p = SimParams {
            epsilon: 1e4,
            ..SimParams::default()
        };
        let expect = VectorField::from_fn(g, 2, |p| [-p[0].cos(), 0.0, 0.0]);
        assert!(max_diff(&director_rhs(&state(u, d), &p).unwrap(), &expect) < 1e-7);
    }

    #[test]
    fn lans_trivial_cases() {
        let g = g2(16);
        let c = VectorField::constant(g, &[1.0, -0.5]);
        let zero = VectorField::zeros(g, 2);
        assert!(max_diff(&lans_correction(&c, 0.5, true).unwrap(), &zero) < 1e-14);
        let tg = crate::dynamics::taylor_green_uniform_d(g);
        assert!(max_diff(&lans_correction(&tg.u, 0.0, true).unwrap(), &zero) == 0.0);
        assert!(lans_correction(&tg.u, -1.0, true).is_err());
    }
}
