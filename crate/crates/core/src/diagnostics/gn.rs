//! Empirical ratios for the Agmon, Ladyzhenskaya and Gagliardo–Nirenberg
//! type interpolation inequalities on the 2-torus.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fields::{hs_norm, hs_seminorm, lp_norm, Field, Grid};

const BINS: usize = 20;
const MAX_BAND: i64 = 6;

/// Summary of one ratio family over all usable samples.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioStats {
    pub name: &'static str,
    pub max: f64,
    /// Samples whose denominator vanished.
    pub skipped: usize,
    /// Counts over `BINS` equal bins on `[0, max]`.
    pub histogram: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GnReport {
    pub n: usize,
    pub samples: usize,
    /// Identically zero samples.
    pub zero_fields: usize,
    pub families: Vec<RatioStats>,
}

impl GnReport {
    pub fn family(&self, name: &str) -> Option<&RatioStats> {
        self.families.iter().find(|f| f.name == name)
    }
}

const NAMES: [&str; 6] = [
    "agmon",
    "ladyzhenskaya",
    "interp_1_2",
    "interp_1_3",
    "interp_2_3",
    "l8",
];

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0 && den.is_finite()).then(|| num / den)
}

/// All six ratios for one field, `None` where the denominator vanishes.
pub(crate) fn ratios(v: &Field) -> Result<[Option<f64>; 6]> {
    let l2 = lp_norm(v, 2.0)?;
    let d = |m: u32| hs_seminorm(v, m);
    let interp = |i: u32, m: u32| {
        let (i, m) = (i as f64, m as f64);
        ratio(d(i as u32), l2.powf(1.0 - i / m) * d(m as u32).powf(i / m))
    };
    Ok([
        ratio(lp_norm(v, f64::INFINITY)?, (d(2) * l2).sqrt()),
        ratio(lp_norm(v, 4.0)?, (d(1) * l2).sqrt()),
        interp(1, 2),
        interp(1, 3),
        interp(2, 3),
        ratio(
            lp_norm(v, 8.0)?,
            l2.powf(5.0 / 8.0) * hs_norm(v, 2).powf(3.0 / 8.0),
        ),
    ])
}

/// Random zero-mean scalar field: Gaussian coefficients on `0 < |m|_∞ ≤ K`
/// with a random band `K ≤ 6` and a random spectral slope, so samples range
/// from single-scale to broadband.
fn sample(grid: Grid, rng: &mut ChaCha8Rng) -> Result<Field> {
    let band = rng.random_range(1..=MAX_BAND).min(grid.n() as i64 / 2 - 1);
    let slope: f64 = rng.random_range(0.0..3.0);
    let mut modes = Vec::new();
    for a in -MAX_BAND..=MAX_BAND {
        for b in -MAX_BAND..=MAX_BAND {
            if (a, b) <= (0, 0) && !(a == 0 && b > 0) {
                continue;
            }
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            if a.abs() > band || b.abs() > band {
                continue;
            }
            let k2 = (a * a + b * b) as f64;
            let amp = (1.0 + k2).powf(-0.5 * slope);
            modes.push(([a, b, 0], Complex64::new(re, im) * amp));
        }
    }
    Ok(Field::from_modes(grid, &modes)?.into_physical())
}

/// Evaluates the interpolation ratios on `samples` seeded random fields on
/// the 2π 2-torus with `n` points per axis. The sequence of fields depends
/// only on `seed`, so reports at different `n` see the same functions.
pub fn gn_probe(dim: usize, n: usize, samples: usize, seed: u64) -> Result<GnReport> {
    if dim != 2 {
        return Err(Error::param("dim", "the probe is defined for dim = 2"));
    }
    if samples == 0 {
        return Err(Error::param("samples", "must be >= 1"));
    }
    let grid = Grid::standard(2, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); NAMES.len()];
    let mut skipped = [0usize; 6];
    let mut zero_fields = 0;
    for _ in 0..samples {
        let v = sample(grid, &mut rng)?;
        if lp_norm(&v, 2.0)? == 0.0 {
            zero_fields += 1;
            continue;
        }
        for (k, r) in ratios(&v)?.into_iter().enumerate() {
            match r {
                Some(r) if r.is_finite() => values[k].push(r),
                _ => skipped[k] += 1,
            }
        }
    }
    let families = NAMES
        .iter()
        .zip(values)
        .zip(skipped)
        .map(|((name, vals), skipped)| {
            let max = vals.iter().copied().fold(0.0, f64::max);
            let mut histogram = vec![0; BINS];
            for v in &vals {
                let b = if max > 0.0 {
                    ((v / max) * BINS as f64) as usize
                } else {
                    0
                };
                histogram[b.min(BINS - 1)] += 1;
            }
            RatioStats {
                name,
                max,
                skipped,
                histogram,
            }
        })
        .collect();
    Ok(GnReport {
        n,
        samples,
        zero_fields,
        families,
    })
}
