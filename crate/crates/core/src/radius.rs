//! The radius functions `rho_x = d_S(x)`, `rho(x)` and `varrho_gamma(x)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{Point, Vec2};
use crate::sets::SetModel;

/// Smallest admissible `gamma`, `1 / (2 sqrt 3 - 2)`.
pub const GAMMA_MIN: f64 = 0.683_012_701_892_219_4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEvaluation {
    pub x: Point,
    pub rho_x: f64,
    pub rho: ExtReal,
    pub s_x: Point,
    pub gamma: f64,
    pub varrho: ExtReal,
}

impl RadiusEvaluation {
    /// `gamma rho_x >= (1/2) sqrt(gamma^2 rho_x^2 + 4 rho^2)`: the first term of
    /// the max wins.
    pub fn centered_branch(&self) -> bool {
        match self.rho {
            ExtReal::Infinite => false,
            ExtReal::Finite(rho) => {
                let g = self.gamma * self.rho_x;
                g >= 0.5 * (g * g + 4.0 * rho * rho).sqrt()
            }
        }
    }
}

pub fn check_gamma(gamma: f64) -> Result<()> {
    if gamma >= GAMMA_MIN && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange(gamma))
    }
}

/// `rho(x) = min { r(s) / 2 : s in proj_S(x) }` and a minimizing `s_x`
/// (lexicographically smallest among ties).
pub fn rho(model: &SetModel, x: Point) -> Result<(ExtReal, Point, f64)> {
    if model.contains(x) {
        return Err(Error::NotInComplement(x.into()));
    }
    let proj = model.distance_projection(x)?;
    let values: Vec<(ExtReal, Point)> = proj.candidates.iter().map(|&s| (model.r(s).half(), s)).collect();
    let vmin = values.iter().map(|v| v.0).fold(ExtReal::INF, ExtReal::min);
    let close = |v: ExtReal| match (v, vmin) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => a - b <= 1e-12 * (1.0 + b),
        (a, b) => a == b,
    };
    let s_x = values
        .iter()
        .filter(|v| close(v.0))
        .map(|v| v.1)
        .min_by(|a, b| a.lex_cmp(*b, 0.0))
        .expect("projection is never empty");
    Ok((vmin, s_x, proj.d))
}

/// `max { gamma rho_x, (1/2) sqrt(gamma^2 rho_x^2 + 4 rho^2) }`.
pub fn varrho_gamma(gamma: f64, rho_x: f64, rho: ExtReal) -> ExtReal {
    match rho {
        ExtReal::Infinite => ExtReal::INF,
        ExtReal::Finite(r) => {
            let g = gamma * rho_x;
            ExtReal::Finite(g.max(0.5 * (g * g + 4.0 * r * r).sqrt()))
        }
    }
}

pub fn evaluate(model: &SetModel, gamma: f64, x: Point) -> Result<RadiusEvaluation> {
    check_gamma(gamma)?;
    evaluate_unchecked(model, gamma, x)
}

/// `evaluate` without the range check on `gamma`, for the tightness
/// experiment at `gamma = 1`.
pub fn evaluate_unchecked(model: &SetModel, gamma: f64, x: Point) -> Result<RadiusEvaluation> {
    let (rho, s_x, rho_x) = rho(model, x)?;
    Ok(RadiusEvaluation { x, rho_x, rho, s_x, gamma, varrho: varrho_gamma(gamma, rho_x, rho) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LscLevel {
    pub delta: f64,
    pub samples: usize,
    pub min_varrho: ExtReal,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LscReport {
    pub x: Point,
    pub varrho: ExtReal,
    pub levels: Vec<LscLevel>,
    pub passed: bool,
}

/// Refutation test for lower semicontinuity of `varrho_gamma` at `x`: on
/// three shrinking disks `B(x; delta)` (`delta = rho_x / 2, / 4, / 8`), the
/// sampled minimum must not fall below `varrho(x) - 10 delta`. When
/// `varrho(x) = +inf` the sampled values must exceed `1 / delta` instead.
pub fn lsc_spot_check(model: &SetModel, gamma: f64, x: Point, k: usize) -> Result<LscReport> {
    let here = evaluate(model, gamma, x)?;
    let seed = x.x.to_bits() ^ x.y.to_bits().rotate_left(17) ^ gamma.to_bits().rotate_left(33);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = Vec::new();
    for level in 0..3 {
        let delta = here.rho_x / 2f64.powi(level + 1);
        let threshold = match here.varrho {
            ExtReal::Finite(v) => v - 10.0 * delta,
            ExtReal::Infinite => 1.0 / delta,
        };
        let mut min_varrho = ExtReal::INF;
        let mut samples = 0;
        for _ in 0..4 * k {
            if samples == k {
                break;
            }
            let r = delta * rng.gen::<f64>().sqrt();
            let p = x + Vec2::from_angle(rng.gen_range(0.0..std::f64::consts::TAU)) * r;
            if model.contains(p) {
                continue;
            }
            min_varrho = min_varrho.min(evaluate(model, gamma, p)?.varrho);
            samples += 1;
        }
        let passed = min_varrho >= ExtReal::new(threshold.max(0.0));
        levels.push(LscLevel { delta, samples, min_varrho, threshold, passed });
    }
    let passed = levels.iter().all(|l| l.passed);
    Ok(LscReport { x, varrho: here.varrho, levels, passed })
}
