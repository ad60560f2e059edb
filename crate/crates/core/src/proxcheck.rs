//! Inequality checks over S: the proximal normal inequality, sphere
//! realization, ball containment in the complement, and the full exterior
//! sphere audit.
//!
//! Every check below reduces to the minimum over `s in S` of a quadratic
//! `k (|s - c|^2 - R^2)` or of a linear form `-<zeta, s - x>`. Both have a
//! closed-form minimum (through `d_S(c)` and the support function), which is
//! combined with a sampled minimum so that neither path can pass alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{ClosedBall, Point, UnitVector, Vec2};
use crate::sets::normals::{covers, proximal_normal_cone, CONE_SWEEP};
use crate::sets::{sample_boundary, SampleSet, SetModel};
use crate::tolerance::ToleranceConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsStrict,
    HoldsNonstrict,
    Fails,
}

impl Verdict {
    pub fn classify(margin: f64, eps: f64) -> Verdict {
        if margin > eps {
            Verdict::HoldsStrict
        } else if margin.abs() <= eps {
            Verdict::HoldsNonstrict
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    Strict,
    NonStrict,
}

impl Requirement {
    pub fn accepts(self, v: Verdict) -> bool {
        match self {
            Requirement::Strict => v == Verdict::HoldsStrict,
            Requirement::NonStrict => v != Verdict::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    /// The smaller of the analytic and sampled minima.
    pub min_margin: f64,
    pub argmin_point: Point,
    pub samples_used: usize,
    pub verdict: Verdict,
    pub sampled_margin: f64,
    pub analytic_margin: Option<f64>,
    pub requirement: Requirement,
    pub passed: bool,
}

impl MarginReport {
    fn new(
        analytic: Option<(f64, Option<Point>)>,
        sampled: (f64, Point),
        samples_used: usize,
        requirement: Requirement,
        eps: f64,
    ) -> Self {
        let (sampled_margin, sampled_arg) = sampled;
        let (mut min_margin, mut argmin_point) = (sampled_margin, sampled_arg);
        if let Some((a, arg)) = analytic {
            if a < sampled_margin - eps || samples_used == 0 {
                min_margin = a;
                argmin_point = arg.unwrap_or(sampled_arg);
            }
        }
        let verdict = Verdict::classify(min_margin, eps);
        MarginReport {
            min_margin,
            argmin_point,
            samples_used,
            verdict,
            sampled_margin,
            analytic_margin: analytic.map(|a| a.0),
            requirement,
            passed: requirement.accepts(verdict),
        }
    }
}

/// Minimum of `f` over `points`. Near-ties (within `eps`) go to the point
/// closest to `anchor`, then to the lexicographically smallest.
pub(crate) fn sampled_min(points: &[Point], f: impl Fn(Point) -> f64, anchor: Point, eps: f64) -> (f64, Point) {
    let values: Vec<f64> = points.iter().map(|p| f(*p)).collect();
    let m = values.iter().copied().fold(f64::INFINITY, f64::min);
    let arg = points
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v <= m + eps)
        .map(|(p, _)| *p)
        .min_by(|a, b| {
            a.dist(anchor)
                .total_cmp(&b.dist(anchor))
                .then_with(|| a.lex_cmp(*b, 0.0))
        })
        .unwrap_or(anchor);
    (m, arg)
}

/// `min_{s in S} k (|s - c|^2 - R^2)` in closed form, with its minimizer.
fn ball_analytic(model: &SetModel, c: Point, r: f64, k: f64) -> Result<(f64, Option<Point>)> {
    let proj = model.distance_projection(c)?;
    Ok((k * (proj.d * proj.d - r * r), proj.candidates.first().copied()))
}

/// `min_{s in S} -<zeta, s - x>` in closed form (`-inf` when unbounded).
fn linear_analytic(model: &SetModel, x: Point, zeta: Vec2) -> f64 {
    zeta.dot(x) - model.support(zeta)
}

/// Proximal normal inequality: `min_s sigma |s - x_0|^2 - <zeta, s - x_0>`
/// where `x_0 = s` is the base point.
pub fn proximal_margin(model: &SetModel, samples: &SampleSet, s: Point, zeta: UnitVector, sigma: f64) -> Result<MarginReport> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidInput(format!("sigma must be finite and >= 0, got {sigma}")));
    }
    let z = zeta.vec();
    let f = |x: Point| sigma * x.dist_sq(s) - z.dot(x - s);
    let eps = model.tol.eps_strict;
    let analytic = if sigma > 0.0 {
        let r = 0.5 / sigma;
        ball_analytic(model, s + z * r, r, sigma)?
    } else {
        (linear_analytic(model, s, z), None)
    };
    let sampled = sampled_min(&samples.points, f, s, eps);
    Ok(MarginReport::new(Some(analytic), sampled, samples.len(), Requirement::NonStrict, eps))
}

/// Whether the open ball of radius `r` tangent at `s` along `zeta` misses S.
///
/// Finite `r` uses the margin `|x - s|^2 / (2r) - <zeta, x - s>`; `r = +inf`
/// uses `-<zeta, x - s>`.
pub fn realized_by_sphere(model: &SetModel, samples: &SampleSet, s: Point, zeta: UnitVector, r: ExtReal) -> Result<MarginReport> {
    match r {
        ExtReal::Infinite => proximal_margin(model, samples, s, zeta, 0.0),
        ExtReal::Finite(r) if r > 0.0 => proximal_margin(model, samples, s, zeta, 0.5 / r),
        ExtReal::Finite(r) => Err(Error::InvalidInput(format!("realization radius must be > 0, got {r}"))),
    }
}

/// The three equivalent forms of the proximal inequality at `sigma > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `sigma |x - s|^2 - <zeta, x - s> >= 0`.
    pub proximal: MarginReport,
    /// `B(s + zeta / (2 sigma); 1 / (2 sigma))` misses S.
    pub ball: MarginReport,
    /// `<x - s, x - s - zeta / sigma> >= 0`.
    pub inner: MarginReport,
    pub agree: bool,
}

pub fn equivalence_triplet(model: &SetModel, samples: &SampleSet, s: Point, zeta: UnitVector, sigma: f64) -> Result<EquivalenceReport> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidInput(format!("sigma must be > 0, got {sigma}")));
    }
    let proximal = proximal_margin(model, samples, s, zeta, sigma)?;
    // The other two forms are the first divided by sigma; scale the slack alike.
    let eps = model.tol.eps_strict / sigma;
    let z = zeta.vec();
    let r = 0.5 / sigma;
    let c = s + z * r;
    let analytic = ball_analytic(model, c, r, 1.0)?;
    let ball = MarginReport::new(
        Some(analytic),
        sampled_min(&samples.points, |x| x.dist_sq(c) - r * r, s, eps),
        samples.len(),
        Requirement::NonStrict,
        eps,
    );
    let inner = MarginReport::new(
        Some(analytic),
        sampled_min(&samples.points, |x| (x - s).dot(x - s - z * (1.0 / sigma)), s, eps),
        samples.len(),
        Requirement::NonStrict,
        eps,
    );
    let agree = proximal.verdict == ball.verdict && ball.verdict == inner.verdict;
    Ok(EquivalenceReport { proximal, ball, inner, agree })
}

/// Diametric test: `B[c; R]` (closed) or `B(c; R)` (open) lies in the
/// complement iff `<s - y, s - z>` is positive (resp. non-negative) on S for
/// the endpoints `y, z` of a diameter.
pub fn ball_in_complement(model: &SetModel, samples: &SampleSet, ball: &ClosedBall, closed: bool) -> Result<MarginReport> {
    ball_in_complement_along(model, samples, ball, closed, UnitVector::E1)
}

pub fn ball_in_complement_along(
    model: &SetModel,
    samples: &SampleSet,
    ball: &ClosedBall,
    closed: bool,
    diameter: UnitVector,
) -> Result<MarginReport> {
    let (y, z) = ball.opposite_points(diameter);
    let eps = model.tol.eps_strict;
    let analytic = ball_analytic(model, ball.center, ball.radius, 1.0)?;
    let sampled = sampled_min(&samples.points, |s| (s - y).dot(s - z), ball.center, eps);
    let tol = model.tol.eps_geom * (1.0 + sampled.0.abs() + ball.radius * ball.radius);
    if analytic.0 > sampled.0 + tol {
        return Err(Error::OracleDisagreement { analytic: analytic.0, sampled: sampled.0 });
    }
    let req = if closed { Requirement::Strict } else { Requirement::NonStrict };
    Ok(MarginReport::new(Some(analytic), sampled, samples.len(), req, eps))
}

/// If `[y', z'] ⊂ ]y, z[` then `<s - y, s - z> >= 0` forces
/// `<s - y', s - z'> > 0`. Reports the minimum of the latter over the samples
/// satisfying the former.
pub fn nested_segment_implication(
    y: Point,
    z: Point,
    yp: Point,
    zp: Point,
    samples: &[Point],
    tol: &ToleranceConfig,
) -> Result<MarginReport> {
    let d = z - y;
    let len2 = d.norm_sq();
    if len2 <= tol.eps_geom * tol.eps_geom {
        return Err(Error::PreconditionViolated("outer segment is degenerate".into()));
    }
    let param = |p: Point| -> Result<f64> {
        let t = (p - y).dot(d) / len2;
        let off = (p - y).cross(d).abs() / len2.sqrt();
        if off > tol.eps_geom {
            return Err(Error::PreconditionViolated(format!("{p:?} is off the line through y and z")));
        }
        if t <= tol.eps_geom || t >= 1.0 - tol.eps_geom {
            return Err(Error::PreconditionViolated(format!("{p:?} is not inside the open segment")));
        }
        Ok(t)
    };
    param(yp)?;
    param(zp)?;
    let eps = tol.eps_strict;
    let kept: Vec<Point> = samples.iter().copied().filter(|s| (*s - y).dot(*s - z) >= -eps).collect();
    let sampled = if kept.is_empty() {
        (f64::INFINITY, y.lerp(z, 0.5))
    } else {
        sampled_min(&kept, |s| (s - yp).dot(s - zp), y.lerp(z, 0.5), eps)
    };
    Ok(MarginReport::new(None, sampled, kept.len(), Requirement::Strict, eps))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EescPoint {
    pub point: Point,
    pub in_bdry_int: bool,
    pub r: ExtReal,
    pub normals_checked: usize,
    pub min_margin: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EescReport {
    pub points: Vec<EescPoint>,
    pub failures: usize,
    pub worst_margin: f64,
    pub passed: bool,
}

/// Audits the extended exterior `r(.)`-sphere condition on `n_points`
/// boundary samples: at points of `bdry(int S)` some proximal normal must be
/// realized by an `r(s)`-sphere, elsewhere every normal must be (cones are
/// probed at their generators and a sweep of their inside).
pub fn eesc_check(model: &SetModel, n_points: usize, samples: &SampleSet) -> EescReport {
    let points: Vec<EescPoint> = sample_boundary(model, n_points)
        .into_iter()
        .map(|bp| {
            let r = model.r(bp.point);
            let mut out = EescPoint {
                point: bp.point,
                in_bdry_int: bp.in_bdry_int,
                r,
                normals_checked: 0,
                min_margin: f64::INFINITY,
                passed: true,
                note: None,
            };
            let fan = match proximal_normal_cone(model, &bp) {
                Ok(f) => f,
                Err(e) => {
                    out.passed = false;
                    out.note = Some(e.to_string());
                    return out;
                }
            };
            let mut normals: Vec<(UnitVector, ExtReal)> =
                fan.generators.iter().map(|g| (g.zeta, g.realization_radius)).collect();
            if fan.cone {
                normals.extend(
                    fan.sweep(CONE_SWEEP)
                        .into_iter()
                        .map(|z| (z, crate::sets::realization_radius(model, bp.point, z))),
                );
            }
            out.normals_checked = normals.len();
            let check = |(zeta, rr): (UnitVector, ExtReal)| -> (bool, f64) {
                match realized_by_sphere(model, samples, bp.point, zeta, r) {
                    Ok(rep) => (rep.passed && covers(rr, r, model.tol.eps_geom), rep.min_margin),
                    Err(_) => (false, f64::NEG_INFINITY),
                }
            };
            if bp.in_bdry_int {
                // One realized normal suffices; report the best one.
                let best = normals
                    .iter()
                    .map(|n| check(*n))
                    .max_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap_or(std::cmp::Ordering::Equal));
                match best {
                    Some((ok, m)) => {
                        out.passed = ok;
                        out.min_margin = m;
                        if !ok {
                            out.note = Some("no proximal normal is realized by an r(s)-sphere".into());
                        }
                    }
                    None => {
                        out.passed = false;
                        out.note = Some("no proximal normal".into());
                    }
                }
            } else {
                for n in &normals {
                    let (ok, m) = check(*n);
                    out.min_margin = out.min_margin.min(m);
                    if !ok && out.passed {
                        out.passed = false;
                        out.note = Some(format!("normal {:?} is not realized by an r(s)-sphere", n.0.vec()));
                    }
                }
            }
            out
        })
        .collect();
    let failures = points.iter().filter(|p| !p.passed).count();
    let worst_margin = points.iter().map(|p| p.min_margin).fold(f64::INFINITY, f64::min);
    EescReport { passed: failures == 0, failures, worst_margin, points }
}
