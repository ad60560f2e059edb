//! Ball certificates: conversions between `(zeta_x, t_x)` witnesses and
//! balls, and the case analysis that builds a ball of radius
//! `varrho_gamma(x)` through every point of the complement.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{AsymptoticBallFamily, BallOrFamily, ClosedBall, Point, UnitVector};
use crate::proxcheck::{ball_in_complement, sampled_min, MarginReport, Requirement, Verdict};
use crate::radius::{self, RadiusEvaluation};
use crate::sets::{designated_normal, SampleSet, SetModel};

/// Which branch of the case analysis produced a certificate.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    /// `gamma rho_x` dominates: the ball is centered at `x`.
    C1,
    /// `s_x` off `bdry(int S)`, `r(s_x) = +inf`.
    C2_1_1,
    /// `s_x` off `bdry(int S)`, `r(s_x)` finite.
    C2_1_2,
    /// `s_x` on `bdry(int S)`, `r(s_x) = +inf`.
    C2_2_1,
    /// `|y_x - x| <= varrho`.
    C2_2_2_1,
    /// `|y_x - x| > 2 varrho`.
    C2_2_2_2_1,
    /// `varrho < |y_x - x| <= 2 varrho`.
    C2_2_2_2_2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::C1,
        CaseTag::C2_1_1,
        CaseTag::C2_1_2,
        CaseTag::C2_2_1,
        CaseTag::C2_2_2_1,
        CaseTag::C2_2_2_2_1,
        CaseTag::C2_2_2_2_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::C1 => "C1",
            CaseTag::C2_1_1 => "C2_1_1",
            CaseTag::C2_1_2 => "C2_1_2",
            CaseTag::C2_2_1 => "C2_2_1",
            CaseTag::C2_2_2_1 => "C2_2_2_1",
            CaseTag::C2_2_2_2_1 => "C2_2_2_2_1",
            CaseTag::C2_2_2_2_2 => "C2_2_2_2_2",
        }
    }

    pub fn is_case2(self) -> bool {
        self != CaseTag::C1
    }
}

/// `(zeta_x, t_x)` at `x` for radius `varrho(x)`; `t_x` is absent when
/// `varrho(x) = +inf`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UcbWitness {
    pub x: Point,
    pub varrho: ExtReal,
    pub zeta_x: UnitVector,
    pub t_x: Option<f64>,
}

/// Finite `varrho`: the ball `B[x + (varrho - t) zeta; varrho]`. Infinite:
/// the family of balls tangent at `x` along `zeta`.
pub fn cert_to_ball(x: Point, varrho: ExtReal, zeta_x: UnitVector, t_x: f64) -> Result<BallOrFamily> {
    match varrho {
        ExtReal::Infinite => Ok(BallOrFamily::Family(AsymptoticBallFamily { anchor: x, direction: zeta_x })),
        ExtReal::Finite(v) => {
            if !(0.0..=v).contains(&t_x) {
                return Err(Error::BadT { t: t_x, varrho: v });
            }
            Ok(BallOrFamily::Ball(ClosedBall::new(x + zeta_x.vec() * (v - t_x), v)?))
        }
    }
}

/// Inverse of [`cert_to_ball`]. When the center is `x` itself the direction
/// is `e_1`.
pub fn ball_to_cert(x: Point, ball: &BallOrFamily, varrho: ExtReal) -> Result<(UnitVector, Option<f64>)> {
    match (ball, varrho) {
        (BallOrFamily::Family(f), ExtReal::Infinite) => {
            if f.anchor.dist(x) > 1e-12 * (1.0 + x.norm()) {
                return Err(Error::XNotInBall);
            }
            Ok((f.direction, None))
        }
        (BallOrFamily::Ball(b), ExtReal::Finite(v)) => {
            if (b.radius - v).abs() > 1e-12 * (1.0 + v) {
                return Err(Error::InvalidInput(format!("ball radius {} differs from varrho {v}", b.radius)));
            }
            let d = b.center.dist(x);
            if d > v * (1.0 + 1e-12) {
                return Err(Error::XNotInBall);
            }
            let zeta = if d == 0.0 { UnitVector::E1 } else { UnitVector::normalize(b.center - x)? };
            Ok((zeta, Some((v - d).max(0.0))))
        }
        _ => Err(Error::InvalidInput("ball shape does not match varrho".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub x: Point,
    pub gamma: f64,
    pub eval: RadiusEvaluation,
    pub case_tag: CaseTag,
    /// `(x - s_x) / |x - s_x|`.
    pub zeta_sx: UnitVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_sx: Option<UnitVector>,
    /// `y_x = s_x + r(s_x) xi_sx`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_center_aux: Option<Point>,
    pub zeta_x: UnitVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_x: Option<f64>,
    pub result: BallOrFamily,
    /// Closed-form minimum of the certificate inequality over S.
    pub margin: f64,
}

impl Certificate {
    pub fn witness(&self) -> UcbWitness {
        UcbWitness { x: self.x, varrho: self.eval.varrho, zeta_x: self.zeta_x, t_x: self.t_x }
    }

    pub fn varrho(&self) -> ExtReal {
        self.eval.varrho
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Closed-form margin of a witness: `min_s Q(s)` for finite `varrho`, where
/// `Q(s) = <s - x + t zeta, s - x + (t - 2 varrho) zeta> = |s - c|^2 - varrho^2`,
/// or `min_s -<zeta, s - x>` for infinite `varrho`.
pub fn witness_margin(model: &SetModel, w: &UcbWitness) -> Result<f64> {
    let z = w.zeta_x.vec();
    match (w.varrho, w.t_x) {
        (ExtReal::Infinite, _) => Ok(z.dot(w.x) - model.support(z)),
        (ExtReal::Finite(v), Some(t)) => {
            let c = w.x + z * (v - t);
            let d = model.distance(c);
            Ok(d * d - v * v)
        }
        (ExtReal::Finite(_), None) => Err(Error::InvalidInput("finite witness needs t_x".into())),
    }
}

/// Runs the case analysis at `x` and returns a certificate whose ball (or
/// ball family) is verified in closed form to lie in the complement of S.
pub fn synthesize(model: &SetModel, gamma: f64, x: Point) -> Result<Certificate> {
    let eval = radius::evaluate(model, gamma, x)?;
    let tol = model.tol;
    let zeta_sx = UnitVector::normalize(x - eval.s_x)?;
    let mut xi_sx = None;
    let mut y_aux = None;

    let (tag, zeta_x, t_x) = if eval.centered_branch() {
        (CaseTag::C1, zeta_sx, gamma * eval.rho_x)
    } else if !model.in_bdry_int(eval.s_x) {
        match eval.varrho {
            ExtReal::Infinite => (CaseTag::C2_1_1, zeta_sx, 0.0),
            ExtReal::Finite(_) => (CaseTag::C2_1_2, zeta_sx, 0.0),
        }
    } else {
        let bp = model.boundary_point(eval.s_x)?;
        let (xi, _) = designated_normal(model, &bp, zeta_sx)?;
        audit_designated_normal(model, eval.s_x, xi, zeta_sx)?;
        xi_sx = Some(xi);
        match (model.r(eval.s_x), eval.varrho) {
            (ExtReal::Finite(r), ExtReal::Finite(v)) => {
                let y = eval.s_x + xi.vec() * r;
                y_aux = Some(y);
                let dist = y.dist(x);
                let zeta = if dist <= tol.eps_geom { xi } else { UnitVector::normalize(y - x)? };
                let t = (v - dist).max(0.0);
                // Dead-band: within eps_geom of a threshold the lower branch wins.
                let tag = if dist <= v + tol.eps_geom {
                    CaseTag::C2_2_2_1
                } else if dist <= 2.0 * v + tol.eps_geom {
                    CaseTag::C2_2_2_2_2
                } else {
                    CaseTag::C2_2_2_2_1
                };
                (tag, zeta, t)
            }
            _ => (CaseTag::C2_2_1, xi, 0.0),
        }
    };

    let t_opt = eval.varrho.finite().map(|_| t_x);
    let result = cert_to_ball(x, eval.varrho, zeta_x, t_x)?;
    let w = UcbWitness { x, varrho: eval.varrho, zeta_x, t_x: t_opt };
    let margin = witness_margin(model, &w)?;
    let ok = match eval.varrho {
        ExtReal::Finite(_) => margin > tol.eps_strict,
        ExtReal::Infinite => margin >= -tol.eps_strict,
    };
    if !ok {
        return Err(Error::VerificationFailure { at: x.into(), margin });
    }
    Ok(Certificate {
        x,
        gamma,
        eval,
        case_tag: tag,
        zeta_sx,
        xi_sx,
        y_center_aux: y_aux,
        zeta_x,
        t_x: t_opt,
        result,
        margin,
    })
}

/// Independent closed-form check of the normal used in the interior-boundary
/// branch: realized by an `r(s_x)`-sphere and not pointing against `zeta_sx`.
fn audit_designated_normal(model: &SetModel, s: Point, xi: UnitVector, zeta_sx: UnitVector) -> Result<()> {
    let tol = model.tol;
    let fail = |reason: String| Err(Error::NormalOracleFailure { at: s.into(), reason });
    let realized = match model.r(s) {
        ExtReal::Infinite => model.support(xi.vec()) - xi.dot(s) <= tol.eps_geom,
        ExtReal::Finite(r) => model.distance(s + xi.vec() * r) >= r - tol.eps_geom * (1.0 + r),
    };
    if !realized {
        return fail(format!("{:?} is not realized by an r(s)-sphere", xi.vec()));
    }
    if xi.dot(zeta_sx.vec()) < -tol.eps_strict {
        return fail(format!("<xi, zeta_sx> = {} < 0", xi.dot(zeta_sx.vec())));
    }
    Ok(())
}

/// Sampled and closed-form check of a witness: `Q(s) > 0` on S for finite
/// `varrho`, `<zeta, s - x> <= 0` on S otherwise. The resulting ball (or two
/// members of the family) must pass the diametric containment test with the
/// same outcome.
pub fn verify_witness(model: &SetModel, w: &UcbWitness, samples: &SampleSet) -> Result<MarginReport> {
    let eps = model.tol.eps_strict;
    let z = w.zeta_x.vec();
    let x = w.x;
    let analytic = witness_margin(model, w)?;
    let report = match (w.varrho, w.t_x) {
        (ExtReal::Finite(v), Some(t)) => {
            let q = |s: Point| (s - x + z * t).dot(s - x + z * (t - 2.0 * v));
            let sampled = sampled_min(&samples.points, q, x, eps);
            let rep = margin_report(analytic, sampled, samples.len(), Requirement::Strict, eps);
            if let BallOrFamily::Ball(b) = cert_to_ball(x, w.varrho, w.zeta_x, t)? {
                let cross = ball_in_complement(model, samples, &b, true)?;
                if cross.passed != rep.passed {
                    return Err(Error::OracleDisagreement { analytic: rep.min_margin, sampled: cross.min_margin });
                }
            }
            rep
        }
        (ExtReal::Infinite, _) => {
            let sampled = sampled_min(&samples.points, |s| -z.dot(s - x), x, eps);
            let rep = margin_report(analytic, sampled, samples.len(), Requirement::NonStrict, eps);
            let fam = AsymptoticBallFamily { anchor: x, direction: w.zeta_x };
            for delta in [1.0, 10.0] {
                let cross = ball_in_complement(model, samples, &fam.member(delta)?, false)?;
                if cross.passed != rep.passed {
                    return Err(Error::OracleDisagreement { analytic: rep.min_margin, sampled: cross.min_margin });
                }
            }
            rep
        }
        (ExtReal::Finite(_), None) => return Err(Error::InvalidInput("finite witness needs t_x".into())),
    };
    Ok(report)
}

fn margin_report(analytic: f64, sampled: (f64, Point), n: usize, req: Requirement, eps: f64) -> MarginReport {
    let use_analytic = analytic < sampled.0 - eps;
    let min_margin = if use_analytic { analytic } else { sampled.0 };
    let verdict = Verdict::classify(min_margin, eps);
    MarginReport {
        min_margin,
        argmin_point: sampled.1,
        samples_used: n,
        verdict,
        sampled_margin: sampled.0,
        analytic_margin: Some(analytic),
        requirement: req,
        passed: req.accepts(verdict),
    }
}

/// Re-verifies a certificate against S.
pub fn verify_certificate(model: &SetModel, cert: &Certificate, samples: &SampleSet) -> Result<MarginReport> {
    let (zeta, t) = ball_to_cert(cert.x, &cert.result, cert.eval.varrho)?;
    let w = cert.witness();
    if zeta.vec().dist(w.zeta_x.vec()) > 1e-9 && cert.t_x.is_some_and(|t0| t0 < cert.eval.varrho.to_f64()) {
        return Err(Error::InvalidInput("certificate ball does not match its witness".into()));
    }
    if let (Some(a), Some(b)) = (t, w.t_x) {
        if (a - b).abs() > 1e-9 * (1.0 + b) {
            return Err(Error::InvalidInput("certificate t_x does not match its ball".into()));
        }
    }
    verify_witness(model, &w, samples)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditItem {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Re-derives the inequality chain behind the second case (`rho_x`, `varrho`
/// and `rho_x + 2 varrho` against multiples of `rho`) and, in the last two
/// sub-cases, the lower bound on the certificate margin. Empty for `C1` and
/// for infinite `varrho`.
pub fn case2_inequality_audit(cert: &Certificate) -> Vec<AuditItem> {
    let (ExtReal::Finite(rho), ExtReal::Finite(v)) = (cert.eval.rho, cert.eval.varrho) else {
        return Vec::new();
    };
    if !cert.case_tag.is_case2() {
        return Vec::new();
    }
    let g = cert.gamma;
    let rx = cert.eval.rho_x;
    let s3 = 3f64.sqrt();
    let item = |name: &str, lhs: f64, rhs: f64, strict: bool| {
        let holds = if strict { lhs < rhs } else { lhs <= rhs * (1.0 + 1e-12) };
        AuditItem { name: name.into(), lhs, rhs, holds }
    };
    let chain = (1.0 / g + 2.0) * (2.0 / s3) * rho;
    let mut out = vec![
        item("rho_x < 2 rho / (gamma sqrt3)", rx, 2.0 * rho / (g * s3), true),
        item("varrho < 2 rho / sqrt3", v, 2.0 * rho / s3, true),
        item("rho_x + 2 varrho < (1/gamma + 2)(2/sqrt3) rho", rx + 2.0 * v, chain, true),
        item("(1/gamma + 2)(2/sqrt3) rho <= 4 rho", chain, 4.0 * rho, false),
    ];
    let slack = 1e-9 * (1.0 + cert.margin.abs());
    let dist = cert.y_center_aux.map(|y| y.dist(cert.x));
    match (cert.case_tag, dist) {
        (CaseTag::C2_2_2_2_1, Some(d)) => {
            let bound = rx * rx * (1.0 - 2.0 * v / d);
            out.push(item("0 < rho_x^2 (1 - 2 varrho / |y - x|)", 0.0, bound, true));
            out.push(item("bound <= margin", bound, cert.margin + slack, false));
        }
        (CaseTag::C2_2_2_2_2, Some(d)) => {
            let bound = rx * rx * (1.0 - g * g) / 2.0;
            out.push(item("1/sqrt3 <= gamma", 1.0 / s3, g, false));
            out.push(item("1/2 <= varrho / |y - x|", 0.5 - 1e-9, v / d, false));
            out.push(item("0 < rho_x^2 (1 - gamma^2) / 2", 0.0, bound, true));
            out.push(item("bound <= margin", bound, cert.margin + slack, false));
        }
        _ => {}
    }
    out
}

/// Unit vector at 45 degrees, handy for fixtures.
pub const DIAGONAL: [f64; 2] = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
