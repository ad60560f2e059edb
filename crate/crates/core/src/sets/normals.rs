//! Proximal normal cones and their realization radii.
//!
//! For the scene grammar every boundary point has a tangent cone that is a
//! finite union of rays, so the proximal normal cone is its polar
//! `{ zeta : <zeta, w> <= 0 for every tangent generator w }`. In the plane
//! that polar is one of six shapes, all spanned by vectors perpendicular to
//! some generator (or by the axes when there is no generator at all).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{angle_0_2pi, Point, UnitVector, Vec2};
use crate::sets::model::{BoundaryPoint, SetModel};

/// Number of directions used to sweep the inside of a normal cone.
pub const CONE_SWEEP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanKind {
    /// Only the zero vector: no proximal normal.
    Zero,
    Ray,
    /// Pointed cone with opening angle in `(0, pi)`.
    Wedge,
    Line,
    HalfPlane,
    /// Every direction (isolated points).
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalGenerator {
    pub zeta: UnitVector,
    /// Largest radius of an open ball tangent at the base point along
    /// `zeta` that misses S.
    pub realization_radius: ExtReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFan {
    pub base: Point,
    pub kind: FanKind,
    pub generators: Vec<NormalGenerator>,
    /// Set when the cone has directions strictly between its generators.
    pub cone: bool,
    /// Angular span `(start, sweep)` of a cone, counter-clockwise.
    span: Option<(f64, f64)>,
}

impl NormalFan {
    /// `n` directions strictly inside the cone, evenly spaced by angle.
    pub fn sweep(&self, n: usize) -> Vec<UnitVector> {
        let Some((start, sweep)) = self.span else {
            return Vec::new();
        };
        let full = sweep >= TAU - 1e-12;
        let steps = if full { n } else { n + 1 };
        (0..n)
            .map(|k| {
                let f = if full { k as f64 } else { (k + 1) as f64 };
                UnitVector::from_angle(start + sweep * f / steps as f64)
            })
            .collect()
    }
}

fn unit(v: Vec2) -> Vec2 {
    v * (1.0 / v.norm())
}

/// Shape and spanning directions of the polar of `gens`.
fn polar(gens: &[Vec2]) -> (FanKind, Vec<Vec2>, Option<(f64, f64)>) {
    const TOL: f64 = 1e-12;
    if gens.is_empty() {
        let axes = vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0), Vec2::new(0.0, -1.0)];
        return (FanKind::Full, axes, Some((0.0, TAU)));
    }
    let inside = |z: Vec2| gens.iter().all(|w| z.dot(*w) <= TOL);
    let mut cands: Vec<Vec2> = Vec::new();
    for w in gens {
        for z in [w.perp(), -w.perp()] {
            let z = unit(z);
            if inside(z) && !cands.iter().any(|c| c.dist(z) < 1e-9) {
                cands.push(z);
            }
        }
    }
    match cands.len() {
        0 => (FanKind::Zero, cands, None),
        1 => (FanKind::Ray, cands, None),
        2 if cands[0].dot(cands[1]) < -1.0 + 1e-9 => {
            // Either a line or a half-plane bounded by that line.
            let c = cands[0].perp();
            let mid = if inside(c) {
                Some(c)
            } else if inside(-c) {
                Some(-c)
            } else {
                None
            };
            match mid {
                Some(m) => {
                    // Counter-clockwise from the boundary ray a quarter turn before `m`.
                    let start = m.angle() - PI / 2.0;
                    let (a, b) = (Vec2::from_angle(start), Vec2::from_angle(start + PI));
                    (FanKind::HalfPlane, vec![a, b, m], Some((angle_0_2pi(start), PI)))
                }
                None => (FanKind::Line, cands, None),
            }
        }
        _ => {
            // A pointed wedge: keep the two extreme directions.
            let (mut best, mut pair) = (-1.0, (cands[0], cands[1]));
            for i in 0..cands.len() {
                for j in i + 1..cands.len() {
                    let gap = angle_0_2pi(cands[j].angle() - cands[i].angle());
                    let gap = gap.min(TAU - gap);
                    if gap > best {
                        best = gap;
                        pair = (cands[i], cands[j]);
                    }
                }
            }
            let (mut a, mut b) = pair;
            let mut sweep = angle_0_2pi(b.angle() - a.angle());
            if sweep > PI {
                std::mem::swap(&mut a, &mut b);
                sweep = TAU - sweep;
            }
            (FanKind::Wedge, vec![a, b], Some((a.angle(), sweep)))
        }
    }
}

/// The proximal normal cone of S at a boundary point.
pub fn proximal_normal_cone(model: &SetModel, s: &BoundaryPoint) -> Result<NormalFan> {
    if !model.is_boundary(s.point) {
        return Err(Error::NotBoundary(s.point.into()));
    }
    let gens: Vec<Vec2> = model.tangent_generators(s.point).into_iter().map(unit).collect();
    let (kind, dirs, span) = polar(&gens);
    let generators = dirs
        .into_iter()
        .map(|z| {
            let zeta = UnitVector::normalize(z).expect("cone directions are unit");
            NormalGenerator { zeta, realization_radius: realization_radius(model, s.point, zeta) }
        })
        .collect();
    let cone = matches!(kind, FanKind::Wedge | FanKind::HalfPlane | FanKind::Full);
    Ok(NormalFan { base: s.point, kind, generators, cone, span })
}

/// Largest `rho` with `B(s + rho zeta; rho)` disjoint from S, or `+inf` when
/// every such ball misses S.
pub fn realization_radius(model: &SetModel, s: Point, zeta: UnitVector) -> ExtReal {
    let z = zeta.vec();
    if model.support(z) - z.dot(s) <= model.tol.eps_geom {
        return ExtReal::INF;
    }
    let fits = |rho: f64| model.distance(s + z * rho) >= rho * (1.0 - 1e-12) - 1e-12;
    let (mut lo, mut hi) = (0.0, 1.0);
    while fits(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return ExtReal::INF;
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ExtReal::Finite(lo)
}

/// Whether a realization radius covers the required `r`.
pub(crate) fn covers(radius: ExtReal, r: ExtReal, eps: f64) -> bool {
    match (radius, r) {
        (ExtReal::Infinite, _) => true,
        (ExtReal::Finite(_), ExtReal::Infinite) => false,
        (ExtReal::Finite(a), ExtReal::Finite(b)) => a >= b - eps * (1.0 + b),
    }
}

/// Picks the normal used at a point of `bdry(int S)`: realized by an
/// `r(s)`-sphere, non-negative against `bias`, and maximizing `<xi, bias>`
/// with a lexicographic tie-break.
pub fn designated_normal(model: &SetModel, s: &BoundaryPoint, bias: UnitVector) -> Result<(UnitVector, ExtReal)> {
    if !s.in_bdry_int {
        return Err(Error::PreconditionViolated(format!(
            "{:?} is not on the boundary of the interior",
            s.point
        )));
    }
    let fan = proximal_normal_cone(model, s)?;
    let r = model.r(s.point);
    let eps = model.tol.eps_strict;
    let eligible = |g: &NormalGenerator| {
        covers(g.realization_radius, r, model.tol.eps_geom) && g.zeta.dot(bias.vec()) >= -eps
    };
    let pick = |cands: Vec<NormalGenerator>| {
        cands.into_iter().filter(|g| eligible(g)).reduce(|best, g| {
            let (db, dg) = (best.zeta.dot(bias.vec()), g.zeta.dot(bias.vec()));
            if dg > db + eps || ((dg - db).abs() <= eps && g.zeta.vec().lex_cmp(best.zeta.vec(), 1e-12).is_lt()) {
                g
            } else {
                best
            }
        })
    };
    let chosen = pick(fan.generators.clone()).or_else(|| {
        let swept = fan
            .sweep(CONE_SWEEP)
            .into_iter()
            .map(|zeta| NormalGenerator { zeta, realization_radius: realization_radius(model, s.point, zeta) })
            .collect();
        pick(swept)
    });
    chosen
        .map(|g| (g.zeta, g.realization_radius))
        .ok_or_else(|| Error::NoValidNormal(s.point.into()))
}
