//! Closed-form oracles for the set induced by a scene.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{dedup_points, Aabb, Point, Vec2};
use crate::sets::arrangement::{Disk, DiskRegion, Locus};
use crate::sets::scene::{Primitive, RadiusFnSpec, SceneSpec};
use crate::tolerance::ToleranceConfig;

/// A scene primitive other than a disk complement, with normalized data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Part {
    Point { p: Point },
    Segment { a: Point, b: Point },
    Ray { origin: Point, dir: Vec2 },
    /// `<n, p> <= c` with `|n| = 1`.
    HalfPlane { n: Vec2, c: f64 },
}

impl Part {
    /// Nearest point of the part to `x`.
    pub(crate) fn nearest(&self, x: Point) -> Point {
        match *self {
            Part::Point { p } => p,
            Part::Segment { a, b } => {
                let d = b - a;
                let t = ((x - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
                a + d * t
            }
            Part::Ray { origin, dir } => origin + dir * (x - origin).dot(dir).max(0.0),
            Part::HalfPlane { n, c } => {
                let h = n.dot(x) - c;
                if h <= 0.0 {
                    x
                } else {
                    x - n * h
                }
            }
        }
    }

    fn distance(&self, x: Point) -> f64 {
        x.dist(self.nearest(x))
    }

    fn support(&self, zeta: Vec2) -> f64 {
        match *self {
            Part::Point { p } => zeta.dot(p),
            Part::Segment { a, b } => zeta.dot(a).max(zeta.dot(b)),
            Part::Ray { origin, dir } => {
                if zeta.dot(dir) <= 1e-12 {
                    zeta.dot(origin)
                } else {
                    f64::INFINITY
                }
            }
            Part::HalfPlane { n, c } => {
                let lambda = zeta.dot(n);
                if zeta.cross(n).abs() <= 1e-12 && lambda >= 0.0 {
                    lambda * c
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    fn is_interior(&self, p: Point, eps: f64) -> bool {
        matches!(*self, Part::HalfPlane { n, c } if n.dot(p) < c - eps)
    }

    /// Generators of the part's tangent cone at `p` (assumed on the part).
    fn tangent_generators(&self, p: Point, eps: f64) -> Vec<Vec2> {
        match *self {
            Part::Point { .. } => Vec::new(),
            Part::Segment { a, b } => {
                let d = (b - a) * (1.0 / a.dist(b));
                if p.dist(a) <= eps {
                    vec![d]
                } else if p.dist(b) <= eps {
                    vec![-d]
                } else {
                    vec![d, -d]
                }
            }
            Part::Ray { origin, dir } => {
                if p.dist(origin) <= eps {
                    vec![dir]
                } else {
                    vec![dir, -dir]
                }
            }
            Part::HalfPlane { n, .. } => {
                let t = n.perp();
                vec![t, -t, -n]
            }
        }
    }
}

/// A boundary point together with its structural classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub point: Point,
    pub supporting_primitives: Vec<usize>,
    /// Whether the point lies on the boundary of the interior of S.
    pub in_bdry_int: bool,
}

/// `d_S(x)` and a finite list of nearest points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub d: f64,
    pub candidates: Vec<Point>,
}

/// The closed set induced by a scene, with exact geometric oracles.
#[derive(Clone, Debug)]
pub struct SetModel {
    pub scene: SceneSpec,
    pub tol: ToleranceConfig,
    parts: Vec<(usize, Part)>,
    region: Option<DiskRegion>,
}

impl SetModel {
    pub fn build(scene: SceneSpec) -> Result<Self> {
        Self::build_with(scene, ToleranceConfig::default())
    }

    pub fn build_with(scene: SceneSpec, tol: ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        scene.radius_fn.validate()?;
        if scene.primitives.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut parts = Vec::new();
        let mut disks = Vec::new();
        for (id, prim) in scene.primitives.iter().enumerate() {
            prim.validate()?;
            match *prim {
                Primitive::DiskComplement { center, radius } => {
                    disks.push(Disk { center, radius, primitive: id })
                }
                Primitive::Point { p } => parts.push((id, Part::Point { p })),
                Primitive::Segment { a, b } => parts.push((id, Part::Segment { a, b })),
                Primitive::Ray { origin, direction } => parts.push((
                    id,
                    Part::Ray { origin, dir: direction * (1.0 / direction.norm()) },
                )),
                Primitive::HalfPlane { normal, offset } => {
                    let k = 1.0 / normal.norm();
                    parts.push((id, Part::HalfPlane { n: normal * k, c: offset * k }))
                }
            }
        }
        let region = if disks.is_empty() {
            None
        } else {
            Some(DiskRegion::build(disks, scene.fill_gaps, tol.eps_geom)?)
        };
        Ok(SetModel { scene, tol, parts, region })
    }

    pub fn radius_fn(&self) -> &RadiusFnSpec {
        &self.scene.radius_fn
    }

    /// `r(s)`.
    pub fn r(&self, s: Point) -> ExtReal {
        self.scene.radius_fn.eval(s)
    }

    pub fn region(&self) -> Option<&DiskRegion> {
        self.region.as_ref()
    }

    pub(crate) fn parts(&self) -> impl Iterator<Item = &(usize, Part)> {
        self.parts.iter()
    }

    pub fn has_interior(&self) -> bool {
        self.region.is_some() || self.parts.iter().any(|(_, p)| matches!(p, Part::HalfPlane { .. }))
    }

    pub fn contains(&self, p: Point) -> bool {
        let eps = self.tol.eps_geom;
        self.parts.iter().any(|(_, part)| part.distance(p) <= eps)
            || self.region.as_ref().is_some_and(|r| r.contains(p))
    }

    pub fn is_interior(&self, p: Point) -> bool {
        let eps = self.tol.eps_geom;
        self.parts.iter().any(|(_, part)| part.is_interior(p, eps))
            || self.region.as_ref().is_some_and(|r| r.is_interior(p))
    }

    pub fn is_boundary(&self, p: Point) -> bool {
        self.contains(p) && !self.is_interior(p)
    }

    /// Whether a boundary point lies on the boundary of `int S`.
    pub fn in_bdry_int(&self, p: Point) -> bool {
        let eps = self.tol.eps_geom;
        if self.is_interior(p) {
            return false;
        }
        let on_line = self.parts.iter().any(|(_, part)| match *part {
            Part::HalfPlane { n, c } => (n.dot(p) - c).abs() <= eps,
            _ => false,
        });
        on_line || self.region.as_ref().is_some_and(|r| r.locate_boundary(p, eps).is_some())
    }

    pub fn supporting_primitives(&self, p: Point) -> Vec<usize> {
        let eps = self.tol.eps_geom;
        let mut ids: Vec<usize> = self
            .parts
            .iter()
            .filter(|(_, part)| part.distance(p) <= eps && !part.is_interior(p, eps))
            .map(|(id, _)| *id)
            .collect();
        if let Some(r) = &self.region {
            match r.locate_boundary(p, eps) {
                Some(Locus::Arc(a)) => ids.push(r.disks[r.arcs[a].disk].primitive),
                Some(Locus::Vertex(v)) => {
                    let vx = &r.vertices[v];
                    for &a in vx.arcs_in.iter().chain(vx.arcs_out.iter()) {
                        if r.is_boundary_arc(a) {
                            ids.push(r.disks[r.arcs[a].disk].primitive);
                        }
                    }
                }
                None => {}
            }
        }
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn boundary_point(&self, p: Point) -> Result<BoundaryPoint> {
        if !self.is_boundary(p) {
            return Err(Error::NotBoundary(p.into()));
        }
        Ok(BoundaryPoint {
            point: p,
            supporting_primitives: self.supporting_primitives(p),
            in_bdry_int: self.in_bdry_int(p),
        })
    }

    /// `d_S(x)`.
    pub fn distance(&self, x: Point) -> f64 {
        if self.contains(x) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for (_, part) in &self.parts {
            best = best.min(part.distance(x));
        }
        if let Some(r) = &self.region {
            let cand = r.projection_candidates(x);
            for p in &cand.points {
                best = best.min(x.dist(*p));
            }
            for &k in &cand.continuum {
                best = best.min(r.disks[k].radius);
            }
        }
        best
    }

    /// A nearest point of S to `x`, lexicographically smallest among ties.
    pub fn nearest_point(&self, x: Point) -> Result<Point> {
        let proj = self.distance_projection(x)?;
        Ok(proj.candidates[0])
    }

    /// `d_S(x)` with nearest points, including a minimizer of `r` over the
    /// projection set when that set is a continuum.
    pub fn distance_projection(&self, x: Point) -> Result<Projection> {
        if self.contains(x) {
            return Ok(Projection { d: 0.0, candidates: vec![x] });
        }
        let mut cands: Vec<Point> = self.parts.iter().map(|(_, part)| part.nearest(x)).collect();
        if let Some(r) = &self.region {
            let rp = r.projection_candidates(x);
            cands.extend(rp.points);
            for &k in &rp.continuum {
                let disk = r.disks[k];
                let mut circle = Vec::new();
                if let Some(m) = self.scene.radius_fn.minimizer_on_circle(disk.center, disk.radius) {
                    circle.push(m);
                }
                for arc in r.boundary_arcs_of(k) {
                    if !arc.is_full() {
                        circle.push(disk.point_at(arc.start));
                        circle.push(disk.point_at(arc.end()));
                    }
                }
                for i in 0..8 {
                    circle.push(disk.point_at(i as f64 * std::f64::consts::FRAC_PI_4));
                }
                circle.retain(|p| r.locate_boundary(*p, self.tol.eps_geom).is_some());
                if circle.is_empty() {
                    return Err(Error::DegenerateProjection(x.into()));
                }
                cands.extend(circle);
            }
        }
        let d = cands.iter().map(|p| x.dist(*p)).fold(f64::INFINITY, f64::min);
        let slack = self.tol.eps_geom * (1.0 + d);
        cands.retain(|p| x.dist(*p) <= d + slack);
        dedup_points(&mut cands, 1e-12);
        Ok(Projection { d, candidates: cands })
    }

    /// `sup { <zeta, s> : s in S }`, `+inf` when unbounded in that direction.
    pub fn support(&self, zeta: Vec2) -> f64 {
        if self.region.is_some() {
            return f64::INFINITY;
        }
        self.parts
            .iter()
            .map(|(_, part)| part.support(zeta))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Generators of the tangent cone of S at a boundary point: the union of
    /// the tangent cones of every primitive through `p`.
    pub fn tangent_generators(&self, p: Point) -> Vec<Vec2> {
        let eps = self.tol.eps_geom;
        let mut out = Vec::new();
        for (_, part) in &self.parts {
            if part.distance(p) <= eps {
                out.extend(part.tangent_generators(p, eps));
            }
        }
        if let Some(r) = &self.region {
            out.extend(r.tangent_generators(p, eps));
        }
        out
    }

    /// Corner, endpoint and tangency points that every boundary sample set
    /// must include.
    pub fn feature_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for (_, part) in &self.parts {
            match *part {
                Part::Point { p } => out.push(p),
                Part::Segment { a, b } => {
                    out.push(a);
                    out.push(b);
                }
                Part::Ray { origin, .. } => out.push(origin),
                Part::HalfPlane { .. } => {}
            }
        }
        if let Some(r) = &self.region {
            out.extend(r.vertex_points());
        }
        out.retain(|p| self.is_boundary(*p));
        dedup_points(&mut out, 1e-12);
        out
    }

    /// Bounding box of the finite scene data, grown to leave room around it.
    pub fn default_window(&self) -> Aabb {
        let mut b = Aabb::empty();
        for (_, part) in &self.parts {
            match *part {
                Part::Point { p } => b.include(p),
                Part::Segment { a, b: q } => {
                    b.include(a);
                    b.include(q);
                }
                Part::Ray { origin, dir } => {
                    b.include(origin);
                    b.include(origin + dir);
                }
                Part::HalfPlane { n, c } => b.include(n * c),
            }
        }
        if let Some(r) = &self.region {
            for d in &r.disks {
                b = b.union(&Aabb::around(d.center, d.radius));
            }
        }
        let size = b.width().max(b.height());
        b.inflate(1.0 + 0.25 * size)
    }
}
