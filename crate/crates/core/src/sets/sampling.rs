//! Finite point sets standing in for "for all s in S".

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{dedup_points, Aabb, Point, Vec2};
use crate::sets::model::{BoundaryPoint, Part, SetModel};

/// A bounded piece of the boundary of some primitive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Curve {
    Point(Point),
    Segment(Point, Point),
    Arc { center: Point, radius: f64, start: f64, sweep: f64 },
}

impl Curve {
    pub fn length(&self) -> f64 {
        match *self {
            Curve::Point(_) => 0.0,
            Curve::Segment(a, b) => a.dist(b),
            Curve::Arc { radius, sweep, .. } => radius * sweep,
        }
    }

    pub fn at(&self, u: f64) -> Point {
        match *self {
            Curve::Point(p) => p,
            Curve::Segment(a, b) => a.lerp(b, u),
            Curve::Arc { center, radius, start, sweep } => {
                center + Vec2::from_angle(start + u * sweep) * radius
            }
        }
    }

    /// `k >= 2` points spread evenly, endpoints included.
    fn spread(&self, k: usize, out: &mut Vec<Point>) {
        if let Curve::Point(p) = self {
            out.push(*p);
            return;
        }
        let closed = matches!(self, Curve::Arc { sweep, .. } if *sweep >= TAU - 1e-12);
        let denom = if closed { k } else { k - 1 };
        out.extend((0..k).map(|i| self.at(i as f64 / denom as f64)));
    }
}

/// Parameter interval of the line `origin + t dir` inside `window`,
/// intersected with `[t_min, inf)`.
fn clipped(window: &Aabb, origin: Point, dir: Vec2, t_min: f64) -> Option<(f64, f64)> {
    let (t0, t1) = window.clip_line(origin, dir)?;
    let t0 = t0.max(t_min);
    (t1 > t0).then_some((t0, t1))
}

/// Boundary pieces of every primitive, unbounded ones clipped to `window`.
pub fn boundary_curves(model: &SetModel, window: &Aabb) -> Vec<Curve> {
    let mut out = Vec::new();
    for (_, part) in model.parts() {
        match *part {
            Part::Point { p } => out.push(Curve::Point(p)),
            Part::Segment { a, b } => out.push(Curve::Segment(a, b)),
            Part::Ray { origin, dir } => {
                if let Some((t0, t1)) = clipped(window, origin, dir, 0.0) {
                    out.push(Curve::Segment(origin + dir * t0, origin + dir * t1));
                }
            }
            Part::HalfPlane { n, c } => {
                let o = n * c;
                if let Some((t0, t1)) = clipped(window, o, n.perp(), f64::NEG_INFINITY) {
                    out.push(Curve::Segment(o + n.perp() * t0, o + n.perp() * t1));
                }
            }
        }
    }
    if let Some(r) = model.region() {
        for (_, arc) in r.boundary_arcs() {
            let d = r.disks[arc.disk];
            out.push(Curve::Arc { center: d.center, radius: d.radius, start: arc.start, sweep: arc.sweep });
        }
    }
    out
}

/// About `n` points spread over `curves` in proportion to length.
pub fn sample_curves(curves: &[Curve], n: usize) -> Vec<Point> {
    let total: f64 = curves.iter().map(Curve::length).sum();
    let mut out = Vec::with_capacity(n + 2 * curves.len());
    for c in curves {
        let share = if total > 0.0 { c.length() / total } else { 0.0 };
        let k = ((n as f64 * share).ceil() as usize).max(2);
        c.spread(k, &mut out);
    }
    out
}

/// At least `n` classified boundary points over the model's default window,
/// always including corners and tangency points.
pub fn sample_boundary(model: &SetModel, n: usize) -> Vec<BoundaryPoint> {
    sample_boundary_in(model, n, &model.default_window())
}

pub fn sample_boundary_in(model: &SetModel, n: usize, window: &Aabb) -> Vec<BoundaryPoint> {
    let mut pts = model.feature_points();
    let mut extra = n.max(1);
    loop {
        let mut all = pts.clone();
        all.extend(sample_curves(&boundary_curves(model, window), extra));
        dedup_points(&mut all, 1e-12);
        let kept: Vec<BoundaryPoint> =
            all.into_iter().filter_map(|p| model.boundary_point(p).ok()).collect();
        // Curves hidden inside another primitive's interior drop out; top up.
        if kept.len() >= n || extra > 64 * n.max(1) {
            return kept;
        }
        extra *= 2;
        pts = model.feature_points();
    }
}

/// Points of S used to discharge "for all s in S" by sampling.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub points: Vec<Point>,
    pub window: Aabb,
}

impl SampleSet {
    /// `n_boundary` points on boundary pieces plus up to `n_interior` points
    /// drawn uniformly from `int S` within `window`.
    pub fn build(model: &SetModel, n_boundary: usize, n_interior: usize, window: Aabb, seed: u64) -> Self {
        let mut points = model.feature_points();
        points.extend(sample_curves(&boundary_curves(model, &window), n_boundary));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut accepted = 0;
        for _ in 0..20 * n_interior {
            if accepted == n_interior {
                break;
            }
            let p = Vec2::new(
                rng.gen_range(window.min.x..=window.max.x),
                rng.gen_range(window.min.y..=window.max.y),
            );
            if model.is_interior(p) {
                points.push(p);
                accepted += 1;
            }
        }
        SampleSet { points, window }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Boundary points of every primitive at spacing at most `spacing` inside
/// `window`, plus geometrically spaced points on unbounded pieces beyond it.
///
/// Circles are sampled whole and filtered by membership, so this does not
/// rely on the arc decomposition of the disk region.
pub fn dense_boundary(model: &SetModel, window: &Aabb, spacing: f64) -> Vec<Point> {
    let mut out = Vec::new();
    let far = |origin: Point, dir: Vec2, t_from: f64, out: &mut Vec<Point>| {
        // Ratio 1.001 keeps the sampled distance within ~1e-4 of the true one
        // for balls of radius up to 1e3 probed against the far field.
        let mut t = t_from.max(spacing);
        while t < 1e5 {
            out.push(origin + dir * t);
            t *= 1.001;
        }
    };
    let line = |a: Point, b: Point, out: &mut Vec<Point>| {
        let k = ((a.dist(b) / spacing).ceil() as usize).max(1);
        out.extend((0..=k).map(|i| a.lerp(b, i as f64 / k as f64)));
    };
    for (_, part) in model.parts() {
        match *part {
            Part::Point { p } => out.push(p),
            Part::Segment { a, b } => line(a, b, &mut out),
            Part::Ray { origin, dir } => {
                let t1 = clipped(window, origin, dir, 0.0).map(|(t0, t1)| {
                    line(origin + dir * t0, origin + dir * t1, &mut out);
                    t1
                });
                out.push(origin);
                far(origin, dir, t1.unwrap_or(0.0), &mut out);
            }
            Part::HalfPlane { n, c } => {
                let o = n * c;
                let t = n.perp();
                let (t0, t1) = clipped(window, o, t, f64::NEG_INFINITY).unwrap_or((0.0, 0.0));
                line(o + t * t0, o + t * t1, &mut out);
                far(o, t, t1, &mut out);
                far(o, -t, -t0, &mut out);
            }
        }
    }
    if let Some(r) = model.region() {
        for d in &r.disks {
            let k = ((TAU * d.radius / spacing).ceil() as usize).max(8);
            out.extend(
                (0..k)
                    .map(|i| d.point_at(TAU * i as f64 / k as f64))
                    .filter(|p| model.contains(*p)),
            );
        }
        out.extend(r.vertex_points());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenes;

    #[test]
    fn example_2_2_boundary_has_tangent_points() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let pts = sample_boundary(&m, 100);
        assert!(pts.len() >= 100);
        let tangents: Vec<_> = pts.iter().filter(|b| b.supporting_primitives.len() == 2).collect();
        assert_eq!(tangents.len(), 3);
        assert!(pts.iter().all(|b| b.in_bdry_int));
    }

    #[test]
    fn rays_have_no_interior_boundary() {
        let m = SetModel::build(scenes::example_2_1()).unwrap();
        let pts = sample_boundary(&m, 50);
        assert!(pts.len() >= 50);
        assert!(pts.iter().all(|b| !b.in_bdry_int));
        assert!(pts.iter().any(|b| b.point.dist(Vec2::new(1.0, 0.0)) < 1e-12));
    }

    #[test]
    fn half_plane_boundary_on_line() {
        let m = SetModel::build(scenes::half_plane()).unwrap();
        let pts = sample_boundary(&m, 40);
        assert!(pts.iter().all(|b| b.point.y.abs() < 1e-12 && b.in_bdry_int));
    }

    #[test]
    fn sample_set_lies_in_s() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let set = SampleSet::build(&m, 2000, 300, m.default_window(), 7);
        assert!(set.len() > 2000);
        assert!(set.points.iter().all(|p| m.contains(*p)));
    }

    #[test]
    fn dense_boundary_spacing() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let pts = dense_boundary(&m, &m.default_window(), 0.01);
        assert!(pts.iter().all(|p| m.contains(*p)));
        // Three unit circles minus the pocket arcs, at spacing 0.01.
        assert!(pts.len() > 1200);
    }
}
