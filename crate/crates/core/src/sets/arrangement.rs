//! The region left outside a finite family of open disks.
//!
//! The boundary of the union of the closed disks is split into free arcs
//! (maximal circle arcs not covered by another closed disk). Free arcs are
//! chained at their endpoints into closed boundary cycles, each traversed
//! counter-clockwise around its own circle so that the disks lie on the left.
//! A cluster's outer boundary then has positive signed area and the boundary
//! of a bounded pocket (a "gap") has negative signed area.
//!
//! Without gap filling the region is `R^2 \ U B(c_i; r_i)`. With gap filling
//! it is the closure of the unbounded component of `R^2 \ U B[c_i; r_i]`, so
//! pockets and the arcs facing them belong to the complement.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{angle_0_2pi, wrap_angle, Point, Vec2};

/// Two arc endpoints closer than this are the same vertex.
const VERTEX_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
    /// Index of the originating primitive in the scene.
    pub primitive: usize,
}

impl Disk {
    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Vec2::from_angle(theta) * self.radius
    }

    /// Counter-clockwise unit tangent at `p` (assumed on the circle).
    pub fn tangent_at(&self, p: Point) -> Vec2 {
        ((p - self.center) * (1.0 / self.radius)).perp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeArc {
    pub disk: usize,
    /// Start angle in `[0, 2 pi)`.
    pub start: f64,
    /// Counter-clockwise sweep in `(0, 2 pi]`.
    pub sweep: f64,
    pub cycle: usize,
    pub start_vertex: Option<usize>,
    pub end_vertex: Option<usize>,
}

impl FreeArc {
    pub fn is_full(&self) -> bool {
        self.sweep >= TAU - 1e-12
    }

    pub fn end(&self) -> f64 {
        self.start + self.sweep
    }

    pub fn contains_angle(&self, theta: f64, slack: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let rel = angle_0_2pi(theta - self.start);
        rel <= self.sweep + slack || rel >= TAU - slack
    }

    pub fn length(&self, disks: &[Disk]) -> f64 {
        self.sweep * disks[self.disk].radius
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArcVertex {
    pub point: Point,
    pub arcs_in: Vec<usize>,
    pub arcs_out: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCycle {
    pub arcs: Vec<usize>,
    pub signed_area: f64,
    pub adjacent_to_infinity: bool,
}

impl BoundaryCycle {
    pub fn is_hole(&self) -> bool {
        self.signed_area < 0.0
    }
}

/// Where a point sits on the region's boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Vertex(usize),
    Arc(usize),
}

#[derive(Clone, Debug)]
pub struct DiskRegion {
    pub disks: Vec<Disk>,
    pub arcs: Vec<FreeArc>,
    pub vertices: Vec<ArcVertex>,
    pub cycles: Vec<BoundaryCycle>,
    pub fill_gaps: bool,
    eps: f64,
}

/// Nearest-point candidates of the region for an outside query.
#[derive(Clone, Debug, Default)]
pub struct RegionProjection {
    pub points: Vec<Point>,
    /// Disks whose center coincides with the query: the whole boundary part
    /// of that circle is equidistant.
    pub continuum: Vec<usize>,
}

impl DiskRegion {
    pub fn build(disks: Vec<Disk>, fill_gaps: bool, eps: f64) -> Result<Self> {
        let mut arcs = Vec::new();
        for i in 0..disks.len() {
            arcs.extend(free_arcs_of(&disks, i, eps)?);
        }

        let mut vertices: Vec<ArcVertex> = Vec::new();
        let find_or_add = |p: Point, vertices: &mut Vec<ArcVertex>| -> usize {
            if let Some(k) = vertices.iter().position(|v| v.point.dist(p) < VERTEX_TOL) {
                return k;
            }
            vertices.push(ArcVertex { point: p, arcs_in: vec![], arcs_out: vec![] });
            vertices.len() - 1
        };
        for (a, arc) in arcs.iter_mut().enumerate() {
            if arc.is_full() {
                continue;
            }
            let d = &disks[arc.disk];
            let s = find_or_add(d.point_at(arc.start), &mut vertices);
            let e = find_or_add(d.point_at(arc.end()), &mut vertices);
            vertices[s].arcs_out.push(a);
            vertices[e].arcs_in.push(a);
            arc.start_vertex = Some(s);
            arc.end_vertex = Some(e);
        }

        let mut region = DiskRegion { disks, arcs, vertices, cycles: Vec::new(), fill_gaps, eps };
        region.trace_cycles()?;
        region.classify_cycles();
        Ok(region)
    }

    fn next_arc(&self, a: usize) -> Option<usize> {
        let arc = &self.arcs[a];
        let v = &self.vertices[arc.end_vertex?];
        // TODO: vertices shared by three or more circles need an angular
        // ordering of the outgoing arcs; the first foreign arc is taken here.
        v.arcs_out
            .iter()
            .copied()
            .find(|&b| self.arcs[b].disk != arc.disk)
            .or_else(|| v.arcs_out.first().copied())
    }

    fn trace_cycles(&mut self) -> Result<()> {
        let n = self.arcs.len();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            if !self.arcs[start].is_full() {
                let mut cur = start;
                loop {
                    let next = self.next_arc(cur).ok_or_else(|| {
                        Error::InvalidPrimitive("disk arrangement has an open boundary chain".into())
                    })?;
                    if next == start {
                        break;
                    }
                    if seen[next] || members.len() > n {
                        return Err(Error::InvalidPrimitive(
                            "disk arrangement boundary chains do not close".into(),
                        ));
                    }
                    seen[next] = true;
                    members.push(next);
                    cur = next;
                }
            }
            let id = self.cycles.len();
            for &m in &members {
                self.arcs[m].cycle = id;
            }
            let signed_area = members.iter().map(|&m| self.arc_area_term(m)).sum::<f64>() * 0.5;
            self.cycles.push(BoundaryCycle { arcs: members, signed_area, adjacent_to_infinity: false });
        }
        Ok(())
    }

    fn arc_area_term(&self, a: usize) -> f64 {
        let arc = &self.arcs[a];
        let d = &self.disks[arc.disk];
        let (t0, t1) = (arc.start, arc.end());
        let r = d.radius;
        r * d.center.x * (t1.sin() - t0.sin()) - r * d.center.y * (t1.cos() - t0.cos()) + r * r * (t1 - t0)
    }

    fn classify_cycles(&mut self) {
        let holes: Vec<usize> = (0..self.cycles.len()).filter(|&c| self.cycles[c].is_hole()).collect();
        for c in 0..self.cycles.len() {
            if self.cycles[c].is_hole() {
                continue;
            }
            let arc = &self.arcs[self.cycles[c].arcs[0]];
            let d = self.disks[arc.disk];
            let mid = arc.start + 0.5 * arc.sweep;
            let dir = Vec2::from_angle(mid);
            let mut delta = 1e-6 * d.radius.max(1.0);
            let mut probe = d.center + dir * (d.radius + delta);
            for _ in 0..20 {
                if !self.in_closed_union(probe) {
                    break;
                }
                delta *= 0.5;
                probe = d.center + dir * (d.radius + delta);
            }
            let enclosed = holes.iter().any(|&h| self.winding(h, probe) != 0);
            self.cycles[c].adjacent_to_infinity = !enclosed;
        }
    }

    /// Winding number of a boundary cycle around `q`; `q` must lie outside
    /// every closed disk.
    pub fn winding(&self, cycle: usize, q: Point) -> i64 {
        let total: f64 = self.cycles[cycle]
            .arcs
            .iter()
            .filter(|&&a| !self.arcs[a].is_full())
            .map(|&a| {
                let arc = &self.arcs[a];
                let d = &self.disks[arc.disk];
                let p0 = d.point_at(arc.start) - q;
                let p1 = d.point_at(arc.end()) - q;
                wrap_angle(p1.angle() - p0.angle())
            })
            .sum();
        (total / TAU).round() as i64
    }

    fn in_closed_union(&self, p: Point) -> bool {
        self.disks.iter().any(|d| p.dist(d.center) <= d.radius)
    }

    pub fn is_boundary_arc(&self, a: usize) -> bool {
        !self.fill_gaps || self.cycles[self.arcs[a].cycle].adjacent_to_infinity
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        let vx = &self.vertices[v];
        vx.arcs_in.iter().chain(vx.arcs_out.iter()).any(|&a| self.is_boundary_arc(a))
    }

    pub fn boundary_arcs(&self) -> impl Iterator<Item = (usize, &FreeArc)> {
        self.arcs.iter().enumerate().filter(|(a, _)| self.is_boundary_arc(*a))
    }

    pub fn boundary_vertices(&self) -> impl Iterator<Item = (usize, &ArcVertex)> {
        self.vertices.iter().enumerate().filter(|(v, _)| self.is_boundary_vertex(*v))
    }

    pub fn holes(&self) -> impl Iterator<Item = (usize, &BoundaryCycle)> {
        self.cycles.iter().enumerate().filter(|(_, c)| c.is_hole())
    }

    /// Pockets excluded from the region (only when gaps are filled).
    pub fn filled_holes(&self) -> impl Iterator<Item = (usize, &BoundaryCycle)> {
        self.holes().filter(move |_| self.fill_gaps)
    }

    fn in_filled_gap(&self, q: Point) -> bool {
        self.fill_gaps && self.holes().any(|(h, _)| self.winding(h, q) != 0)
    }

    /// Locates `p` on a boundary vertex or boundary arc, within `tol`.
    pub fn locate_boundary(&self, p: Point, tol: f64) -> Option<Locus> {
        if let Some((v, _)) = self
            .boundary_vertices()
            .find(|(_, vx)| vx.point.dist(p) < VERTEX_TOL.max(tol))
        {
            return Some(Locus::Vertex(v));
        }
        for (a, arc) in self.boundary_arcs() {
            let d = &self.disks[arc.disk];
            let rel = p - d.center;
            if (rel.norm() - d.radius).abs() > tol {
                continue;
            }
            if arc.contains_angle(rel.angle(), tol / d.radius + 1e-12) {
                return Some(Locus::Arc(a));
            }
        }
        None
    }

    pub fn contains(&self, p: Point) -> bool {
        if self.disks.iter().any(|d| p.dist(d.center) < d.radius - self.eps) {
            return false;
        }
        if !self.fill_gaps {
            return true;
        }
        if self.locate_boundary(p, self.eps).is_some() {
            return true;
        }
        if self.disks.iter().any(|d| (p.dist(d.center) - d.radius).abs() <= self.eps) {
            // On a circle but not on the outer boundary: a pocket-facing arc.
            return false;
        }
        !self.in_filled_gap(p)
    }

    pub fn is_interior(&self, p: Point) -> bool {
        self.disks.iter().all(|d| p.dist(d.center) > d.radius + self.eps) && !self.in_filled_gap(p)
    }

    /// Candidate nearest points of the region for a query outside it.
    ///
    /// A nearest point lies either at a boundary vertex or in the relative
    /// interior of a boundary arc, where it must be the radial projection of
    /// the query onto that circle.
    pub fn projection_candidates(&self, x: Point) -> RegionProjection {
        let mut out = RegionProjection::default();
        for (k, d) in self.disks.iter().enumerate() {
            let on_boundary = self.boundary_arcs().any(|(_, a)| a.disk == k);
            if !on_boundary {
                continue;
            }
            let v = x - d.center;
            let n = v.norm();
            if n <= 1e-12 * d.radius {
                out.continuum.push(k);
                continue;
            }
            let theta = v.angle();
            let hit = self
                .boundary_arcs()
                .any(|(_, a)| a.disk == k && a.contains_angle(theta, 1e-12));
            if hit {
                out.points.push(d.center + v * (d.radius / n));
            }
        }
        out.points.extend(self.boundary_vertices().map(|(_, v)| v.point));
        out
    }

    /// Boundary arcs lying on circle `k`.
    pub fn boundary_arcs_of(&self, k: usize) -> impl Iterator<Item = &FreeArc> {
        self.boundary_arcs().filter(move |(_, a)| a.disk == k).map(|(_, a)| a)
    }

    /// Generators of the tangent cone of the region at a boundary point.
    pub fn tangent_generators(&self, p: Point, tol: f64) -> Vec<Vec2> {
        match self.locate_boundary(p, tol) {
            Some(Locus::Vertex(v)) => {
                let vx = &self.vertices[v];
                let mut out = Vec::new();
                for &a in &vx.arcs_out {
                    if self.is_boundary_arc(a) {
                        out.push(self.disks[self.arcs[a].disk].tangent_at(vx.point));
                    }
                }
                for &a in &vx.arcs_in {
                    if self.is_boundary_arc(a) {
                        out.push(-self.disks[self.arcs[a].disk].tangent_at(vx.point));
                    }
                }
                out
            }
            Some(Locus::Arc(a)) => {
                let d = &self.disks[self.arcs[a].disk];
                let outward = (p - d.center) * (1.0 / p.dist(d.center));
                let t = outward.perp();
                vec![t, -t, outward]
            }
            None => Vec::new(),
        }
    }

    /// Closed-disk circle-circle contact points (crossings and tangencies).
    pub fn vertex_points(&self) -> Vec<Point> {
        self.boundary_vertices().map(|(_, v)| v.point).collect()
    }
}

fn free_arcs_of(disks: &[Disk], i: usize, eps: f64) -> Result<Vec<FreeArc>> {
    let di = disks[i];
    let mut cuts = Vec::new();
    for (j, dj) in disks.iter().enumerate() {
        if j == i {
            continue;
        }
        let v = dj.center - di.center;
        let d = v.norm();
        let tol = eps * (1.0 + di.radius + dj.radius);
        if d < tol && (di.radius - dj.radius).abs() < tol {
            return Err(Error::InvalidPrimitive(format!(
                "disks {} and {} coincide",
                di.primitive, dj.primitive
            )));
        }
        if d + di.radius <= dj.radius + tol {
            // Covered by a closed disk (internal tangency included).
            return Ok(Vec::new());
        }
        if d >= di.radius + dj.radius + tol || d + dj.radius <= di.radius - tol {
            continue;
        }
        let phi = v.angle();
        if (d - (di.radius + dj.radius)).abs() <= tol || (d + dj.radius - di.radius).abs() <= tol {
            cuts.push(angle_0_2pi(phi));
        } else {
            let a = (d * d + di.radius * di.radius - dj.radius * dj.radius) / (2.0 * d);
            let delta = (a / di.radius).clamp(-1.0, 1.0).acos();
            cuts.push(angle_0_2pi(phi - delta));
            cuts.push(angle_0_2pi(phi + delta));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if cuts.len() > 1 && (cuts[0] + TAU - cuts[cuts.len() - 1]) < 1e-12 {
        cuts.pop();
    }

    let free = |theta: f64| {
        let p = di.point_at(theta);
        disks
            .iter()
            .enumerate()
            .all(|(j, dj)| j == i || p.dist(dj.center) > dj.radius)
    };
    let mut out = Vec::new();
    if cuts.is_empty() {
        if free(0.0) && free(PI) {
            out.push(FreeArc { disk: i, start: 0.0, sweep: TAU, cycle: 0, start_vertex: None, end_vertex: None });
        }
        return Ok(out);
    }
    let m = cuts.len();
    for k in 0..m {
        let a = cuts[k];
        let b = if k + 1 < m { cuts[k + 1] } else { cuts[0] + TAU };
        if b - a < 1e-12 {
            continue;
        }
        if free(0.5 * (a + b)) {
            out.push(FreeArc { disk: i, start: a, sweep: b - a, cycle: 0, start_vertex: None, end_vertex: None });
        }
    }
    Ok(out)
}
