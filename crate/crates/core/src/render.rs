//! Deterministic SVG drawings of a scene, query points and certificate balls.

use std::fmt::Write as _;

use crate::geom::{Aabb, BallOrFamily, Point, Vec2};
use crate::sets::model::Part;
use crate::sets::SetModel;
use crate::synth::Certificate;

const WIDTH: f64 = 800.0;
const FILL_S: &str = "#b9c4d0";
const FILL_OUT: &str = "#ffffff";
const BALL: &str = "#c0392b";
const NORMAL: &str = "#27ae60";

/// Bounding box of the finite scene data, the query points and the
/// certificate balls, plus a 10% margin on each side.
pub fn viewport(model: &SetModel, certs: &[Certificate], points: &[Point]) -> Aabb {
    let mut b = Aabb::empty();
    for p in model.feature_points() {
        b.include(p);
    }
    for (_, part) in model.parts() {
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
    if let Some(r) = model.region() {
        for d in &r.disks {
            b = b.union(&Aabb::around(d.center, d.radius));
        }
    }
    for p in points {
        b.include(*p);
    }
    for c in certs {
        b.include(c.x);
        if let BallOrFamily::Ball(ball) = c.result {
            b = b.union(&Aabb::around(ball.center, ball.radius));
        }
    }
    if b.is_empty() {
        b = Aabb::around(Vec2::ZERO, 1.0);
    }
    let size = b.width().max(b.height()).max(1.0);
    b.inflate(0.1 * size)
}

struct Canvas {
    view: Aabb,
    scale: f64,
    out: String,
}

impl Canvas {
    fn x(&self, p: Point) -> f64 {
        (p.x - self.view.min.x) * self.scale
    }

    /// SVG y grows downwards.
    fn y(&self, p: Point) -> f64 {
        (self.view.max.y - p.y) * self.scale
    }

    fn xy(&self, p: Point) -> String {
        format!("{:.3},{:.3}", self.x(p), self.y(p))
    }

    fn polygon(&mut self, pts: &[Point], fill: &str) {
        let d: Vec<String> = pts.iter().map(|p| self.xy(*p)).collect();
        let _ = writeln!(self.out, r#"<polygon points="{}" fill="{fill}"/>"#, d.join(" "));
    }

    fn circle(&mut self, c: Point, r: f64, style: &str) {
        let _ = writeln!(
            self.out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" {style}/>"#,
            self.x(c),
            self.y(c),
            r * self.scale
        );
    }

    fn line(&mut self, a: Point, b: Point, style: &str) {
        let _ = writeln!(
            self.out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {style}/>"#,
            self.x(a),
            self.y(a),
            self.x(b),
            self.y(b)
        );
    }
}

/// Keeps the part of a convex polygon with `<n, p> <= c`.
fn clip_half_plane(poly: &[Point], n: Vec2, c: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fa, fb) = (n.dot(a) - c, n.dot(b) - c);
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0) != (fb < 0.0) && fa != fb {
            out.push(a.lerp(b, fa / (fa - fb)));
        }
    }
    out
}

/// S in grey, the complement in white, certificate balls in red with the
/// segment from `x` to the center, normals at projections in green.
pub fn render_svg(model: &SetModel, certs: &[Certificate], points: &[Point]) -> String {
    let view = viewport(model, certs, points);
    let scale = WIDTH / view.width();
    let height = view.height() * scale;
    let mut cv = Canvas { view, scale, out: String::new() };
    let _ = writeln!(
        cv.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    );
    let _ = writeln!(cv.out, "<title>{}</title>", escape(&model.scene.name));
    let _ = writeln!(cv.out, r#"<rect width="100%" height="100%" fill="{FILL_OUT}"/>"#);
    let corners = [view.min, Vec2::new(view.max.x, view.min.y), view.max, Vec2::new(view.min.x, view.max.y)];
    let stroke = 2.5 / scale;

    if let Some(r) = model.region() {
        cv.polygon(&corners, FILL_S);
        for d in &r.disks {
            cv.circle(d.center, d.radius, &format!(r#"fill="{FILL_OUT}""#));
        }
        for (_, cycle) in r.filled_holes() {
            let mut pts = Vec::new();
            for &a in &cycle.arcs {
                let arc = &r.arcs[a];
                let d = r.disks[arc.disk];
                let k = ((arc.sweep * 24.0).ceil() as usize).max(2);
                pts.extend((0..=k).map(|i| d.point_at(arc.start + arc.sweep * i as f64 / k as f64)));
            }
            cv.polygon(&pts, FILL_OUT);
        }
    }
    let line_style = format!(r#"stroke="{FILL_S}" stroke-width="{:.3}" stroke-linecap="round""#, stroke * scale);
    for (_, part) in model.parts() {
        match *part {
            Part::HalfPlane { n, c } => {
                let poly = clip_half_plane(&corners, n, c);
                if poly.len() >= 3 {
                    cv.polygon(&poly, FILL_S);
                }
            }
            Part::Segment { a, b } => cv.line(a, b, &line_style),
            Part::Ray { origin, dir } => {
                if let Some((_, t1)) = view.clip_line(origin, dir) {
                    if t1 > 0.0 {
                        cv.line(origin, origin + dir * t1, &line_style);
                    }
                }
            }
            Part::Point { p } => cv.circle(p, 1.5 * stroke, &format!(r#"fill="{FILL_S}""#)),
        }
    }

    let thin = 1.2 / scale;
    for c in certs {
        let arrow = view.width().max(view.height()) / 6.0;
        match c.result {
            BallOrFamily::Ball(b) => {
                cv.circle(
                    b.center,
                    b.radius,
                    &format!(r#"fill="{BALL}" fill-opacity="0.12" stroke="{BALL}" stroke-width="{:.3}""#, thin * scale),
                );
                cv.line(c.x, b.center, &format!(r#"stroke="{BALL}" stroke-width="{:.3}""#, thin * scale));
            }
            BallOrFamily::Family(f) => {
                let tip = f.anchor + f.direction.vec() * arrow;
                cv.line(
                    f.anchor,
                    tip,
                    &format!(r#"stroke="{BALL}" stroke-width="{:.3}" stroke-dasharray="6 4""#, thin * scale),
                );
            }
        }
        cv.line(
            c.eval.s_x,
            c.x,
            &format!(r#"stroke="{NORMAL}" stroke-width="{:.3}" stroke-dasharray="3 3""#, thin * scale),
        );
        if let Some(xi) = c.xi_sx {
            let tip = c.eval.s_x + xi.vec() * (arrow / 2.0);
            cv.line(c.eval.s_x, tip, &format!(r#"stroke="{NORMAL}" stroke-width="{:.3}""#, thin * scale));
        }
        cv.circle(c.eval.s_x, 2.0 / scale, &format!(r#"fill="{NORMAL}""#));
    }
    for p in points.iter().chain(certs.iter().map(|c| &c.x)) {
        cv.circle(*p, 2.5 / scale, r##"fill="#000000""##);
    }
    cv.out.push_str("</svg>\n");
    cv.out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
