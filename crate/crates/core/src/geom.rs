//! Planar vectors, unit directions, balls.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// A point or free vector in the plane. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub type Point = Vec2;

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Vec2) -> f64 {
        (self - o).norm_sq()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(theta: f64) -> Vec2 {
        Vec2::new(theta.cos(), theta.sin())
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on coordinates, treating coordinates within `tol`
    /// as equal. Used for every deterministic tie-break in the crate.
    pub fn lex_cmp(self, o: Vec2, tol: f64) -> Ordering {
        if (self.x - o.x).abs() > tol {
            return self.x.total_cmp(&o.x);
        }
        if (self.y - o.y).abs() > tol {
            return self.y.total_cmp(&o.y);
        }
        Ordering::Equal
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, c: f64) -> Vec2 {
        Vec2::new(self.x * c, self.y * c)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A direction of norm one (within `eps_unit`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec2", into = "Vec2")]
pub struct UnitVector(Vec2);

impl UnitVector {
    pub const E1: UnitVector = UnitVector(Vec2::new(1.0, 0.0));

    /// Normalizes `v`. Fails on (near-)zero or non-finite input.
    pub fn normalize(v: Vec2) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 1e-300) {
            return Err(Error::InvalidInput(format!("cannot normalize {v:?}")));
        }
        Ok(UnitVector(v * (1.0 / n)))
    }

    /// Accepts `v` only if it is already unit within `tol.eps_unit`.
    pub fn checked(v: Vec2, tol: &ToleranceConfig) -> Result<Self> {
        if (v.norm() - 1.0).abs() > tol.eps_unit {
            return Err(Error::InvalidInput(format!("{v:?} is not a unit vector")));
        }
        Ok(UnitVector(v))
    }

    pub fn from_angle(theta: f64) -> Self {
        UnitVector(Vec2::from_angle(theta))
    }

    pub fn vec(self) -> Vec2 {
        self.0
    }

    pub fn dot(self, v: Vec2) -> f64 {
        self.0.dot(v)
    }

    pub fn perp(self) -> UnitVector {
        UnitVector(self.0.perp())
    }

    pub fn neg(self) -> UnitVector {
        UnitVector(-self.0)
    }

    pub fn angle(self) -> f64 {
        self.0.angle()
    }
}

impl TryFrom<Vec2> for UnitVector {
    type Error = Error;
    fn try_from(v: Vec2) -> Result<Self> {
        UnitVector::checked(v, &ToleranceConfig::default())
    }
}

impl From<UnitVector> for Vec2 {
    fn from(u: UnitVector) -> Vec2 {
        u.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedBall {
    pub center: Point,
    pub radius: f64,
}

impl ClosedBall {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ball needs a finite center and positive finite radius, got {center:?}, {radius}"
            )));
        }
        Ok(ClosedBall { center, radius })
    }

    pub fn contains(&self, p: Point, slack: f64) -> bool {
        p.dist(self.center) <= self.radius + slack
    }

    /// The endpoints `center -+ radius * direction` of a diameter.
    pub fn opposite_points(&self, direction: UnitVector) -> (Point, Point) {
        let d = direction.vec() * self.radius;
        (self.center - d, self.center + d)
    }
}

/// `opposite_points` as a free function.
pub fn opposite_points(ball: &ClosedBall, direction: UnitVector) -> (Point, Point) {
    ball.opposite_points(direction)
}

/// The family `{ B(anchor + delta * direction; delta) : delta > 0 }`.
///
/// Every member passes through `anchor`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticBallFamily {
    pub anchor: Point,
    pub direction: UnitVector,
}

impl AsymptoticBallFamily {
    pub fn member(&self, delta: f64) -> Result<ClosedBall> {
        ClosedBall::new(self.anchor + self.direction.vec() * delta, delta)
    }
}

/// Either branch of the union-of-closed-balls property at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallOrFamily {
    Ball(ClosedBall),
    Family(AsymptoticBallFamily),
}

/// Sorts points lexicographically and drops any point within `tol` of one
/// already kept.
pub fn dedup_points(points: &mut Vec<Point>, tol: f64) {
    points.sort_by(|a, b| a.lex_cmp(*b, 0.0));
    let mut kept: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points.iter() {
        let dup = kept.iter().rev().take_while(|q| p.x - q.x <= tol).any(|q| q.dist(p) <= tol);
        if !dup {
            kept.push(p);
        }
    }
    *points = kept;
}

/// Axis-aligned box, used for sampling windows and rendering viewports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn around(p: Point, r: f64) -> Self {
        Aabb {
            min: p - Vec2::new(r, r),
            max: p + Vec2::new(r, r),
        }
    }

    pub fn empty() -> Self {
        Aabb {
            min: Vec2::new(f64::INFINITY, f64::INFINITY),
            max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.min.x <= self.max.x && self.min.y <= self.max.y)
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(mut self, o: &Aabb) -> Self {
        if !o.is_empty() {
            self.include(o.min);
            self.include(o.max);
        }
        self
    }

    pub fn inflate(self, m: f64) -> Self {
        Aabb {
            min: self.min - Vec2::new(m, m),
            max: self.max + Vec2::new(m, m),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn center(&self) -> Point {
        (self.min + self.max) * 0.5
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Parameter interval of `origin + t * dir` inside the box (slab clipping).
    pub fn clip_line(&self, origin: Point, dir: Vec2) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (o, d, a, b) in [
            (origin.x, dir.x, self.min.x, self.max.x),
            (origin.y, dir.y, self.min.y, self.max.y),
        ] {
            if d.abs() < 1e-300 {
                if o < a || o > b {
                    return None;
                }
            } else {
                let (t0, t1) = ((a - o) / d, (b - o) / d);
                lo = lo.max(t0.min(t1));
                hi = hi.min(t0.max(t1));
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

/// Wraps an angle difference into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::PI;
    let mut a = a % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Normalizes an angle into `[0, 2 pi)`.
pub fn angle_0_2pi(a: f64) -> f64 {
    use std::f64::consts::TAU;
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(c: (f64, f64), r: f64) -> ClosedBall {
        ClosedBall::new(Vec2::new(c.0, c.1), r).unwrap()
    }

    #[test]
    fn opposite_points_examples() {
        let (y, z) = opposite_points(&ball((0.0, 0.0), 1.0), UnitVector::E1);
        assert_eq!((y, z), (Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0)));
        let up = UnitVector::normalize(Vec2::new(0.0, 1.0)).unwrap();
        let (y, z) = opposite_points(&ball((1.0, 2.0), 3.0), up);
        assert_eq!((y, z), (Vec2::new(1.0, -1.0), Vec2::new(1.0, 5.0)));
    }

    #[test]
    fn opposite_points_midpoint_is_center() {
        let b = ball((0.3, -7.1), 2.25);
        for k in 0..16 {
            let u = UnitVector::from_angle(k as f64 * 0.4);
            let (y, z) = b.opposite_points(u);
            let m = (y + z) * 0.5;
            assert!(m.dist(b.center) < 1e-12);
            assert!((y.dist(z) - 2.0 * b.radius).abs() < 1e-12);
        }
    }

    #[test]
    fn diameter_trichotomy_on_grid() {
        let b = ball((0.5, -0.25), 1.5);
        let (y, z) = b.opposite_points(UnitVector::from_angle(0.7));
        for i in 0..100 {
            for j in 0..100 {
                let s = Vec2::new(-2.0 + 0.05 * i as f64, -3.0 + 0.05 * j as f64);
                let q = (s - y).dot(s - z);
                let d = s.dist(b.center) - b.radius;
                if d < -1e-9 {
                    assert!(q < 0.0);
                } else if d > 1e-9 {
                    assert!(q > 0.0);
                }
            }
        }
        for k in 0..32 {
            let s = b.center + Vec2::from_angle(k as f64 * 0.2) * b.radius;
            assert!((s - y).dot(s - z).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_rejects_bad_radius() {
        assert!(ClosedBall::new(Vec2::ZERO, 0.0).is_err());
        assert!(ClosedBall::new(Vec2::ZERO, f64::INFINITY).is_err());
    }

    #[test]
    fn unit_vector_checks() {
        let tol = ToleranceConfig::default();
        assert!(UnitVector::checked(Vec2::new(0.6, 0.8), &tol).is_ok());
        assert!(UnitVector::checked(Vec2::new(0.6, 0.81), &tol).is_err());
        assert!(UnitVector::normalize(Vec2::ZERO).is_err());
    }

    #[test]
    fn clip_line_box() {
        let b = Aabb { min: Vec2::new(-1.0, -1.0), max: Vec2::new(1.0, 1.0) };
        let (lo, hi) = b.clip_line(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));
        assert!(b.clip_line(Vec2::new(0.0, 2.0), Vec2::new(1.0, 0.0)).is_none());
    }
}
