//! Declarative scene description and its JSON file format.
//!
//! ```json
//! {
//!   "name": "two rays",
//!   "dimension": 2,
//!   "primitives": [
//!     {"ray": {"origin": [1, 0], "direction": [1, 0]}},
//!     {"ray": {"origin": [-1, 0], "direction": [-1, 0]}}
//!   ],
//!   "fill_gaps": false,
//!   "radius_fn": {"constant": 1.0}
//! }
//! ```
//!
//! The induced closed set is the union of every ray, segment, point and
//! half-plane, together with the region left outside all excluded disks
//! (only when at least one `disk_complement` is present). With `fill_gaps`
//! the bounded pockets enclosed by the disks are excluded as well.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geom::{Point, Vec2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    /// Contributes `R^2 \ B(center; radius)` (open disk removed).
    DiskComplement { center: Point, radius: f64 },
    Ray { origin: Point, direction: Vec2 },
    Segment { a: Point, b: Point },
    /// `{ p : <normal, p> <= offset }`.
    HalfPlane { normal: Vec2, offset: f64 },
    Point { p: Point },
}

impl Primitive {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPrimitive(msg));
        match self {
            Primitive::DiskComplement { center, radius } => {
                if !center.is_finite() || !(*radius > 0.0 && radius.is_finite()) {
                    return bad(format!("disk needs finite center and radius > 0, got {center:?}, {radius}"));
                }
            }
            Primitive::Ray { origin, direction } => {
                if !origin.is_finite() || !direction.is_finite() || direction.norm() < 1e-12 {
                    return bad(format!("ray needs a finite origin and nonzero direction, got {origin:?}, {direction:?}"));
                }
            }
            Primitive::Segment { a, b } => {
                if !a.is_finite() || !b.is_finite() || a.dist(*b) < 1e-12 {
                    return bad(format!("segment endpoints must be finite and distinct, got {a:?}, {b:?}"));
                }
            }
            Primitive::HalfPlane { normal, offset } => {
                if !normal.is_finite() || normal.norm() < 1e-12 || !offset.is_finite() {
                    return bad(format!("half-plane needs a nonzero normal, got {normal:?}, {offset}"));
                }
            }
            Primitive::Point { p } => {
                if !p.is_finite() {
                    return bad(format!("point must be finite, got {p:?}"));
                }
            }
        }
        Ok(())
    }
}

/// The radius function `r(.)` on the boundary of S.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusFnSpec {
    Constant(ExtReal),
    /// `r(s) = max(a + b * |s - anchor|, floor)`.
    AffineDistance { a: f64, b: f64, anchor: Point, floor: f64 },
}

impl RadiusFnSpec {
    pub fn constant(v: f64) -> Self {
        RadiusFnSpec::Constant(ExtReal::new(v))
    }

    pub fn infinite() -> Self {
        RadiusFnSpec::Constant(ExtReal::INF)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RadiusFnSpec::Constant(ExtReal::Finite(v)) if !(*v > 0.0) => Err(Error::InvalidInput(
                format!("constant radius must be positive, got {v}"),
            )),
            RadiusFnSpec::AffineDistance { a, b, anchor, floor } => {
                if !(a.is_finite() && b.is_finite() && anchor.is_finite()) || !(*floor > 0.0 && floor.is_finite()) {
                    Err(Error::InvalidInput(format!(
                        "affine radius needs finite a, b, anchor and floor > 0, got {self:?}"
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: Point) -> ExtReal {
        match self {
            RadiusFnSpec::Constant(v) => *v,
            RadiusFnSpec::AffineDistance { a, b, anchor, floor } => {
                ExtReal::Finite((a + b * s.dist(*anchor)).max(*floor))
            }
        }
    }

    /// A minimizer of `r` over the circle `|s - center| = radius`, when `r`
    /// is non-constant on it.
    pub fn minimizer_on_circle(&self, center: Point, radius: f64) -> Option<Point> {
        match self {
            RadiusFnSpec::Constant(_) => None,
            RadiusFnSpec::AffineDistance { b, anchor, .. } => {
                let v = *anchor - center;
                let n = v.norm();
                if n < 1e-15 || *b == 0.0 {
                    return None;
                }
                let toward = v * (radius / n);
                // |s - anchor| is smallest on the near side, largest on the far side.
                Some(if *b > 0.0 { center + toward } else { center - toward })
            }
        }
    }
}

fn default_dimension() -> u32 {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub name: String,
    #[serde(default = "default_dimension")]
    pub dimension: u32,
    pub primitives: Vec<Primitive>,
    #[serde(default)]
    pub fill_gaps: bool,
    pub radius_fn: RadiusFnSpec,
}

impl SceneSpec {
    pub fn new(name: impl Into<String>, primitives: Vec<Primitive>, radius_fn: RadiusFnSpec) -> Self {
        SceneSpec {
            name: name.into(),
            dimension: 2,
            primitives,
            fill_gaps: false,
            radius_fn,
        }
    }

    pub fn with_fill_gaps(mut self, fill: bool) -> Self {
        self.fill_gaps = fill;
        self
    }

    pub fn with_radius_fn(mut self, r: RadiusFnSpec) -> Self {
        self.radius_fn = r;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SceneSpec =
            serde_json::from_str(text).map_err(|e| Error::SceneFormat(e.to_string()))?;
        if spec.dimension != 2 {
            return Err(Error::SceneFormat(format!(
                "only dimension 2 is supported, got {}",
                spec.dimension
            )));
        }
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialization cannot fail")
    }
}
