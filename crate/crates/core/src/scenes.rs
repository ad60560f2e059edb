//! Scenes bundled with the crate.

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::sets::{Primitive, RadiusFnSpec, SceneSpec};

pub const EXAMPLE_2_1_JSON: &str = include_str!("../examples/example-2.1.scene");
pub const EXAMPLE_2_2_JSON: &str = include_str!("../examples/example-2.2.scene");

/// Two collinear rays `{|x| >= 1, y = 0}` with `r = 1`.
pub fn example_2_1() -> SceneSpec {
    SceneSpec::from_json(EXAMPLE_2_1_JSON).expect("bundled scene parses")
}

/// Three mutually tangent unit disks removed, pocket filled, `r = 1`.
pub fn example_2_2() -> SceneSpec {
    SceneSpec::from_json(EXAMPLE_2_2_JSON).expect("bundled scene parses")
}

/// Example 2.2 read literally: the pocket between the disks stays in S.
pub fn example_2_2_literal() -> SceneSpec {
    let mut s = example_2_2().with_fill_gaps(false);
    s.name = "example-2.2-literal".into();
    s
}

/// `{ p : p_2 <= 0 }` with `r = +inf`.
pub fn half_plane() -> SceneSpec {
    SceneSpec::new(
        "half-plane",
        vec![Primitive::HalfPlane { normal: Vec2::new(0.0, 1.0), offset: 0.0 }],
        RadiusFnSpec::infinite(),
    )
}

/// Complement of the open disk `B(0; radius)`, with `r = radius`.
pub fn disk_complement(radius: f64) -> SceneSpec {
    SceneSpec::new(
        format!("complement-of-disk-{radius}"),
        vec![Primitive::DiskComplement { center: Vec2::ZERO, radius }],
        RadiusFnSpec::constant(radius),
    )
}

/// The x-axis as two opposite rays from the origin, with `r = +inf`.
pub fn full_line() -> SceneSpec {
    SceneSpec::new(
        "line",
        vec![
            Primitive::Ray { origin: Vec2::ZERO, direction: Vec2::new(1.0, 0.0) },
            Primitive::Ray { origin: Vec2::ZERO, direction: Vec2::new(-1.0, 0.0) },
        ],
        RadiusFnSpec::infinite(),
    )
}

/// The segment `[-1, 1] x {0}` with constant `r`. Any `r` is admissible:
/// every exterior ball tangent to a segment misses it.
pub fn segment(r: f64) -> SceneSpec {
    SceneSpec::new(
        format!("segment-{r}"),
        vec![Primitive::Segment { a: Vec2::new(-1.0, 0.0), b: Vec2::new(1.0, 0.0) }],
        RadiusFnSpec::constant(r),
    )
}

pub const NAMES: [&str; 7] =
    ["example-2.1", "example-2.2", "example-2.2-literal", "half-plane", "disk-complement", "line", "segment"];

pub fn by_name(name: &str) -> Result<SceneSpec> {
    Ok(match name {
        "example-2.1" => example_2_1(),
        "example-2.2" => example_2_2(),
        "example-2.2-literal" => example_2_2_literal(),
        "half-plane" => half_plane(),
        "disk-complement" => disk_complement(2.0),
        "line" => full_line(),
        "segment" => segment(10.0),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown bundled scene {name:?}; known: {}",
                NAMES.join(", ")
            )))
        }
    })
}
