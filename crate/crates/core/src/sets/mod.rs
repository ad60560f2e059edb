//! Scenes, the closed sets they induce, and the oracles over those sets.

pub mod arrangement;
pub mod model;
pub mod normals;
pub mod sampling;
pub mod scene;

pub use model::{BoundaryPoint, Projection, SetModel};
pub use normals::{designated_normal, proximal_normal_cone, realization_radius, FanKind, NormalFan, NormalGenerator};
pub use sampling::{sample_boundary, SampleSet};
pub use scene::{Primitive, RadiusFnSpec, SceneSpec};
