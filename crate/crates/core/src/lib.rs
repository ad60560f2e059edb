//! Closed-ball coverings of the complement of planar closed sets.

pub mod cli;
pub mod error;
pub mod ext;
pub mod geom;
pub mod oracle;
pub mod proxcheck;
pub mod radius;
pub mod render;
pub mod scenes;
pub mod sets;
pub mod synth;
pub mod tolerance;

pub use error::{Error, Result};
pub use ext::ExtReal;
pub use geom::{AsymptoticBallFamily, BallOrFamily, ClosedBall, Point, UnitVector, Vec2};
pub use tolerance::ToleranceConfig;
