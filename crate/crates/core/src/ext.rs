//! Extended nonnegative reals `[0, +inf]`.
//!
//! Radii and distances in this crate live in `]0, +inf]`, and the `+inf`
//! branch changes the shape of what gets built (a one-parameter family of
//! tangent balls instead of a single ball). A sum type keeps that dispatch
//! explicit instead of hiding it behind `f64::INFINITY`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub const INF: ExtReal = ExtReal::Infinite;

    /// Wraps a finite value. `f64::INFINITY` maps to `Infinite`; NaN panics.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "ExtReal cannot hold NaN");
        if v == f64::INFINITY {
            ExtReal::Infinite
        } else {
            ExtReal::Finite(v)
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinite)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinite => None,
        }
    }

    /// Value as `f64`, with `+inf` mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Multiplication by a nonnegative scalar; `inf * c = inf` for `c > 0`.
    pub fn scale(self, c: f64) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v * c),
            ExtReal::Infinite if c > 0.0 => ExtReal::Infinite,
            ExtReal::Infinite => ExtReal::Finite(0.0),
        }
    }

    pub fn half(self) -> ExtReal {
        self.scale(0.5)
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::new(v)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl ExtReal {
    /// Total order: `+inf` dominates every finite value and equals itself.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Infinite, ExtReal::Infinite) => Ordering::Equal,
            (ExtReal::Infinite, _) => Ordering::Greater,
            (_, ExtReal::Infinite) => Ordering::Less,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinite => write!(f, "inf"),
        }
    }
}

// Serialized as a JSON number, or the string "inf".
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => ser.serialize_f64(*v),
            ExtReal::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(v) if v.is_nan() => Err(serde::de::Error::custom("NaN is not an extended real")),
            Raw::Num(v) => Ok(ExtReal::new(v)),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "+inf" | "infinity" | "Infinity") => {
                Ok(ExtReal::Infinite)
            }
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}
