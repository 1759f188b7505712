//! Coordinates on the figure-eight track and on the two-robot configuration space.
//!
//! Each circle of the track has circumference 1 and is parametrized by
//! `s ∈ [0, 1)`: `s = 0` is the center where the two circles meet and
//! `s = 1/2` is the pole of that circle. The center belongs to both circles
//! and is always stored as `(A, 0)`.

mod flat;
mod path;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flat::{FlatCoord, Square};
pub use path::{path_concat, Leg, PhysPath, Sweep, Waypoint};

/// Tolerance for waypoint junctions and canonical comparisons.
pub const EPS: f64 = 1e-9;

/// Arc parameter of the poles.
pub const POLE: f64 = 0.5;

/// One of the two circles of the track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Circle {
    A,
    B,
}

impl Circle {
    pub fn opposite(self) -> Circle {
        match self {
            Circle::A => Circle::B,
            Circle::B => Circle::A,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Circle::A => 'A',
            Circle::B => 'B',
        }
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A position on the track: a circle label and an arc parameter in `[0, 1)`.
///
/// Values are always canonical: the center is `(A, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CirclePoint {
    circle: Circle,
    s: f64,
}

impl CirclePoint {
    pub const CENTER: CirclePoint = CirclePoint { circle: Circle::A, s: 0.0 };

    /// Validates `s ∈ [0, 1)` and returns the canonical point.
    pub fn new(circle: Circle, s: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&s) {
            return Err(Error::Domain(format!("arc parameter {s} outside [0, 1)")));
        }
        if s == 0.0 {
            return Ok(Self::CENTER);
        }
        Ok(CirclePoint { circle, s })
    }

    /// Builds a point from an unwrapped arc parameter, reducing it modulo 1.
    ///
    /// Values within `1e-12` of a multiple of `1/2` are snapped onto it so that
    /// centers and poles computed by interpolation are exact.
    pub fn wrapped(circle: Circle, s: f64) -> Self {
        let s = snap_half(s).rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        let s = if s >= 1.0 { 0.0 } else { s };
        if s == 0.0 {
            Self::CENTER
        } else {
            CirclePoint { circle, s }
        }
    }

    pub fn pole(circle: Circle) -> Self {
        CirclePoint { circle, s: POLE }
    }

    pub fn circle(&self) -> Circle {
        self.circle
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn is_center(&self) -> bool {
        self.s == 0.0
    }

    pub fn is_pole(&self) -> bool {
        self.s == POLE
    }

    /// Arc distance to the center.
    pub fn depth(&self) -> f64 {
        self.s.min(1.0 - self.s)
    }

    /// True when both points are within `tol` of each other on the track.
    pub fn approx_eq(&self, other: &CirclePoint, tol: f64) -> bool {
        dist_gamma(self, other) <= tol
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.circle, self.s)
    }
}

impl FromStr for CirclePoint {
    type Err = Error;

    /// Parses `<A|B>:<decimal>`, e.g. `A:0.25`.
    fn from_str(text: &str) -> Result<Self> {
        let (label, value) = text
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("expected <A|B>:<s>, got {text:?}")))?;
        let circle = match label.trim() {
            "A" | "a" => Circle::A,
            "B" | "b" => Circle::B,
            other => return Err(Error::Domain(format!("unknown circle {other:?}"))),
        };
        let s: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("invalid arc parameter {value:?}")))?;
        CirclePoint::new(circle, s)
    }
}

/// Path-metric distance on the track.
pub fn dist_gamma(p: &CirclePoint, q: &CirclePoint) -> f64 {
    if p.circle == q.circle || p.is_center() || q.is_center() {
        let d = (p.s - q.s).abs();
        d.min(1.0 - d)
    } else {
        p.depth() + q.depth()
    }
}

/// Rounds values within `1e-12` of a multiple of `1/2` onto it.
pub(crate) fn snap_half(s: f64) -> f64 {
    let h = (2.0 * s).round() / 2.0;
    if (s - h).abs() < 1e-12 {
        h
    } else {
        s
    }
}

/// An ordered, collision-free pair of positions. `r1` is the first (triangle)
/// robot and `r2` the second (square) robot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    r1: CirclePoint,
    r2: CirclePoint,
}

impl Configuration {
    pub fn new(r1: CirclePoint, r2: CirclePoint) -> Result<Self> {
        if r1 == r2 {
            return Err(Error::Collision(format!("both robots at {r1}")));
        }
        Ok(Configuration { r1, r2 })
    }

    /// Convenience constructor from raw `(circle, s)` pairs.
    pub fn from_raw(r1: (Circle, f64), r2: (Circle, f64)) -> Result<Self> {
        Configuration::new(CirclePoint::new(r1.0, r1.1)?, CirclePoint::new(r2.0, r2.1)?)
    }

    pub fn r1(&self) -> CirclePoint {
        self.r1
    }

    pub fn r2(&self) -> CirclePoint {
        self.r2
    }

    /// Distance between the two robots along the track.
    pub fn separation(&self) -> f64 {
        dist_gamma(&self.r1, &self.r2)
    }

    /// Maximum of the per-robot track distances.
    pub fn distance(&self, other: &Configuration) -> f64 {
        dist_gamma(&self.r1, &other.r1).max(dist_gamma(&self.r2, &other.r2))
    }

    pub fn approx_eq(&self, other: &Configuration, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn to_flat(&self) -> FlatCoord {
        FlatCoord::from_config(self)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}
