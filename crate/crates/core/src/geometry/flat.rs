use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Circle, CirclePoint, Configuration};
use crate::error::{Error, Result};

/// One of the four unit squares of the flat chart. The first letter is the
/// circle of the first robot, the second letter the circle of the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Square {
    AA,
    AB,
    BA,
    BB,
}

impl Square {
    pub const ALL: [Square; 4] = [Square::AA, Square::AB, Square::BA, Square::BB];

    pub fn from_circles(first: Circle, second: Circle) -> Square {
        match (first, second) {
            (Circle::A, Circle::A) => Square::AA,
            (Circle::A, Circle::B) => Square::AB,
            (Circle::B, Circle::A) => Square::BA,
            (Circle::B, Circle::B) => Square::BB,
        }
    }

    pub fn circles(self) -> (Circle, Circle) {
        match self {
            Square::AA => (Circle::A, Circle::A),
            Square::AB => (Circle::A, Circle::B),
            Square::BA => (Circle::B, Circle::A),
            Square::BB => (Circle::B, Circle::B),
        }
    }

    /// Robots on different circles.
    pub fn is_mixed(self) -> bool {
        matches!(self, Square::AB | Square::BA)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.circles();
        write!(f, "{x}{y}")
    }
}

/// A point of the flat representation: a square and coordinates `(a, b)`,
/// where `a` is the arc parameter of the first robot and `b` of the second.
///
/// Edges `0` and `1` of each coordinate are the center. In canonical form a
/// robot at the center has coordinate `0` and the point sits in the mixed
/// square whose letter for the center robot is opposite to the other robot's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatCoord {
    pub square: Square,
    pub a: f64,
    pub b: f64,
}

fn is_edge(x: f64) -> bool {
    x == 0.0 || x == 1.0
}

impl FlatCoord {
    /// Validates the coordinate ranges and rejects the removed points
    /// (diagonal of same-circle squares and all corners).
    pub fn new(square: Square, a: f64, b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Err(Error::Domain(format!("flat coordinate ({a}, {b}) outside [0, 1]²")));
        }
        if is_edge(a) && is_edge(b) {
            return Err(Error::Collision(format!("corner ({a}, {b}) of {square}")));
        }
        if !square.is_mixed() && a == b {
            return Err(Error::Collision(format!("diagonal point ({a}, {b}) of {square}")));
        }
        Ok(FlatCoord { square, a, b })
    }

    /// The flat chart of a configuration (canonical).
    pub fn from_config(c: &Configuration) -> FlatCoord {
        let (p, q) = (c.r1(), c.r2());
        let (square, a, b) = if p.is_center() {
            (Square::from_circles(q.circle().opposite(), q.circle()), 0.0, q.s())
        } else if q.is_center() {
            (Square::from_circles(p.circle(), p.circle().opposite()), p.s(), 0.0)
        } else {
            (Square::from_circles(p.circle(), q.circle()), p.s(), q.s())
        };
        FlatCoord { square, a, b }
    }

    /// Inverse chart. Coordinate `1` is read as the center.
    pub fn to_config(&self) -> Result<Configuration> {
        let (c1, c2) = self.square.circles();
        let p = CirclePoint::new(c1, self.a.rem_euclid(1.0))?;
        let q = CirclePoint::new(c2, self.b.rem_euclid(1.0))?;
        Configuration::new(p, q)
    }

    pub fn canonical(&self) -> Result<FlatCoord> {
        Ok(self.to_config()?.to_flat())
    }

    pub fn approx_eq(&self, other: &FlatCoord, tol: f64) -> bool {
        self.square == other.square && (self.a - other.a).abs() <= tol && (self.b - other.b).abs() <= tol
    }
}

impl fmt::Display for FlatCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.square, self.a, self.b)
    }
}
