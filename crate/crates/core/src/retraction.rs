//! Deformation retraction of the configuration space onto the spine.
//!
//! In a mixed square every point flows radially away from its nearest corner
//! until one coordinate reaches `1/2` (one robot at a pole). In a same-circle
//! square a point above the diagonal flows along the ray from corner `(0, 1)`
//! and a point below it along the ray from `(1, 0)`, until the robots are
//! antipodal. Both families fix the spine pointwise and agree on the glued
//! edges where one robot sits at the center.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{snap_half, Configuration, FlatCoord, Leg, PhysPath, Square, Sweep, POLE};
use crate::spine::{flat_to_chain, ChainPoint};

const GUARD: f64 = 1e-12;

/// Puncture corner that a flat point is pushed away from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionCorner {
    pub square: Square,
    pub corner: (u8, u8),
}

pub fn region_corner(f: &FlatCoord) -> Result<RegionCorner> {
    let f = FlatCoord::new(f.square, f.a, f.b)?;
    let corner = if f.square.is_mixed() {
        (u8::from(f.a > POLE), u8::from(f.b > POLE))
    } else if f.b > f.a {
        (0, 1)
    } else {
        (1, 0)
    };
    Ok(RegionCorner { square: f.square, corner })
}

/// Spine predicate for a flat point.
pub fn on_spine(f: &FlatCoord, tol: f64) -> bool {
    if f.square.is_mixed() {
        (f.a - POLE).abs() <= tol || (f.b - POLE).abs() <= tol
    } else {
        ((f.b - f.a).abs() - POLE).abs() <= tol
    }
}

/// Result of [`retract_flat`]: the canonical spine image and the scale
/// factor of the projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Retracted {
    pub flat: FlatCoord,
    pub scale: f64,
}

/// Projection inside the square of `f`. Returns the image coordinates and λ.
fn project(f: &FlatCoord) -> Result<(f64, f64, f64)> {
    let RegionCorner { corner, .. } = region_corner(f)?;
    if on_spine(f, GUARD) {
        return Ok((f.a, f.b, 1.0));
    }
    let (ca, cb) = (f64::from(corner.0), f64::from(corner.1));
    let (ua, ub) = (f.a - ca, f.b - cb);
    if f.square.is_mixed() {
        let m = ua.abs().max(ub.abs());
        if m < GUARD {
            return Err(Error::Singular(format!("{f} is at a corner")));
        }
        let lambda = POLE / m;
        let mut a = ca + lambda * ua;
        let mut b = cb + lambda * ub;
        if ua.abs() == m {
            a = POLE;
        }
        if ub.abs() == m {
            b = POLE;
        }
        Ok((snap_half(a), snap_half(b), lambda))
    } else {
        let gap = (f.b - f.a).abs();
        if gap < GUARD || 1.0 - gap < GUARD {
            return Err(Error::Singular(format!("{f} is at the diagonal or a corner")));
        }
        // the ray from the corner meets |b - a| = 1/2 when 1 - λ(1 - gap) = 1/2
        let lambda = POLE / (1.0 - gap);
        let a = ca + lambda * ua;
        let b = cb + lambda * ub;
        Ok((snap_half(a), snap_half(b), lambda))
    }
}

pub fn retract_flat(f: &FlatCoord) -> Result<Retracted> {
    let (a, b, scale) = project(f)?;
    let flat = FlatCoord::new(f.square, a, b)?.canonical()?;
    Ok(Retracted { flat, scale })
}

/// A configuration's spine image and the trace leading to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Retraction {
    pub spine_point: ChainPoint,
    pub trace: PhysPath,
    pub scale: f64,
}

pub fn retract(c: &Configuration) -> Result<Retraction> {
    let f = c.to_flat();
    let (mut a, mut b, scale) = project(&f)?;
    let spine_point = flat_to_chain(&FlatCoord::new(f.square, a, b)?)?;
    if spine_point.is_vertex() {
        // land exactly on the vertex so the chain walk starts where the trace ends
        a = (2.0 * a).round() / 2.0;
        b = (2.0 * b).round() / 2.0;
    }
    if a == f.a && b == f.b {
        return Ok(Retraction { spine_point, trace: PhysPath::constant(*c), scale });
    }
    let (c1, c2) = f.square.circles();
    let leg = Leg::new(Sweep::new(c1, f.a, a), Sweep::new(c2, f.b, b));
    let trace = PhysPath::from_legs(&[leg])?;
    Ok(Retraction { spine_point, trace, scale })
}
