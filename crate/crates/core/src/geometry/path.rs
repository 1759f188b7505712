//! Piecewise-linear trajectories in the configuration space.
//!
//! A [`PhysPath`] is a list of timed waypoints. Between two consecutive
//! waypoints each robot moves at constant speed along the unique arc of length
//! `< 1/2` joining its two positions, and that arc never passes through the
//! center or a pole except at its ends. Constructors split motions at every
//! center and pole crossing so that this holds.

use super::{dist_gamma, snap_half, Circle, CirclePoint, Configuration, EPS, POLE};
use crate::error::{Error, Result};

/// Motion of one robot along one circle, with unwrapped arc parameters
/// (`from = 0.9, to = 1.1` crosses the center).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub circle: Circle,
    pub from: f64,
    pub to: f64,
}

impl Sweep {
    pub fn new(circle: Circle, from: f64, to: f64) -> Self {
        Sweep { circle, from, to }
    }

    pub fn hold(circle: Circle, s: f64) -> Self {
        Sweep { circle, from: s, to: s }
    }

    pub fn travel(&self) -> f64 {
        (self.to - self.from).abs()
    }

    fn value(&self, u: f64) -> f64 {
        snap_half(self.from + u * (self.to - self.from))
    }

    pub fn at(&self, u: f64) -> CirclePoint {
        CirclePoint::wrapped(self.circle, self.value(u))
    }

    /// Parameters in `(0, 1)` where the sweep crosses a center or a pole.
    fn crossings(&self) -> Vec<f64> {
        if self.from == self.to {
            return Vec::new();
        }
        let (lo, hi) = (self.from.min(self.to), self.from.max(self.to));
        let first = (2.0 * lo).floor() as i64;
        let last = (2.0 * hi).ceil() as i64;
        (first..=last)
            .map(|k| k as f64 / 2.0)
            .filter(|&h| h > lo + 1e-12 && h < hi - 1e-12)
            .map(|h| (h - self.from) / (self.to - self.from))
            .collect()
    }
}

/// Simultaneous motion of both robots, affine in a common parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub r1: Sweep,
    pub r2: Sweep,
}

impl Leg {
    pub fn new(r1: Sweep, r2: Sweep) -> Self {
        Leg { r1, r2 }
    }

    /// Largest per-robot travel; legs are timed by this length.
    pub fn length(&self) -> f64 {
        self.r1.travel().max(self.r2.travel())
    }

    pub fn config_at(&self, u: f64) -> Result<Configuration> {
        Configuration::new(self.r1.at(u), self.r2.at(u))
    }

    pub fn start(&self) -> Result<Configuration> {
        self.config_at(0.0)
    }

    pub fn end(&self) -> Result<Configuration> {
        self.config_at(1.0)
    }

    fn cuts(&self) -> Vec<f64> {
        let mut us = self.r1.crossings();
        us.extend(self.r2.crossings());
        us.push(1.0);
        us.sort_by(f64::total_cmp);
        us.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
        let mut cuts = Vec::with_capacity(us.len() + 2);
        let mut prev = 0.0;
        for u in us {
            // a half-circle traversal would make the waypoint pair ambiguous
            if (u - prev) * self.length() >= POLE - 1e-12 {
                cuts.push(0.5 * (prev + u));
            }
            cuts.push(u);
            prev = u;
        }
        cuts
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub t: f64,
    pub config: Configuration,
}

/// Motion of one robot between two consecutive waypoints.
#[derive(Debug, Clone, Copy)]
enum Motion {
    Hold(CirclePoint),
    Move { circle: Circle, from: f64, to: f64 },
}

impl Motion {
    fn between(p: CirclePoint, q: CirclePoint) -> Result<Motion> {
        if p == q {
            return Ok(Motion::Hold(p));
        }
        let circle = if p.is_center() {
            q.circle()
        } else if q.is_center() || p.circle() == q.circle() {
            p.circle()
        } else {
            return Err(Error::Contract(format!("robot jumps from {p} to {q} without passing the center")));
        };
        let (mut from, mut to) = (p.s(), q.s());
        if p.is_center() && to > POLE {
            from = 1.0;
        }
        if q.is_center() && from > POLE {
            to = 1.0;
        }
        let (lo, hi) = (from.min(to), from.max(to));
        if hi - lo >= POLE || (lo < POLE && POLE < hi) {
            return Err(Error::Contract(format!(
                "motion from {p} to {q} crosses a center or pole between waypoints"
            )));
        }
        Ok(Motion::Move { circle, from, to })
    }

    fn at(&self, u: f64) -> CirclePoint {
        match *self {
            Motion::Hold(p) => p,
            Motion::Move { circle, from, to } => CirclePoint::wrapped(circle, from + u * (to - from)),
        }
    }

    fn travel(&self) -> f64 {
        match *self {
            Motion::Hold(_) => 0.0,
            Motion::Move { from, to, .. } => (to - from).abs(),
        }
    }

    /// Circle occupied in the open interior of the segment; `None` for a
    /// robot parked at the center.
    fn interior_circle(&self) -> Option<Circle> {
        match *self {
            Motion::Hold(p) if p.is_center() => None,
            Motion::Hold(p) => Some(p.circle()),
            Motion::Move { circle, .. } => Some(circle),
        }
    }

    fn value(&self, u: f64) -> f64 {
        match *self {
            Motion::Hold(p) => p.s(),
            Motion::Move { from, to, .. } => from + u * (to - from),
        }
    }
}

/// Exact minimum robot separation over one waypoint segment.
///
/// The separation is piecewise affine in time; its breakpoints are the
/// segment ends and, for robots sharing a circle, the times where their arc
/// parameters differ by a multiple of `1/2`.
fn segment_min_separation(p: &Configuration, q: &Configuration) -> Result<f64> {
    let m1 = Motion::between(p.r1(), q.r1())?;
    let m2 = Motion::between(p.r2(), q.r2())?;
    let mut candidates = vec![0.0, 1.0];
    if let (Some(c1), Some(c2)) = (m1.interior_circle(), m2.interior_circle()) {
        if c1 == c2 {
            let d0 = m1.value(0.0) - m2.value(0.0);
            let d1 = m1.value(1.0) - m2.value(1.0);
            if d1 != d0 {
                let (lo, hi) = (d0.min(d1), d0.max(d1));
                for k in (2.0 * lo).floor() as i64..=(2.0 * hi).ceil() as i64 {
                    let u = (k as f64 / 2.0 - d0) / (d1 - d0);
                    if u > 0.0 && u < 1.0 {
                        candidates.push(u);
                    }
                }
            }
        }
    }
    Ok(candidates
        .into_iter()
        .map(|u| dist_gamma(&m1.at(u), &m2.at(u)))
        .fold(f64::INFINITY, f64::min))
}

/// A timed, collision-free trajectory of both robots over `t ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysPath {
    waypoints: Vec<Waypoint>,
}

impl PhysPath {
    /// Validates and wraps a waypoint list.
    pub fn new(waypoints: Vec<Waypoint>) -> Result<Self> {
        let path = PhysPath { waypoints };
        path.validate()?;
        Ok(path)
    }

    pub fn constant(c: Configuration) -> Self {
        PhysPath {
            waypoints: vec![Waypoint { t: 0.0, config: c }, Waypoint { t: 1.0, config: c }],
        }
    }

    /// Builds a path from consecutive legs, timed by per-leg length and split
    /// at every center and pole crossing. Zero-length legs only contribute
    /// their junction check.
    pub fn from_legs(legs: &[Leg]) -> Result<Self> {
        let first = legs.first().ok_or_else(|| Error::Contract("no legs".into()))?;
        let start = first.start()?;
        let mut points: Vec<(f64, Configuration)> = vec![(0.0, start)];
        let mut elapsed = 0.0;
        for leg in legs {
            let last = points.last().expect("non-empty").1;
            let leg_start = leg.start()?;
            if !last.approx_eq(&leg_start, EPS) {
                return Err(Error::Contract(format!("leg starts at {leg_start}, previous leg ends at {last}")));
            }
            let len = leg.length();
            if len == 0.0 {
                continue;
            }
            for u in leg.cuts() {
                points.push((elapsed + u * len, leg.config_at(u)?));
            }
            elapsed += len;
        }
        if elapsed == 0.0 {
            return Ok(PhysPath::constant(start));
        }
        let n = points.len();
        let waypoints = points
            .into_iter()
            .enumerate()
            .map(|(i, (d, config))| Waypoint { t: if i + 1 == n { 1.0 } else { d / elapsed }, config })
            .collect();
        PhysPath::new(waypoints)
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.waypoints;
        if w.len() < 2 {
            return Err(Error::Contract("a path needs at least two waypoints".into()));
        }
        if w[0].t != 0.0 || w[w.len() - 1].t != 1.0 {
            return Err(Error::Contract("path time must run from 0 to 1".into()));
        }
        for pair in w.windows(2) {
            if pair[1].t <= pair[0].t {
                return Err(Error::Contract(format!("time not increasing at t = {}", pair[0].t)));
            }
            let sep = segment_min_separation(&pair[0].config, &pair[1].config)?;
            if sep <= 0.0 {
                return Err(Error::Collision(format!(
                    "robots meet between {} and {}",
                    pair[0].config, pair[1].config
                )));
            }
        }
        Ok(())
    }

    pub fn waypoints(&self) -> &[Waypoint] {
        &self.waypoints
    }

    pub fn start(&self) -> Configuration {
        self.waypoints[0].config
    }

    pub fn end(&self) -> Configuration {
        self.waypoints[self.waypoints.len() - 1].config
    }

    pub fn segment_count(&self) -> usize {
        self.waypoints.len() - 1
    }

    fn motions(&self, k: usize) -> (Motion, Motion) {
        let (p, q) = (&self.waypoints[k].config, &self.waypoints[k + 1].config);
        // validated on construction
        let m1 = Motion::between(p.r1(), q.r1()).expect("validated segment");
        let m2 = Motion::between(p.r2(), q.r2()).expect("validated segment");
        (m1, m2)
    }

    /// Positions of both robots at time `t` (clamped to `[0, 1]`).
    pub fn positions_at(&self, t: f64) -> (CirclePoint, CirclePoint) {
        let t = t.clamp(0.0, 1.0);
        let k = self.waypoints.partition_point(|w| w.t <= t).saturating_sub(1).min(self.segment_count() - 1);
        let (t0, t1) = (self.waypoints[k].t, self.waypoints[k + 1].t);
        let u = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
        let (m1, m2) = self.motions(k);
        (m1.at(u), m2.at(u))
    }

    pub fn at(&self, t: f64) -> Result<Configuration> {
        let (p, q) = self.positions_at(t);
        Configuration::new(p, q)
    }

    /// Sum over segments of the largest per-robot travel.
    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|k| {
                let (m1, m2) = self.motions(k);
                m1.travel().max(m2.travel())
            })
            .sum()
    }

    /// The same trajectory run backwards.
    pub fn reversed(&self) -> PhysPath {
        let waypoints = self
            .waypoints
            .iter()
            .rev()
            .map(|w| Waypoint { t: 1.0 - w.t, config: w.config })
            .collect();
        PhysPath { waypoints }
    }

    /// Concatenation, reparametrized in proportion to the lengths of the two
    /// pieces. The junction waypoint is kept once.
    pub fn concat(&self, back: &PhysPath) -> Result<PhysPath> {
        if !self.end().approx_eq(&back.start(), EPS) {
            return Err(Error::Contract(format!(
                "path ends at {} but the next starts at {}",
                self.end(),
                back.start()
            )));
        }
        let (lf, lb) = (self.length(), back.length());
        if lf + lb == 0.0 {
            return Ok(PhysPath::constant(self.start()));
        }
        let split = lf / (lf + lb);
        let mut waypoints: Vec<Waypoint> = if lf == 0.0 {
            vec![Waypoint { t: 0.0, config: self.start() }]
        } else {
            self.waypoints.iter().map(|w| Waypoint { t: w.t * split, config: w.config }).collect()
        };
        if lb == 0.0 {
            let last = waypoints.len() - 1;
            waypoints[last].t = 1.0;
            if waypoints.len() == 1 {
                waypoints.push(Waypoint { t: 1.0, config: self.end() });
                waypoints[0].t = 0.0;
            }
        } else {
            waypoints.extend(
                back.waypoints[1..].iter().map(|w| Waypoint { t: split + w.t * (1.0 - split), config: w.config }),
            );
            let last = waypoints.len() - 1;
            waypoints[last].t = 1.0;
        }
        PhysPath::new(waypoints)
    }

    /// Minimum robot separation over `n ≥ 2` uniform samples per segment.
    pub fn min_separation(&self, n: usize) -> f64 {
        let n = n.max(2);
        let mut best = f64::INFINITY;
        for k in 0..self.segment_count() {
            let (m1, m2) = self.motions(k);
            for i in 0..n {
                let u = i as f64 / (n - 1) as f64;
                best = best.min(dist_gamma(&m1.at(u), &m2.at(u)));
            }
        }
        best
    }

    /// Exact minimum robot separation over the whole path.
    pub fn exact_min_separation(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|pair| segment_min_separation(&pair[0].config, &pair[1].config).expect("validated segment"))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest per-robot distance between two paths over `n ≥ 2` common
    /// time samples.
    pub fn sup_distance(&self, other: &PhysPath, n: usize) -> f64 {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                let (p1, p2) = self.positions_at(t);
                let (q1, q2) = other.positions_at(t);
                dist_gamma(&p1, &q1).max(dist_gamma(&p2, &q2))
            })
            .fold(0.0, f64::max)
    }
}

/// Free-function form of [`PhysPath::concat`].
pub fn path_concat(front: &PhysPath, back: &PhysPath) -> Result<PhysPath> {
    front.concat(back)
}
