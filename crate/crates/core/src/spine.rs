//! The spine of the configuration space as a metric chain of six circles.
//!
//! Vertices are the two cross centers (both robots at poles of different
//! circles), the H-points (robot 1 at the center, robot 2 at a pole) and the
//! V-points (robot 1 at a pole, robot 2 at the center). Every circle has
//! circumference 1 and carries its two vertices at `θ = 0` and `θ = 1/2`;
//! positive motion is `θ`-increasing on every circle.
//!
//! | circle | flat chart            | θ = 0 | θ = 1/2 |
//! |--------|-----------------------|-------|---------|
//! | `R`    | `AA`, `(θ, θ + 1/2)`  | HA    | VA      |
//! | `Bc`   | `BB`, `(θ, θ + 1/2)`  | HB    | VB      |
//! | `H1`   | `AB`, `(θ, 1/2)`      | HB    | C1      |
//! | `V1`   | `AB`, `(1/2, θ)`      | VA    | C1      |
//! | `H2`   | `BA`, `(θ, 1/2)`      | HA    | C2      |
//! | `V2`   | `BA`, `(1/2, θ)`      | VB    | C2      |

use std::fmt;

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Circle, FlatCoord, Leg, Square, Sweep, EPS, POLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChainVertex {
    C1,
    C2,
    HA,
    HB,
    VA,
    VB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChainCircle {
    R,
    Bc,
    H1,
    V1,
    H2,
    V2,
}

impl ChainVertex {
    pub const ALL: [ChainVertex; 6] =
        [ChainVertex::C1, ChainVertex::C2, ChainVertex::HA, ChainVertex::HB, ChainVertex::VA, ChainVertex::VB];

    fn index(self) -> usize {
        self as usize
    }

    /// The two circles through this vertex.
    pub fn circles(self) -> [ChainCircle; 2] {
        use ChainCircle::*;
        match self {
            ChainVertex::C1 => [H1, V1],
            ChainVertex::C2 => [H2, V2],
            ChainVertex::HA => [R, H2],
            ChainVertex::HB => [Bc, H1],
            ChainVertex::VA => [R, V1],
            ChainVertex::VB => [Bc, V2],
        }
    }

    /// Circle along which the positive direction leaves this vertex.
    pub fn designated_circle(self) -> ChainCircle {
        use ChainCircle::*;
        match self {
            ChainVertex::C1 => H1,
            ChainVertex::HB => Bc,
            ChainVertex::VB => V2,
            ChainVertex::C2 => H2,
            ChainVertex::HA => R,
            ChainVertex::VA => V1,
        }
    }

    /// Circle parameter of this vertex on `circle`, if it lies on it.
    pub fn theta_on(self, circle: ChainCircle) -> Option<f64> {
        let [low, high] = circle.vertices();
        if low == self {
            Some(0.0)
        } else if high == self {
            Some(POLE)
        } else {
            None
        }
    }

    /// Canonical flat coordinate (always in a mixed square).
    pub fn flat(self) -> FlatCoord {
        let (square, a, b) = match self {
            ChainVertex::C1 => (Square::AB, 0.5, 0.5),
            ChainVertex::C2 => (Square::BA, 0.5, 0.5),
            ChainVertex::HA => (Square::BA, 0.0, 0.5),
            ChainVertex::HB => (Square::AB, 0.0, 0.5),
            ChainVertex::VA => (Square::AB, 0.5, 0.0),
            ChainVertex::VB => (Square::BA, 0.5, 0.0),
        };
        FlatCoord { square, a, b }
    }
}

impl fmt::Display for ChainVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ChainCircle {
    pub const ALL: [ChainCircle; 6] =
        [ChainCircle::R, ChainCircle::Bc, ChainCircle::H1, ChainCircle::V1, ChainCircle::H2, ChainCircle::V2];

    /// Vertices at `θ = 0` and `θ = 1/2`.
    pub fn vertices(self) -> [ChainVertex; 2] {
        use ChainVertex::*;
        match self {
            ChainCircle::R => [HA, VA],
            ChainCircle::Bc => [HB, VB],
            ChainCircle::H1 => [HB, C1],
            ChainCircle::V1 => [VA, C1],
            ChainCircle::H2 => [HA, C2],
            ChainCircle::V2 => [VB, C2],
        }
    }

    pub fn square(self) -> Square {
        match self {
            ChainCircle::R => Square::AA,
            ChainCircle::Bc => Square::BB,
            ChainCircle::H1 | ChainCircle::V1 => Square::AB,
            ChainCircle::H2 | ChainCircle::V2 => Square::BA,
        }
    }

    /// Flat point at circle parameter `theta ∈ [0, 1]` inside [`Self::square`]
    /// (not canonicalized; `θ = 1` gives coordinate 1).
    pub fn flat_at(self, theta: f64) -> (f64, f64) {
        match self {
            ChainCircle::R | ChainCircle::Bc => {
                let b = theta + POLE;
                (theta, if b > 1.0 { b - 1.0 } else { b })
            }
            ChainCircle::H1 | ChainCircle::H2 => (theta, POLE),
            ChainCircle::V1 | ChainCircle::V2 => (POLE, theta),
        }
    }

    /// Robot motions realizing a move from `from` to `to` (unwrapped θ).
    pub fn leg(self, from: f64, to: f64) -> Leg {
        match self {
            ChainCircle::R => Leg::new(Sweep::new(Circle::A, from, to), Sweep::new(Circle::A, from + POLE, to + POLE)),
            ChainCircle::Bc => Leg::new(Sweep::new(Circle::B, from, to), Sweep::new(Circle::B, from + POLE, to + POLE)),
            ChainCircle::H1 => Leg::new(Sweep::new(Circle::A, from, to), Sweep::hold(Circle::B, POLE)),
            ChainCircle::V1 => Leg::new(Sweep::hold(Circle::A, POLE), Sweep::new(Circle::B, from, to)),
            ChainCircle::H2 => Leg::new(Sweep::new(Circle::B, from, to), Sweep::hold(Circle::A, POLE)),
            ChainCircle::V2 => Leg::new(Sweep::hold(Circle::B, POLE), Sweep::new(Circle::A, from, to)),
        }
    }
}

impl fmt::Display for ChainCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A point of the chain. Vertices are stored by identity so that equality
/// does not depend on which of the two incident circles was used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ChainPoint {
    Vertex(ChainVertex),
    Interior { circle: ChainCircle, theta: f64 },
}

impl ChainPoint {
    /// Snaps `θ` within `1e-9` of `0`, `1/2` or `1` onto the vertex.
    pub fn new(circle: ChainCircle, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::Domain(format!("circle parameter {theta} outside [0, 1]")));
        }
        let [low, high] = circle.vertices();
        if theta <= EPS || theta >= 1.0 - EPS {
            Ok(ChainPoint::Vertex(low))
        } else if (theta - POLE).abs() <= EPS {
            Ok(ChainPoint::Vertex(high))
        } else {
            Ok(ChainPoint::Interior { circle, theta })
        }
    }

    pub fn vertex(&self) -> Option<ChainVertex> {
        match *self {
            ChainPoint::Vertex(v) => Some(v),
            ChainPoint::Interior { .. } => None,
        }
    }

    pub fn is_vertex(&self) -> bool {
        self.vertex().is_some()
    }

    pub fn lies_on(&self, circle: ChainCircle) -> bool {
        self.theta_on(circle).is_some()
    }

    pub fn theta_on(&self, circle: ChainCircle) -> Option<f64> {
        match *self {
            ChainPoint::Vertex(v) => v.theta_on(circle),
            ChainPoint::Interior { circle: c, theta } => (c == circle).then_some(theta),
        }
    }

    /// Arc distance to the nearest vertex (zero for vertices).
    pub fn vertex_gap(&self) -> f64 {
        match *self {
            ChainPoint::Vertex(_) => 0.0,
            ChainPoint::Interior { theta, .. } => {
                let r = theta % POLE;
                r.min(POLE - r)
            }
        }
    }
}

impl fmt::Display for ChainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainPoint::Vertex(v) => write!(f, "{v}"),
            ChainPoint::Interior { circle, theta } => write!(f, "({circle}, {theta})"),
        }
    }
}

/// One half of a chain circle, between its two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub circle: ChainCircle,
    /// `0` for `θ ∈ [0, 1/2]`, `1` for `θ ∈ [1/2, 1]`.
    pub half: u8,
    /// Vertex at the start of the arc in the positive direction.
    pub tail: ChainVertex,
    pub head: ChainVertex,
}

impl Arc {
    pub const LENGTH: f64 = 0.5;
}

/// An oriented partial arc: motion along `circle` from `from` to `to`
/// (unwrapped circle parameters; `to > from` is the positive direction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainMove {
    pub circle: ChainCircle,
    pub from: f64,
    pub to: f64,
}

impl ChainMove {
    pub fn length(&self) -> f64 {
        (self.to - self.from).abs()
    }

    pub fn is_positive(&self) -> bool {
        self.to > self.from
    }

    pub fn leg(&self) -> Leg {
        self.circle.leg(self.from, self.to)
    }
}

/// Step of the positive-direction walk out of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Successor {
    pub circle: ChainCircle,
    pub arc: Arc,
    pub next: ChainVertex,
}

/// The chain as a metric graph: six vertices and twelve arcs of length 1/2.
#[derive(Debug, Clone)]
pub struct ChainGraph {
    graph: UnGraph<ChainVertex, Arc>,
    nodes: [NodeIndex; 6],
    vertex_dist: [[f64; 6]; 6],
}

pub fn build_chain() -> ChainGraph {
    let mut graph = UnGraph::with_capacity(6, 12);
    let nodes = ChainVertex::ALL.map(|v| graph.add_node(v));
    for circle in ChainCircle::ALL {
        let [low, high] = circle.vertices();
        let (l, h) = (nodes[low.index()], nodes[high.index()]);
        graph.add_edge(l, h, Arc { circle, half: 0, tail: low, head: high });
        graph.add_edge(h, l, Arc { circle, half: 1, tail: high, head: low });
    }
    let mut vertex_dist = [[f64::INFINITY; 6]; 6];
    for v in ChainVertex::ALL {
        let reach = dijkstra(&graph, nodes[v.index()], None, |_| Arc::LENGTH);
        for (node, d) in reach {
            vertex_dist[v.index()][graph[node].index()] = d;
        }
    }
    ChainGraph { graph, nodes, vertex_dist }
}

impl ChainGraph {
    pub fn graph(&self) -> &UnGraph<ChainVertex, Arc> {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degree(&self, v: ChainVertex) -> usize {
        self.graph.edges(self.nodes[v.index()]).count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.graph.edge_weights()
    }

    pub fn vertex_distance(&self, v: ChainVertex, w: ChainVertex) -> f64 {
        self.vertex_dist[v.index()][w.index()]
    }

    /// Shortest-path distance in the metric graph.
    pub fn distance(&self, x: &ChainPoint, y: &ChainPoint) -> f64 {
        let mut best = f64::INFINITY;
        for circle in ChainCircle::ALL {
            if let (Some(tx), Some(ty)) = (x.theta_on(circle), y.theta_on(circle)) {
                best = best.min(circle_gap(tx, ty));
            }
        }
        for (v, dx) in anchors(x) {
            for (w, dy) in anchors(y) {
                best = best.min(dx + self.vertex_distance(v, w) + dy);
            }
        }
        best
    }
}

/// Free-function form of [`ChainGraph::distance`].
pub fn dist_chain(graph: &ChainGraph, x: &ChainPoint, y: &ChainPoint) -> f64 {
    graph.distance(x, y)
}

/// Vertices reachable from `p` without leaving its circle, with distances.
fn anchors(p: &ChainPoint) -> Vec<(ChainVertex, f64)> {
    match *p {
        ChainPoint::Vertex(v) => vec![(v, 0.0)],
        ChainPoint::Interior { circle, theta } => {
            let [low, high] = circle.vertices();
            vec![(low, theta.min(1.0 - theta)), (high, (theta - POLE).abs())]
        }
    }
}

/// Distance between two parameters of one circle.
fn circle_gap(s: f64, t: f64) -> f64 {
    let d = (s - t).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Point of the chain for a flat coordinate on the spine.
pub fn flat_to_chain(f: &FlatCoord) -> Result<ChainPoint> {
    let f = f.canonical()?;
    let near_half = |x: f64| (x - POLE).abs() <= EPS;
    let circle_and_theta = match f.square {
        Square::AB | Square::BA => {
            let (horizontal, vertical) = if f.square == Square::AB {
                (ChainCircle::H1, ChainCircle::V1)
            } else {
                (ChainCircle::H2, ChainCircle::V2)
            };
            match (near_half(f.a), near_half(f.b)) {
                (true, true) => return ChainPoint::new(horizontal, POLE),
                (false, true) => (horizontal, f.a),
                (true, false) => (vertical, f.b),
                (false, false) => return Err(Error::NotOnSpine(f.to_string())),
            }
        }
        Square::AA | Square::BB => {
            if ((f.b - f.a).abs() - POLE).abs() > EPS {
                return Err(Error::NotOnSpine(f.to_string()));
            }
            (if f.square == Square::AA { ChainCircle::R } else { ChainCircle::Bc }, f.a)
        }
    };
    ChainPoint::new(circle_and_theta.0, circle_and_theta.1)
}

/// Inverse of [`flat_to_chain`].
pub fn chain_to_flat(p: &ChainPoint) -> FlatCoord {
    match *p {
        ChainPoint::Vertex(v) => v.flat(),
        ChainPoint::Interior { circle, theta } => {
            let (a, b) = circle.flat_at(theta);
            FlatCoord { square: circle.square(), a, b }
        }
    }
}

/// True when `x` and `y` are half a circle apart on a common circle.
pub fn is_antipodal(x: &ChainPoint, y: &ChainPoint) -> bool {
    ChainCircle::ALL.iter().any(|&c| antipodal_on(c, x, y))
}

pub(crate) fn antipodal_on(circle: ChainCircle, x: &ChainPoint, y: &ChainPoint) -> bool {
    match (x.theta_on(circle), y.theta_on(circle)) {
        (Some(tx), Some(ty)) => (circle_gap(tx, ty) - POLE).abs() <= EPS,
        _ => false,
    }
}

/// Positive-direction step out of a vertex.
pub fn positive_successor(v: ChainVertex) -> Successor {
    let circle = v.designated_circle();
    let [low, high] = circle.vertices();
    let (half, next) = if low == v { (0, high) } else { (1, low) };
    Successor { circle, arc: Arc { circle, half, tail: v, head: next }, next }
}

/// The circle where a point is; for a vertex, the circle the positive
/// direction leaves along.
pub fn current_circle(p: &ChainPoint) -> ChainCircle {
    match *p {
        ChainPoint::Vertex(v) => v.designated_circle(),
        ChainPoint::Interior { circle, .. } => circle,
    }
}

/// Positive move along `circle` from `p` to the next vertex.
pub(crate) fn positive_to_next_vertex(circle: ChainCircle, p: &ChainPoint) -> Result<(ChainMove, ChainVertex)> {
    let theta = p
        .theta_on(circle)
        .ok_or_else(|| Error::Domain(format!("{p} is not on circle {circle}")))?;
    let target = if theta < POLE { POLE } else { 1.0 };
    let [low, high] = circle.vertices();
    let next = if target == POLE { high } else { low };
    Ok((ChainMove { circle, from: theta, to: target }, next))
}

/// Shortest arc along `circle` from `x` to `y`; an exact half-circle tie
/// goes the positive way. `None` when the points coincide.
pub fn shortest_arc_on(circle: ChainCircle, x: &ChainPoint, y: &ChainPoint) -> Result<Option<ChainMove>> {
    let (tx, ty) = match (x.theta_on(circle), y.theta_on(circle)) {
        (Some(tx), Some(ty)) => (tx, ty),
        _ => return Err(Error::Domain(format!("{x} and {y} are not both on circle {circle}"))),
    };
    if x == y || tx == ty {
        return Ok(None);
    }
    // the lift of ty nearest to tx, preferring the positive side on a tie
    let to = [ty - 1.0, ty, ty + 1.0]
        .into_iter()
        .filter(|&c| c != tx)
        .min_by(|&c, &d| {
            let (dc, dd) = ((c - tx).abs(), (d - tx).abs());
            if (dc - dd).abs() <= EPS {
                d.total_cmp(&c)
            } else {
                dc.total_cmp(&dd)
            }
        })
        .expect("three candidates");
    Ok(Some(ChainMove { circle, from: tx, to }))
}

/// Shortest arc between two points on a common circle, preferring the
/// current circle of `x` when they share two.
pub fn shortest_arc_path(x: &ChainPoint, y: &ChainPoint) -> Result<Vec<ChainMove>> {
    let preferred = current_circle(x);
    let circle = std::iter::once(preferred)
        .chain(ChainCircle::ALL)
        .find(|&c| x.lies_on(c) && y.lies_on(c))
        .ok_or_else(|| Error::Domain(format!("{x} and {y} share no circle")))?;
    Ok(shortest_arc_on(circle, x, y)?.into_iter().collect())
}
