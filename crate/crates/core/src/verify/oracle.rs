//! Brute-force distance oracles on discretized copies of the track and of
//! the chain, used to cross-check the closed-form metrics.

use std::collections::{HashMap, VecDeque};

use crate::geometry::{Circle, CirclePoint};
use crate::spine::{ChainCircle, ChainPoint};

/// Unweighted graph with unit-length edges, stored as adjacency lists.
#[derive(Debug, Clone)]
struct Grid {
    adj: Vec<Vec<usize>>,
    step: f64,
}

impl Grid {
    fn bfs(&self, from: usize, to: usize) -> f64 {
        let mut seen = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = 0;
        while let Some(x) = queue.pop_front() {
            if x == to {
                return seen[x] as f64 * self.step;
            }
            for &y in &self.adj[x] {
                if seen[y] == usize::MAX {
                    seen[y] = seen[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        f64::INFINITY
    }
}

/// Builds `rings` cycles of `per_ring` nodes each, where `shared` maps a
/// `(ring, k)` position to a node id common to several rings.
fn build(rings: usize, per_ring: usize, shared: &dyn Fn(usize, usize) -> Option<usize>, n_shared: usize) -> (Grid, HashMap<(usize, usize), usize>) {
    let mut ids = HashMap::new();
    let mut next = n_shared;
    for r in 0..rings {
        for k in 0..per_ring {
            let id = shared(r, k).unwrap_or_else(|| {
                next += 1;
                next - 1
            });
            ids.insert((r, k), id);
        }
    }
    let mut adj = vec![Vec::new(); next];
    for r in 0..rings {
        for k in 0..per_ring {
            let (x, y) = (ids[&(r, k)], ids[&(r, (k + 1) % per_ring)]);
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    (Grid { adj, step: 1.0 / per_ring as f64 }, ids)
}

fn grid_index(s: f64, per_ring: usize) -> usize {
    ((s * per_ring as f64).round() as usize) % per_ring
}

/// The figure eight with `per_circle` nodes on each circle.
pub struct TrackOracle {
    grid: Grid,
    ids: HashMap<(usize, usize), usize>,
    per_circle: usize,
}

impl TrackOracle {
    pub fn new(per_circle: usize) -> Self {
        let (grid, ids) = build(2, per_circle, &|_, k| (k == 0).then_some(0), 1);
        TrackOracle { grid, ids, per_circle }
    }

    pub fn step(&self) -> f64 {
        self.grid.step
    }

    fn node(&self, p: &CirclePoint) -> usize {
        let ring = match p.circle() {
            Circle::A => 0,
            Circle::B => 1,
        };
        self.ids[&(ring, grid_index(p.s(), self.per_circle))]
    }

    pub fn distance(&self, p: &CirclePoint, q: &CirclePoint) -> f64 {
        self.grid.bfs(self.node(p), self.node(q))
    }
}

/// The necklace of six circles with `per_circle` nodes on each circle; the
/// nodes at `θ = 0` and `θ = 1/2` are the shared vertices.
pub struct ChainOracle {
    grid: Grid,
    ids: HashMap<(usize, usize), usize>,
    per_circle: usize,
}

impl ChainOracle {
    pub fn new(per_circle: usize) -> Self {
        assert!(per_circle % 2 == 0, "vertices need a node at θ = 1/2");
        let half = per_circle / 2;
        let shared = move |r: usize, k: usize| {
            let [low, high] = ChainCircle::ALL[r].vertices();
            match k {
                0 => Some(low as usize),
                k if k == half => Some(high as usize),
                _ => None,
            }
        };
        let (grid, ids) = build(6, per_circle, &shared, 6);
        ChainOracle { grid, ids, per_circle }
    }

    pub fn step(&self) -> f64 {
        self.grid.step
    }

    fn node(&self, p: &ChainPoint) -> usize {
        match *p {
            ChainPoint::Vertex(v) => v as usize,
            ChainPoint::Interior { circle, theta } => {
                let r = ChainCircle::ALL.iter().position(|&c| c == circle).expect("known circle");
                self.ids[&(r, grid_index(theta, self.per_circle))]
            }
        }
    }

    pub fn distance(&self, p: &ChainPoint, q: &ChainPoint) -> f64 {
        self.grid.bfs(self.node(p), self.node(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::ChainVertex;

    #[test]
    fn small_track() {
        let o = TrackOracle::new(10);
        let a = CirclePoint::new(Circle::A, 0.3).unwrap();
        let b = CirclePoint::new(Circle::B, 0.8).unwrap();
        assert!((o.distance(&a, &b) - 0.5).abs() < 1e-12);
        assert_eq!(o.distance(&a, &a), 0.0);
    }

    #[test]
    fn small_chain() {
        let o = ChainOracle::new(10);
        let d = o.distance(&ChainPoint::Vertex(ChainVertex::HA), &ChainPoint::Vertex(ChainVertex::HB));
        assert!((d - 1.5).abs() < 1e-12);
    }
}
