//! The three continuous instructions on the chain and the full planner.
//!
//! A pair of chain points falls into exactly one domain:
//!
//! * `U3`: both points are vertices;
//! * `U2`: otherwise, one of them is a vertex or they are antipodal on a
//!   common circle;
//! * `U1`: everything else.
//!
//! Each domain has its own instruction, and each instruction is continuous on
//! its domain.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CirclePoint, Configuration, PhysPath, Waypoint, EPS};
use crate::retraction::{on_spine, retract};
use crate::spine::{
    antipodal_on, chain_to_flat, current_circle, is_antipodal, positive_successor, positive_to_next_vertex,
    shortest_arc_on, ChainCircle, ChainMove, ChainPoint, ChainVertex,
};

const MAX_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InstructionDomain {
    U1,
    U2,
    U3,
}

impl InstructionDomain {
    pub const ALL: [InstructionDomain; 3] = [InstructionDomain::U1, InstructionDomain::U2, InstructionDomain::U3];

    pub fn instruction(self) -> u8 {
        match self {
            InstructionDomain::U1 => 1,
            InstructionDomain::U2 => 2,
            InstructionDomain::U3 => 3,
        }
    }
}

impl fmt::Display for InstructionDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_domain(i: &ChainPoint, f: &ChainPoint) -> InstructionDomain {
    if i.is_vertex() && f.is_vertex() {
        InstructionDomain::U3
    } else if i.is_vertex() || f.is_vertex() || is_antipodal(i, f) {
        InstructionDomain::U2
    } else {
        InstructionDomain::U1
    }
}

fn walk(i: &ChainPoint, f: &ChainPoint, antipodal_goes_positive: bool) -> Result<Vec<ChainMove>> {
    let mut path = Vec::new();
    if i == f {
        return Ok(path);
    }
    let mut current = *i;
    for _ in 0..MAX_STEPS {
        let circle = current_circle(&current);
        if f.lies_on(circle) {
            if antipodal_goes_positive && antipodal_on(circle, &current, f) {
                let from = current.theta_on(circle).expect("current point is on its circle");
                path.push(ChainMove { circle, from, to: from + 0.5 });
            } else {
                path.extend(shortest_arc_on(circle, &current, f)?);
            }
            return Ok(path);
        }
        let (step, next) = positive_to_next_vertex(circle, &current)?;
        path.push(step);
        current = ChainPoint::Vertex(next);
    }
    panic!("walk from {i} to {f} did not finish in {MAX_STEPS} steps");
}

/// Instruction for generic pairs: walk positively until the target's circle
/// is current, then take the shortest arc.
pub fn instruction1(i: &ChainPoint, f: &ChainPoint) -> Result<Vec<ChainMove>> {
    walk(i, f, false)
}

/// Instruction for pairs with a vertex or an antipodal pair: as
/// [`instruction1`], but an antipodal target on the current circle is
/// reached by the positive half circle.
pub fn instruction2(i: &ChainPoint, f: &ChainPoint) -> Result<Vec<ChainMove>> {
    walk(i, f, true)
}

/// Instruction for vertex pairs: follow the positive successors.
pub fn instruction3(i: ChainVertex, f: ChainVertex) -> Vec<ChainMove> {
    let mut path = Vec::new();
    let mut v = i;
    while v != f {
        assert!(path.len() < 6, "successor walk from {i} missed {f}");
        let s = positive_successor(v);
        let from = v.theta_on(s.circle).expect("vertex lies on its designated circle");
        path.push(ChainMove { circle: s.circle, from, to: from + 0.5 });
        v = s.next;
    }
    path
}

/// Chain path for a pair of spine points, dispatched on its domain.
pub fn chain_path(i: &ChainPoint, f: &ChainPoint) -> Result<(InstructionDomain, Vec<ChainMove>)> {
    let domain = classify_domain(i, f);
    let path = match domain {
        InstructionDomain::U1 => instruction1(i, f)?,
        InstructionDomain::U2 => instruction2(i, f)?,
        InstructionDomain::U3 => instruction3(i.vertex().expect("U3"), f.vertex().expect("U3")),
    };
    Ok((domain, path))
}

pub fn chain_length(path: &[ChainMove]) -> f64 {
    path.iter().map(ChainMove::length).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub initial: Configuration,
    pub target: Configuration,
    pub domain: InstructionDomain,
    pub start_spine: ChainPoint,
    pub end_spine: ChainPoint,
    pub chain_path: Vec<ChainMove>,
    pub trace_in: PhysPath,
    /// The chain path in physical coordinates.
    pub middle: PhysPath,
    pub trace_out: PhysPath,
    pub full_path: PhysPath,
    pub hop_count: usize,
}

fn chain_config(p: &ChainPoint) -> Result<Configuration> {
    chain_to_flat(p).to_config()
}

/// Plans a collision-free motion from `i` to `f`.
pub fn plan(i: &Configuration, f: &Configuration) -> Result<Plan> {
    let rin = retract(i)?;
    let rout = retract(f)?;
    let (domain, moves) = chain_path(&rin.spine_point, &rout.spine_point)?;
    let middle = if moves.is_empty() {
        PhysPath::constant(rin.trace.end())
    } else {
        let legs: Vec<_> = moves.iter().map(ChainMove::leg).collect();
        PhysPath::from_legs(&legs)?
    };
    let trace_out = rout.trace.reversed();
    let full_path = if i == f {
        PhysPath::constant(*i)
    } else {
        pin_ends(rin.trace.concat(&middle)?.concat(&trace_out)?, i, f)?
    };
    Ok(Plan {
        initial: *i,
        target: *f,
        domain,
        start_spine: rin.spine_point,
        end_spine: rout.spine_point,
        hop_count: moves.len(),
        chain_path: moves,
        trace_in: rin.trace,
        middle,
        trace_out,
        full_path,
    })
}

fn pin_ends(path: PhysPath, i: &Configuration, f: &Configuration) -> Result<PhysPath> {
    let mut w: Vec<Waypoint> = path.waypoints().to_vec();
    let last = w.len() - 1;
    if !w[0].config.approx_eq(i, EPS) || !w[last].config.approx_eq(f, EPS) {
        return Err(Error::Contract(format!("assembled path does not run from {i} to {f}")));
    }
    w[0].config = *i;
    w[last].config = *f;
    PhysPath::new(w)
}

impl Plan {
    pub fn chain_length(&self) -> f64 {
        chain_length(&self.chain_path)
    }

    /// Re-checks endpoints, collision freedom, spine membership of the
    /// middle piece and the hop bounds.
    pub fn validate(&self) -> Result<()> {
        self.full_path.validate()?;
        if self.full_path.start() != self.initial || self.full_path.end() != self.target {
            return Err(Error::Contract("plan endpoints differ from its inputs".into()));
        }
        if self.full_path.exact_min_separation() <= 0.0 {
            return Err(Error::Collision("plan passes through a collision".into()));
        }
        if !self.middle.start().approx_eq(&chain_config(&self.start_spine)?, EPS)
            || !self.middle.end().approx_eq(&chain_config(&self.end_spine)?, EPS)
        {
            return Err(Error::Contract("chain piece does not join the spine images".into()));
        }
        for k in 0..self.middle.segment_count() {
            let (t0, t1) = (self.middle.waypoints()[k].t, self.middle.waypoints()[k + 1].t);
            for j in 0..=4 {
                let c = self.middle.at(t0 + (t1 - t0) * j as f64 / 4.0)?;
                if !on_spine(&c.to_flat(), EPS) {
                    return Err(Error::NotOnSpine(format!("chain piece leaves the spine at {c}")));
                }
            }
        }
        if self.hop_count > 7 || self.chain_length() > 4.0 + EPS {
            return Err(Error::Contract(format!(
                "{} hops, chain length {}",
                self.hop_count,
                self.chain_length()
            )));
        }
        Ok(())
    }

    pub fn report(&self) -> PlanReport {
        PlanReport {
            instruction: self.domain.instruction(),
            hops: self.hop_count,
            waypoints: self
                .full_path
                .waypoints()
                .iter()
                .map(|w| ReportWaypoint { t: w.t, r1: w.config.r1().into(), r2: w.config.r2().into() })
                .collect(),
        }
    }
}

/// Serialized form of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub instruction: u8,
    pub hops: usize,
    pub waypoints: Vec<ReportWaypoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportWaypoint {
    pub t: f64,
    pub r1: ReportPosition,
    pub r2: ReportPosition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPosition {
    pub circle: String,
    pub s: f64,
}

impl From<CirclePoint> for ReportPosition {
    fn from(p: CirclePoint) -> Self {
        ReportPosition { circle: p.circle().to_string(), s: p.s() }
    }
}

impl PlanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Circles visited by a chain path, in order.
pub fn circles_of(path: &[ChainMove]) -> Vec<ChainCircle> {
    path.iter().map(|m| m.circle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circle;
    use ChainVertex::*;

    fn on(c: ChainCircle, t: f64) -> ChainPoint {
        ChainPoint::new(c, t).unwrap()
    }

    fn v(x: ChainVertex) -> ChainPoint {
        ChainPoint::Vertex(x)
    }

    fn cfg(r1: (Circle, f64), r2: (Circle, f64)) -> Configuration {
        Configuration::from_raw(r1, r2).unwrap()
    }

    #[test]
    fn domains() {
        assert_eq!(classify_domain(&on(ChainCircle::R, 0.1), &on(ChainCircle::H1, 0.3)), InstructionDomain::U1);
        assert_eq!(classify_domain(&v(C1), &on(ChainCircle::H1, 0.3)), InstructionDomain::U2);
        assert_eq!(classify_domain(&on(ChainCircle::R, 0.1), &on(ChainCircle::R, 0.6)), InstructionDomain::U2);
        assert_eq!(classify_domain(&v(C1), &v(C2)), InstructionDomain::U3);
    }

    #[test]
    fn instruction1_same_circle() {
        let p = instruction1(&on(ChainCircle::V2, 0.1), &on(ChainCircle::V2, 0.3)).unwrap();
        assert_eq!(p.len(), 1);
        assert!((chain_length(&p) - 0.2).abs() < 1e-15);
        assert!(instruction1(&on(ChainCircle::V2, 0.1), &on(ChainCircle::V2, 0.1)).unwrap().is_empty());
    }

    #[test]
    fn instruction1_long_walk() {
        let p = instruction1(&on(ChainCircle::H1, 0.25), &on(ChainCircle::R, 0.3)).unwrap();
        use ChainCircle::*;
        assert_eq!(circles_of(&p), vec![H1, H1, Bc, V2, H2, R]);
        assert_eq!(p.len(), 6);
        assert!((p[5].to - 0.3).abs() < 1e-15);
    }

    #[test]
    fn instruction2_examples() {
        let p = instruction2(&on(ChainCircle::R, 0.1), &on(ChainCircle::R, 0.6)).unwrap();
        assert_eq!(p, vec![ChainMove { circle: ChainCircle::R, from: 0.1, to: 0.6 }]);
        let p = instruction2(&v(C1), &on(ChainCircle::H1, 0.3)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].from, p[0].to), (0.5, 0.3));
        let p = instruction2(&on(ChainCircle::H1, 0.2), &v(VB)).unwrap();
        use ChainCircle::*;
        assert_eq!(circles_of(&p), vec![H1, H1, Bc]);
        // wraps positively past θ = 1/2 on the antipodal branch
        let p = instruction2(&on(ChainCircle::H2, 0.7), &on(ChainCircle::H2, 0.2)).unwrap();
        assert_eq!(p[0].to, 1.2);
    }

    #[test]
    fn instruction3_examples() {
        let p = instruction3(C1, HB);
        assert_eq!(p.len(), 1);
        assert_eq!(chain_length(&p), 0.5);
        let p = instruction3(C1, C2);
        assert_eq!(p.len(), 3);
        assert_eq!(chain_length(&p), 1.5);
        assert!(instruction3(C1, C1).is_empty());
    }

    #[test]
    fn hop_bounds_on_vertex_pairs() {
        let mut worst = 0;
        for a in ChainVertex::ALL {
            for b in ChainVertex::ALL {
                worst = worst.max(instruction3(a, b).len());
            }
        }
        assert_eq!(worst, 5);
    }

    #[test]
    fn plan_identity() {
        let c = cfg((Circle::A, 0.3), (Circle::B, 0.1));
        let p = plan(&c, &c).unwrap();
        assert_eq!(p.hop_count, 0);
        assert_eq!(p.full_path, PhysPath::constant(c));
        p.validate().unwrap();
    }

    #[test]
    fn plan_cross_centers() {
        let i = cfg((Circle::A, 0.5), (Circle::B, 0.5));
        let f = cfg((Circle::B, 0.5), (Circle::A, 0.5));
        let p = plan(&i, &f).unwrap();
        assert_eq!(p.domain, InstructionDomain::U3);
        assert_eq!(p.chain_length(), 1.5);
        assert_eq!(p.trace_in.length(), 0.0);
        assert_eq!(p.trace_out.length(), 0.0);
        p.validate().unwrap();
    }

    #[test]
    fn plan_mixed_quarters() {
        let i = cfg((Circle::A, 0.25), (Circle::B, 0.25));
        let f = cfg((Circle::A, 0.75), (Circle::B, 0.75));
        let p = plan(&i, &f).unwrap();
        p.validate().unwrap();
        assert_eq!(p.full_path.start(), i);
        assert_eq!(p.full_path.end(), f);
        assert!(p.full_path.exact_min_separation() > 0.0);
    }

    #[test]
    fn report_shape() {
        let c = cfg((Circle::A, 0.3), (Circle::B, 0.1));
        let json = plan(&c, &c).unwrap().report().to_json();
        assert!(json.starts_with(r#"{"instruction":1,"hops":0,"waypoints":[{"t":0.0,"r1":{"circle":"A","s":0.3}"#), "{json}");
    }
}
