//! Sampling probe for the continuity of each instruction on its domain.
//!
//! For every sample a base pair of configurations is drawn inside the
//! requested domain together with a fixed perturbation direction. The same
//! base and direction are reused for every δ, so the rows of the table
//! measure one family of perturbations at shrinking scales.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::exec::{random_config, sample_rng, Exec};
use crate::error::{Error, Result};
use crate::geometry::{CirclePoint, Configuration, FlatCoord};
use crate::planner::{classify_domain, plan, InstructionDomain};
use crate::retraction::retract;
use crate::spine::{chain_to_flat, ChainCircle, ChainPoint, ChainVertex};

const SUP_SAMPLES: usize = 256;
const BASE_SEPARATION: f64 = 0.05;
const ATTEMPTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub delta: f64,
    pub max_sup: f64,
    /// Samples whose perturbed pair stayed inside the domain margin.
    pub used: usize,
}

/// A base pair plus perturbation direction, realized at any scale.
#[derive(Debug, Clone, Copy)]
enum Case {
    Generic { i: Configuration, f: Configuration, dir: [f64; 4] },
    Lifted { v: ChainVertex, sides: [bool; 2], mu: f64, dmu: f64, other: Configuration, dir: [f64; 2], vertex_first: bool },
    Antipodal { circle: ChainCircle, theta: f64, dtheta: f64 },
    Vertices { v: [ChainVertex; 2], sides: [[bool; 2]; 2], mu: [f64; 2], dmu: [f64; 2] },
}

fn shift(c: &Configuration, d1: f64, d2: f64) -> Result<Configuration> {
    let (p, q) = (c.r1(), c.r2());
    Configuration::new(CirclePoint::wrapped(p.circle(), p.s() + d1), CirclePoint::wrapped(q.circle(), q.s() + d2))
}

/// A configuration retracting onto `v`, at ray parameter `mu ∈ (0, 1]` from
/// a puncture corner. Robots at a pole of `v` sit at `μ/2` or `1 - μ/2`.
fn lift(v: ChainVertex, sides: [bool; 2], mu: f64) -> Result<Configuration> {
    let f = v.flat();
    let place = |x: f64, side: bool| {
        if x == 0.0 {
            0.0
        } else if side {
            mu / 2.0
        } else {
            1.0 - mu / 2.0
        }
    };
    FlatCoord::new(f.square, place(f.a, sides[0]), place(f.b, sides[1]))?.to_config()
}

fn antipodal_pair(circle: ChainCircle, theta: f64) -> Result<(Configuration, Configuration)> {
    let x = ChainPoint::new(circle, theta.rem_euclid(1.0))?;
    let y = ChainPoint::new(circle, (theta + 0.5).rem_euclid(1.0))?;
    Ok((chain_to_flat(&x).to_config()?, chain_to_flat(&y).to_config()?))
}

impl Case {
    fn realize(&self, delta: f64) -> Result<(Configuration, Configuration)> {
        match *self {
            Case::Generic { i, f, dir } => {
                Ok((shift(&i, delta * dir[0], delta * dir[1])?, shift(&f, delta * dir[2], delta * dir[3])?))
            }
            Case::Lifted { v, sides, mu, dmu, other, dir, vertex_first } => {
                let lifted = lift(v, sides, mu + delta * dmu)?;
                let moved = shift(&other, delta * dir[0], delta * dir[1])?;
                Ok(if vertex_first { (lifted, moved) } else { (moved, lifted) })
            }
            Case::Antipodal { circle, theta, dtheta } => antipodal_pair(circle, theta + delta * dtheta),
            Case::Vertices { v, sides, mu, dmu } => Ok((
                lift(v[0], sides[0], mu[0] + delta * dmu[0])?,
                lift(v[1], sides[1], mu[1] + delta * dmu[1])?,
            )),
        }
    }
}

/// Distance of a spine pair from the boundary of its domain, measured on
/// the chain.
pub fn domain_margin(i: &ChainPoint, f: &ChainPoint) -> f64 {
    match classify_domain(i, f) {
        InstructionDomain::U3 => f64::INFINITY,
        InstructionDomain::U2 => {
            if i.is_vertex() || f.is_vertex() {
                i.vertex_gap().max(f.vertex_gap())
            } else {
                i.vertex_gap().min(f.vertex_gap())
            }
        }
        InstructionDomain::U1 => {
            let mut m = i.vertex_gap().min(f.vertex_gap());
            for c in ChainCircle::ALL {
                if let (Some(a), Some(b)) = (i.theta_on(c), f.theta_on(c)) {
                    let d = (a - b).rem_euclid(1.0);
                    m = m.min((d.min(1.0 - d) - 0.5).abs());
                }
            }
            m
        }
    }
}

fn inside(domain: InstructionDomain, pair: &(Configuration, Configuration), margin: f64) -> bool {
    let (Ok(ri), Ok(rf)) = (retract(&pair.0), retract(&pair.1)) else {
        return false;
    };
    classify_domain(&ri.spine_point, &rf.spine_point) == domain
        && domain_margin(&ri.spine_point, &rf.spine_point) >= margin
}

fn draw<R: Rng>(rng: &mut R, domain: InstructionDomain, index: usize) -> Case {
    let mut dir = || 2.0 * rng.random::<f64>() - 1.0;
    let d4 = [dir(), dir(), dir(), dir()];
    let sides = |rng: &mut R| [rng.random_bool(0.5), rng.random_bool(0.5)];
    match domain {
        InstructionDomain::U1 => Case::Generic {
            i: random_config(rng, BASE_SEPARATION),
            f: random_config(rng, BASE_SEPARATION),
            dir: d4,
        },
        InstructionDomain::U2 if index % 2 == 0 => Case::Lifted {
            v: ChainVertex::ALL[rng.random_range(0..6)],
            sides: sides(rng),
            mu: rng.random_range(0.2..0.9),
            dmu: d4[0],
            other: random_config(rng, BASE_SEPARATION),
            dir: [d4[1], d4[2]],
            vertex_first: rng.random_bool(0.5),
        },
        InstructionDomain::U2 => Case::Antipodal {
            circle: ChainCircle::ALL[rng.random_range(0..6)],
            theta: rng.random::<f64>(),
            dtheta: d4[0],
        },
        InstructionDomain::U3 => Case::Vertices {
            v: [ChainVertex::ALL[rng.random_range(0..6)], ChainVertex::ALL[rng.random_range(0..6)]],
            sides: [sides(rng), sides(rng)],
            mu: [rng.random_range(0.2..0.9), rng.random_range(0.2..0.9)],
            dmu: [d4[0], d4[1]],
        },
    }
}

/// Base case for sample `index`, accepted once its unperturbed pair lies
/// inside the domain with margin `margin`.
fn base_case(domain: InstructionDomain, seed: u64, index: usize, margin: f64) -> Option<Case> {
    let mut rng = sample_rng(seed, index as u64);
    (0..ATTEMPTS)
        .map(|_| draw(&mut rng, domain, index))
        .find(|case| case.realize(0.0).is_ok_and(|pair| inside(domain, &pair, margin)))
}

/// Largest sup distance between the plan of a base pair and the plan of its
/// δ-perturbation, for each δ. Pairs whose perturbation leaves the domain
/// margin `10·δ` are skipped and not counted in `used`.
pub fn continuity_probe(
    domain: InstructionDomain,
    seed: u64,
    deltas: &[f64],
    n: usize,
    exec: Exec,
) -> Result<Vec<ProbeRow>> {
    if deltas.iter().any(|&d| d <= 1e-12) || deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain(format!("deltas must be decreasing and above 1e-12: {deltas:?}")));
    }
    let largest = deltas.first().copied().unwrap_or(0.0);
    let per_sample: Vec<Vec<Option<f64>>> = exec.map(n, |index| {
        let Some(case) = base_case(domain, seed, index, 10.0 * largest) else {
            return vec![None; deltas.len()];
        };
        let base = case.realize(0.0).and_then(|(i, f)| plan(&i, &f));
        deltas
            .iter()
            .map(|&delta| {
                let base = base.as_ref().ok()?;
                let pair = case.realize(delta).ok()?;
                if !inside(domain, &pair, 10.0 * delta) {
                    return None;
                }
                let moved = plan(&pair.0, &pair.1).ok()?;
                Some(base.full_path.sup_distance(&moved.full_path, SUP_SAMPLES))
            })
            .collect()
    });
    Ok(deltas
        .iter()
        .enumerate()
        .map(|(k, &delta)| {
            let values = per_sample.iter().filter_map(|row| row[k]);
            let (max_sup, used) = values.fold((0.0f64, 0), |(m, c), x| (m.max(x), c + 1));
            ProbeRow { delta, max_sup, used }
        })
        .collect())
}
