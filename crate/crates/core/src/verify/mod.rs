//! Topological bookkeeping and seeded property suites.

mod exec;
pub mod oracle;
mod probe;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{dist_gamma, Circle, CirclePoint, Configuration, FlatCoord, Square, EPS};
use crate::planner::{classify_domain, plan, InstructionDomain};
use crate::retraction::{on_spine, retract, retract_flat};
use crate::spine::{build_chain, chain_to_flat, flat_to_chain, is_antipodal, positive_successor, ChainPoint, ChainVertex};

pub use exec::{random_chain_point, random_config, random_point, sample_rng, Exec};
pub use probe::{continuity_probe, domain_margin, ProbeRow};

/// First Betti number `E - V + 1` of a connected graph.
pub fn cycle_rank<N, E>(g: &UnGraph<N, E>) -> Result<usize> {
    if g.node_count() == 0 {
        return Err(Error::Domain("empty graph".into()));
    }
    let parts = connected_components(g);
    if parts != 1 {
        return Err(Error::Domain(format!("graph has {parts} components")));
    }
    Ok(g.edge_count() + 1 - g.node_count())
}

/// Topological complexity of a wedge of `n` spheres of dimension `m`.
pub fn tc_wedge(n: u32, m: u32) -> Result<u32> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!("wedge of {n} spheres of dimension {m}")));
    }
    Ok(if n == 1 && m % 2 == 1 { 2 } else { 3 })
}

/// `(b1, tc)` of the configuration space, via the chain's cycle rank.
pub fn topological_complexity() -> Result<(usize, u32)> {
    let b1 = cycle_rank(build_chain().graph())?;
    let n = u32::try_from(b1).map_err(|_| Error::Domain("cycle rank overflow".into()))?;
    Ok((b1, tc_wedge(n, 1)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Collision,
    Partition,
    Retraction,
    Continuity,
    Termination,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Collision, Suite::Partition, Suite::Retraction, Suite::Continuity, Suite::Termination, Suite::Roundtrip];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Collision => "collision",
            Suite::Partition => "partition",
            Suite::Retraction => "retraction",
            Suite::Continuity => "continuity",
            Suite::Termination => "termination",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub pass: bool,
    pub witness: Value,
    pub elapsed_ms: u64,
}

pub fn run_suite(name: &str, seed: u64, n: usize) -> Result<SuiteReport> {
    Ok(run_suite_with(name.parse()?, seed, n, Exec::default()))
}

pub fn run_suite_with(suite: Suite, seed: u64, n: usize, exec: Exec) -> SuiteReport {
    let clock = Instant::now();
    let (pass, witness) = match suite {
        Suite::Collision => collision(seed, n, exec),
        Suite::Partition => partition(seed, n, exec),
        Suite::Retraction => retraction(seed, n, exec),
        Suite::Continuity => continuity(seed, n, exec),
        Suite::Termination => termination(seed, n, exec),
        Suite::Roundtrip => roundtrip(seed, n, exec),
    };
    SuiteReport {
        suite: suite.name().to_string(),
        seed,
        n,
        pass,
        witness,
        elapsed_ms: clock.elapsed().as_millis() as u64,
    }
}

/// Index of the first failing sample, if any.
fn first_failure<T>(items: &[T], ok: impl Fn(&T) -> bool) -> Option<usize> {
    items.iter().position(|x| !ok(x))
}

/// Index of the smallest value; ties go to the lowest index.
fn argmin(values: impl Iterator<Item = f64>) -> Option<(usize, f64)> {
    values.enumerate().fold(None, |best, (i, x)| match best {
        Some((_, b)) if b <= x => best,
        _ => Some((i, x)),
    })
}

fn argmax(values: impl Iterator<Item = f64>) -> Option<(usize, f64)> {
    argmin(values.map(|x| -x)).map(|(i, x)| (i, -x))
}

struct PlanSample {
    from: Configuration,
    to: Configuration,
    outcome: std::result::Result<PlanStats, String>,
}

#[derive(Clone, Copy)]
struct PlanStats {
    endpoint_error: f64,
    separation: f64,
    hops: usize,
    length: f64,
}

impl PlanSample {
    fn ok(&self) -> bool {
        matches!(self.outcome, Ok(s) if s.endpoint_error <= 1e-9 && s.separation > 0.0 && s.hops <= 7 && s.length <= 4.0 + EPS)
    }

    fn describe(&self, index: usize) -> Value {
        let mut w = json!({ "index": index, "from": self.from.to_string(), "to": self.to.to_string() });
        match &self.outcome {
            Ok(s) => {
                w["separation"] = json!(s.separation);
                w["hops"] = json!(s.hops);
                w["chain_length"] = json!(s.length);
                w["endpoint_error"] = json!(s.endpoint_error);
            }
            Err(e) => w["error"] = json!(e),
        }
        w
    }
}

fn plan_sample(seed: u64, index: usize) -> PlanSample {
    let mut rng = sample_rng(seed, index as u64);
    let from = random_config(&mut rng, 1e-6);
    let to = random_config(&mut rng, 1e-6);
    let outcome = plan(&from, &to).map_err(|e| e.to_string()).map(|p| PlanStats {
        endpoint_error: p.full_path.start().distance(&from).max(p.full_path.end().distance(&to)),
        separation: p.full_path.min_separation(64),
        hops: p.hop_count,
        length: p.chain_length(),
    });
    PlanSample { from, to, outcome }
}

fn collision(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let samples = exec.map(n, |i| plan_sample(seed, i));
    if let Some(i) = first_failure(&samples, PlanSample::ok) {
        return (false, samples[i].describe(i));
    }
    let seps = samples.iter().map(|s| s.outcome.as_ref().map_or(0.0, |x| x.separation));
    match argmin(seps) {
        Some((i, _)) => (true, samples[i].describe(i)),
        None => (true, json!({})),
    }
}

fn partition(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let tags = exec.map(n, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let x = random_chain_point(&mut rng);
        let y = match x {
            ChainPoint::Interior { circle, theta } if rng.random_bool(0.25) => {
                ChainPoint::new(circle, (theta + 0.5).rem_euclid(1.0)).expect("θ in [0, 1)")
            }
            _ => random_chain_point(&mut rng),
        };
        let both = x.is_vertex() && y.is_vertex();
        let special = x.is_vertex() || y.is_vertex() || is_antipodal(&x, &y);
        let memberships = [!special, special && !both, both];
        let tag = classify_domain(&x, &y);
        let consistent = memberships.iter().filter(|&&m| m).count() == 1
            && memberships[tag.instruction() as usize - 1];
        (tag, consistent, format!("{x} -> {y}"))
    });
    let mut counts = [0usize; 3];
    for (tag, _, _) in &tags {
        counts[tag.instruction() as usize - 1] += 1;
    }
    let vertex_pairs_u3 = ChainVertex::ALL
        .iter()
        .flat_map(|&a| ChainVertex::ALL.map(|b| (a, b)))
        .filter(|&(a, b)| classify_domain(&ChainPoint::Vertex(a), &ChainPoint::Vertex(b)) == InstructionDomain::U3)
        .count();
    let mut witness = json!({
        "U1": counts[0],
        "U2": counts[1],
        "U3": counts[2],
        "vertex_pairs_u3": vertex_pairs_u3,
    });
    let bad = tags.iter().position(|t| !t.1);
    if let Some(i) = bad {
        witness["index"] = json!(i);
        witness["pair"] = json!(tags[i].2);
    }
    (bad.is_none() && vertex_pairs_u3 == 36, witness)
}

const GLUE_PROBES: usize = 1000;
const GLUE_DELTA: f64 = 1e-4;

/// A pair of configurations `δ` apart with one robot crossing the center
/// from circle A to circle B, the other robot at depth at least 0.05.
fn glue_probe(seed: u64, index: usize) -> (Configuration, Configuration) {
    let mut rng = sample_rng(seed ^ 0x9e37_79b9_7f4a_7c15, index as u64);
    let u = rng.random::<f64>() * GLUE_DELTA;
    let (sa, sb) = if rng.random_bool(0.5) { (u, 1.0 - (GLUE_DELTA - u)) } else { (1.0 - u, GLUE_DELTA - u) };
    let depth = rng.random_range(0.05..=0.5);
    let other_s = if rng.random_bool(0.5) { depth } else { 1.0 - depth };
    let other_circle = if rng.random_bool(0.5) { Circle::A } else { Circle::B };
    let other = CirclePoint::wrapped(other_circle, other_s);
    let (pa, pb) = (CirclePoint::wrapped(Circle::A, sa), CirclePoint::wrapped(Circle::B, sb));
    let build = |moving: CirclePoint| {
        if index % 2 == 0 {
            Configuration::new(moving, other)
        } else {
            Configuration::new(other, moving)
        }
        .expect("robots are far apart")
    };
    (build(pa), build(pb))
}

struct RetractSample {
    config: Configuration,
    outcome: std::result::Result<(f64, f64, f64, f64), String>,
}

fn retraction(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let chain = build_chain();
    let samples = exec.map(n, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let config = random_config(&mut rng, 1e-6);
        let outcome = (|| -> Result<(f64, f64, f64, f64)> {
            let r = retract(&config)?;
            let image = retract_flat(&config.to_flat())?.flat;
            let membership = if on_spine(&image, 1e-9) { 0.0 } else { f64::INFINITY };
            let spine_config = chain_to_flat(&r.spine_point).to_config()?;
            let ends = r.trace.start().distance(&config).max(r.trace.end().distance(&spine_config));
            let again = retract(&r.trace.end())?;
            let idem = if again.scale == 1.0 {
                chain.distance(&r.spine_point, &again.spine_point)
            } else {
                f64::INFINITY
            };
            let sep = r.trace.exact_min_separation().min(r.trace.min_separation(16));
            Ok((membership.max(ends), idem, sep, r.scale))
        })()
        .map_err(|e| e.to_string());
        RetractSample { config, outcome }
    });
    let ok = |s: &RetractSample| matches!(s.outcome, Ok((e, idem, sep, _)) if e <= 1e-9 && idem <= 1e-9 && sep > 0.0);
    let glue = exec.map(GLUE_PROBES, |i| {
        let (p, q) = glue_probe(seed, i);
        match (retract(&p), retract(&q)) {
            (Ok(rp), Ok(rq)) => chain.distance(&rp.spine_point, &rq.spine_point) / GLUE_DELTA,
            _ => f64::INFINITY,
        }
    });
    let (gi, ratio) = argmax(glue.iter().copied()).unwrap_or((0, 0.0));
    let mut witness = json!({
        "glue_probes": GLUE_PROBES,
        "glue_delta": GLUE_DELTA,
        "max_glue_ratio": ratio,
        "glue_index": gi,
    });
    if let Some(i) = first_failure(&samples, ok) {
        witness["index"] = json!(i);
        witness["config"] = json!(samples[i].config.to_string());
        witness["outcome"] = json!(format!("{:?}", samples[i].outcome));
        return (false, witness);
    }
    let seps = samples.iter().map(|s| s.outcome.as_ref().map_or(0.0, |x| x.2));
    if let Some((i, sep)) = argmin(seps) {
        witness["min_trace_separation"] = json!(sep);
        witness["index"] = json!(i);
    }
    (ratio <= 50.0, witness)
}

pub const CONTINUITY_DELTAS: [f64; 3] = [1e-2, 1e-3, 1e-4];

fn continuity(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let mut pass = true;
    let mut tables = serde_json::Map::new();
    for domain in InstructionDomain::ALL {
        match continuity_probe(domain, seed, &CONTINUITY_DELTAS, n, exec) {
            Ok(rows) => {
                let decreasing = rows.windows(2).all(|w| w[1].max_sup < w[0].max_sup);
                let small = rows.iter().all(|r| r.delta != 1e-3 || r.max_sup < 0.05);
                let populated = rows.iter().all(|r| r.used > 0);
                pass &= decreasing && small && populated;
                tables.insert(domain.to_string(), json!(rows));
            }
            Err(e) => {
                pass = false;
                tables.insert(domain.to_string(), json!(e.to_string()));
            }
        }
    }
    (pass, Value::Object(tables))
}

/// Length of the positive successor cycle through `v`.
fn successor_cycle(v: ChainVertex) -> usize {
    let mut w = positive_successor(v).next;
    let mut steps = 1;
    while w != v && steps < 12 {
        w = positive_successor(w).next;
        steps += 1;
    }
    steps
}

fn termination(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let mut vertex_hops = 0;
    let mut vertex_length = 0.0f64;
    let mut vertex_ok = true;
    for a in ChainVertex::ALL {
        for b in ChainVertex::ALL {
            let (i, f) = (a.flat().to_config(), b.flat().to_config());
            match (i, f) {
                (Ok(i), Ok(f)) => match plan(&i, &f) {
                    Ok(p) => {
                        vertex_hops = vertex_hops.max(p.hop_count);
                        vertex_length = vertex_length.max(p.chain_length());
                        vertex_ok &= p.domain == InstructionDomain::U3;
                    }
                    Err(_) => vertex_ok = false,
                },
                _ => vertex_ok = false,
            }
        }
    }
    let cycle = ChainVertex::ALL.map(successor_cycle);
    let samples = exec.map(n, |i| plan_sample(seed, i));
    let bounded = |s: &PlanSample| matches!(s.outcome, Ok(x) if x.hops <= 7 && x.length <= 4.0 + EPS);
    let hops = samples.iter().map(|s| s.outcome.as_ref().map_or(usize::MAX, |x| x.hops)).max().unwrap_or(0);
    let length = samples.iter().map(|s| s.outcome.as_ref().map_or(f64::INFINITY, |x| x.length)).fold(0.0, f64::max);
    let mut witness = json!({
        "vertex_pairs": 36,
        "max_hops_vertex_pairs": vertex_hops,
        "max_chain_length_vertex_pairs": vertex_length,
        "successor_cycle": cycle.iter().max(),
        "max_hops": hops,
        "max_chain_length": length,
    });
    let bad = first_failure(&samples, bounded);
    if let Some(i) = bad {
        witness["failure"] = samples[i].describe(i);
    }
    let pass = vertex_ok
        && vertex_hops <= 7
        && vertex_length <= 4.0
        && cycle.iter().all(|&c| c == 6)
        && bad.is_none();
    (pass, witness)
}

fn roundtrip(seed: u64, n: usize, exec: Exec) -> (bool, Value) {
    let mut grid_checked = 0;
    let mut failures: Vec<String> = Vec::new();
    for square in Square::ALL {
        for i in 0..=100 {
            for j in 0..=100 {
                let Ok(f) = FlatCoord::new(square, i as f64 / 100.0, j as f64 / 100.0) else {
                    continue;
                };
                grid_checked += 1;
                let ok = match (f.canonical(), f.to_config()) {
                    (Ok(g), Ok(c)) => g.to_config() == Ok(c) && c.to_flat() == g && g.canonical() == Ok(g),
                    _ => false,
                };
                if !ok {
                    failures.push(f.to_string());
                }
            }
        }
    }
    let samples = exec.map(n, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let c = random_config(&mut rng, 0.0);
        let config_ok = c.to_flat().to_config() == Ok(c);
        let x = random_chain_point(&mut rng);
        let f = chain_to_flat(&x);
        let chain_ok = match flat_to_chain(&f) {
            Ok(y) => match (x, y) {
                (ChainPoint::Interior { circle: c1, theta: t1 }, ChainPoint::Interior { circle: c2, theta: t2 }) => {
                    c1 == c2 && (t1 - t2).abs() <= 1e-12
                }
                _ => x == y,
            },
            Err(_) => false,
        } && chain_to_flat(&flat_to_chain(&f).unwrap_or(x)).approx_eq(&f, 1e-12);
        let (p, q, r) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
        let (pq, qr, pr) = (dist_gamma(&p, &q), dist_gamma(&q, &r), dist_gamma(&p, &r));
        let metric_ok = pr <= pq + qr + 1e-12
            && pq == dist_gamma(&q, &p)
            && (pq == 0.0) == (p == q)
            && pq >= 0.0;
        (config_ok && chain_ok && metric_ok, format!("{c} / {x} / {p} {q} {r}"))
    });
    if let Some(i) = samples.iter().position(|s| !s.0) {
        failures.push(format!("sample {i}: {}", samples[i].1));
    }
    let witness = json!({
        "grid_points": grid_checked,
        "samples": n,
        "failures": failures.len(),
        "first_failure": failures.first(),
    });
    (failures.is_empty(), witness)
}
