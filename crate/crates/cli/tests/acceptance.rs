//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fig8_cli::render::{flat_segments, render_svg, RenderSpec};
use fig8_plan::retraction::on_spine;
use fig8_plan::spine::{build_chain, positive_successor, ChainCircle, ChainVertex};
use fig8_plan::verify::oracle::{ChainOracle, TrackOracle};
use fig8_plan::verify::{
    continuity_probe, cycle_rank, random_chain_point, random_point, run_suite_with, sample_rng, Exec, Suite,
    CONTINUITY_DELTAS,
};
use fig8_plan::{dist_gamma, plan, Configuration, InstructionDomain};
use serde_json::Value;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let clock = Instant::now();
    let mut c = f();
    let elapsed = clock.elapsed();
    c.pass &= elapsed < limit;
    c.detail = format!("{} [{:.2?} of {:?}]", c.detail, elapsed, limit);
    c
}

fn tc_reproduction() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_fig8")).arg("tc").output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    let v: Value = serde_json::from_str(&text).unwrap_or(Value::Null);
    check(out.status.success() && v["b1"] == 7 && v["tc"] == 3, text)
}

fn chain_structure() -> Check {
    use ChainCircle::*;
    use ChainVertex::*;
    let g = build_chain();
    let degrees = ChainVertex::ALL.iter().all(|&v| g.degree(v) == 4);
    let necklace = [R, H2, V2, Bc, H1, V1];
    let beads = [HA, C2, VB, HB, C1, VA];
    let linked = (0..6).all(|k| {
        let (c, d) = (necklace[k], necklace[(k + 1) % 6]);
        c.vertices().contains(&beads[k]) && d.vertices().contains(&beads[k])
    });
    let walks = ChainVertex::ALL.iter().all(|&start| {
        let mut v = start;
        let mut circles = Vec::new();
        for _ in 0..6 {
            let s = positive_successor(v);
            circles.push(s.circle);
            v = s.next;
            if v == start && circles.len() < 6 {
                return false;
            }
        }
        circles.sort();
        v == start && circles == ChainCircle::ALL.to_vec()
    });
    let rank = cycle_rank(g.graph()).unwrap_or(0);
    check(
        g.vertex_count() == 6 && g.arc_count() == 12 && degrees && linked && walks && rank == 7,
        format!("V={} E={} degree4={degrees} necklace={linked} walks={walks} b1={rank}", g.vertex_count(), g.arc_count()),
    )
}

fn suite(s: Suite, seed: u64, n: usize) -> Check {
    let r = run_suite_with(s, seed, n, Exec::default());
    check(r.pass, format!("{s} n={n}: {}", r.witness))
}

fn continuity() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for domain in InstructionDomain::ALL {
        match continuity_probe(domain, 2024, &CONTINUITY_DELTAS, 1000, Exec::default()) {
            Ok(rows) => {
                let decreasing = rows.windows(2).all(|w| w[1].max_sup < w[0].max_sup);
                let at_1e3 = rows.iter().find(|r| r.delta == 1e-3).map_or(f64::INFINITY, |r| r.max_sup);
                pass &= decreasing && at_1e3 < 0.05 && rows.iter().all(|r| r.used > 0);
                let cols: Vec<String> = rows.iter().map(|r| format!("{:.0e}:{:.3e}", r.delta, r.max_sup)).collect();
                parts.push(format!("{domain} {}", cols.join(" ")));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{domain} {e}"));
            }
        }
    }
    check(pass, parts.join("; "))
}

fn termination() -> Check {
    let a = run_suite_with(Suite::Termination, 1, 10_000, Exec::default());
    let b = run_suite_with(Suite::Collision, 1, 10_000, Exec::default());
    let w = &a.witness;
    check(
        a.pass && b.pass,
        format!(
            "max hops {} (vertex pairs {}), max chain length {:.3}, successor cycle {}",
            w["max_hops"], w["max_hops_vertex_pairs"], w["max_chain_length"].as_f64().unwrap_or(f64::NAN), w["successor_cycle"]
        ),
    )
}

fn oracles() -> Check {
    let track = TrackOracle::new(1000);
    let chain_oracle = ChainOracle::new(1000);
    let chain = build_chain();
    let (mut g, mut c) = (0.0f64, 0.0f64);
    for i in 0..1000 {
        let mut rng = sample_rng(8, i);
        let (p, q) = (random_point(&mut rng), random_point(&mut rng));
        g = g.max((dist_gamma(&p, &q) - track.distance(&p, &q)).abs());
        let (x, y) = (random_chain_point(&mut rng), random_chain_point(&mut rng));
        c = c.max((chain.distance(&x, &y) - chain_oracle.distance(&x, &y)).abs());
    }
    let bound = 2.0 * track.step();
    check(g <= bound && c <= bound, format!("worst gap track {g:.2e}, chain {c:.2e}, bound {bound:.0e}"))
}

fn cfg(r1: &str, r2: &str) -> Configuration {
    Configuration::new(r1.parse().unwrap(), r2.parse().unwrap()).unwrap()
}

fn scenarios() -> Check {
    let cases = [
        ("same circle", cfg("A:0.1", "A:0.3"), cfg("B:0.6", "B:0.85")),
        ("mixed circles", cfg("A:0.25", "B:0.35"), cfg("B:0.7", "A:0.8")),
        ("vertex to vertex", cfg("A:0.5", "B:0.5"), cfg("B:0.5", "A:0.5")),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, i, f) in cases {
        let ok = match plan(&i, &f) {
            Ok(p) => {
                let valid = p.validate().is_ok();
                let svg = render_svg(Some(&p), &RenderSpec::default());
                let rendered = svg.contains("class=\"marker start\"") && svg.matches("class=\"spine-arc\"").count() == 12;
                let chain_on_spine = flat_segments(&p.middle).iter().all(|(sq, ends)| {
                    ends.iter().all(|&(a, b)| on_spine(&fig8_plan::FlatCoord { square: *sq, a, b }, 1e-9))
                });
                parts.push(format!("{name}: U{} {} hops", p.domain.instruction(), p.hop_count));
                valid && rendered && chain_on_spine
            }
            Err(e) => {
                parts.push(format!("{name}: {e}"));
                false
            }
        };
        pass &= ok;
    }
    check(pass, parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Check>)> = vec![
        ("TC reproduction", Box::new(|| timed(Duration::from_secs(1), tc_reproduction))),
        ("chain structure", Box::new(|| timed(Duration::from_secs(1), chain_structure))),
        ("section and collision", Box::new(|| timed(Duration::from_secs(30), || suite(Suite::Collision, 42, 10_000)))),
        ("domain partition", Box::new(|| suite(Suite::Partition, 7, 100_000))),
        ("retraction", Box::new(|| suite(Suite::Retraction, 42, 10_000))),
        ("instruction continuity", Box::new(|| timed(Duration::from_secs(120), continuity))),
        ("termination bounds", Box::new(termination)),
        ("oracle agreement", Box::new(oracles)),
        ("scenarios", Box::new(scenarios)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let c = run();
        println!("criterion {} {:<24} {} {}", k + 1, name, if c.pass { "PASS" } else { "FAIL" }, c.detail);
        failed += usize::from(!c.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
