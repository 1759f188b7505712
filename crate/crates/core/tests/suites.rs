use fig8_plan::verify::{continuity_probe, run_suite, run_suite_with, Exec, Suite, CONTINUITY_DELTAS};
use fig8_plan::InstructionDomain;

#[test]
fn suites_pass_with_default_executor() {
    for suite in Suite::ALL {
        let n = if suite == Suite::Continuity { 100 } else { 2000 };
        let r = run_suite(suite.name(), 7, n).unwrap();
        assert!(r.pass, "{suite}: {}", r.witness);
        assert_eq!((r.suite.as_str(), r.seed, r.n), (suite.name(), 7, n));
    }
}

#[test]
fn executors_agree() {
    for suite in Suite::ALL {
        let n = if suite == Suite::Continuity { 30 } else { 300 };
        let a = run_suite_with(suite, 99, n, Exec::Sequential);
        let b = run_suite_with(suite, 99, n, Exec::default());
        assert_eq!(a.witness, b.witness, "{suite}");
    }
}

#[test]
fn probe_tables_shrink_with_delta() {
    for domain in InstructionDomain::ALL {
        let rows = continuity_probe(domain, 1, &CONTINUITY_DELTAS, 100, Exec::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.windows(2).all(|w| w[1].max_sup < w[0].max_sup), "{domain}: {rows:?}");
        assert!(rows[1].max_sup < 0.05);
    }
}

#[test]
fn report_json_keys() {
    let r = run_suite("partition", 7, 100).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in ["suite", "seed", "n", "pass", "witness", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
