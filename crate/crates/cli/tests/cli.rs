use std::process::{Command, Output};

fn fig8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fig8")).args(args).output().unwrap()
}

const C1_TO_C2: [&str; 9] = ["plan", "--from-r1", "A:0.5", "--from-r2", "B:0.5", "--to-r1", "B:0.5", "--to-r2", "A:0.5"];

#[test]
fn plan_prints_json() {
    let out = fig8(&C1_TO_C2);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["instruction"], 3);
    assert_eq!(v["hops"], 3);
    let first = &v["waypoints"][0];
    assert_eq!(first["r1"]["circle"], "A");
    assert_eq!(first["r1"]["s"], 0.5);
}

#[test]
fn output_is_byte_stable() {
    let args = ["plan", "--from-r1", "A:0.13", "--from-r2", "B:0.71", "--to-r1", "B:0.2", "--to-r2", "B:0.9"];
    assert_eq!(fig8(&args).stdout, fig8(&args).stdout);
    assert_eq!(fig8(&["tc"]).stdout, fig8(&["tc"]).stdout);
    let text = String::from_utf8(fig8(&args).stdout).unwrap();
    assert!(text.starts_with("{\"instruction\":"));
}

#[test]
fn identical_endpoints() {
    let out = fig8(&["plan", "--from-r1", "A:0.3", "--from-r2", "B:0.7", "--to-r1", "A:0.3", "--to-r2", "B:0.7"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hops"], 0);
    assert_eq!(v["waypoints"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let collide = fig8(&["plan", "--from-r1", "A:0.2", "--from-r2", "A:0.2", "--to-r1", "A:0.3", "--to-r2", "A:0.4"]);
    assert_eq!(collide.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&collide.stderr).contains("collision"));
    let centers = fig8(&["plan", "--from-r1", "A:0", "--from-r2", "B:0", "--to-r1", "A:0.3", "--to-r2", "A:0.4"]);
    assert_eq!(centers.status.code(), Some(3));
    let parse = fig8(&["plan", "--from-r1", "A:1.2", "--from-r2", "B:0.1", "--to-r1", "A:0.3", "--to-r2", "A:0.4"]);
    assert_eq!(parse.status.code(), Some(2));
    let singular = fig8(&["plan", "--from-r1", "A:0.3", "--from-r2", "A:0.3000000000000001", "--to-r1", "A:0.3", "--to-r2", "A:0.4"]);
    assert_eq!(singular.status.code(), Some(4));
    assert_eq!(fig8(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let out = fig8(&["verify", "--suite", "partition", "--seed", "7", "--n", "1000"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 7);
    let out = fig8(&["verify", "--suite", "termination", "--n", "500"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["successor_cycle"], 6);
}

#[test]
fn files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("plan.json");
    let svg = dir.path().join("plan.svg");
    let mut args: Vec<String> = C1_TO_C2.iter().map(|s| s.to_string()).collect();
    args.extend(["--out".into(), json.display().to_string(), "--svg".into(), svg.display().to_string()]);
    let out = Command::new(env!("CARGO_BIN_EXE_fig8")).args(&args).output().unwrap();
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&json).unwrap().contains("\"instruction\":3"));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("class=\"chain\""));
    let spine = dir.path().join("spine.svg");
    assert!(fig8(&["render", "--out", spine.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&spine).unwrap().matches("class=\"vertex\"").count(), 6);
    let missing = fig8(&["render", "--out", "/nonexistent/dir/x.svg"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/dir/x.svg"));
}
