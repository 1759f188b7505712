//! Command-line front end: plan trajectories, run verification suites,
//! report the topological complexity and render the flat chart as SVG.

pub mod render;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use fig8_plan::verify::{run_suite, topological_complexity};
use fig8_plan::{plan, CirclePoint, Configuration, Error, PlanReport};
use serde_json::json;

pub use render::{render_svg, Layers, RenderSpec};

#[derive(Debug, Parser)]
#[command(name = "fig8", version, about = "Two robots, one figure-eight track, no collisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan a motion between two configurations and print it as JSON.
    Plan {
        #[arg(long, value_name = "POS")]
        from_r1: CirclePoint,
        #[arg(long, value_name = "POS")]
        from_r2: CirclePoint,
        #[arg(long, value_name = "POS")]
        to_r1: CirclePoint,
        #[arg(long, value_name = "POS")]
        to_r2: CirclePoint,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the plan as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Samples per segment for the separation check.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Print the first Betti number of the spine and the topological complexity.
    Tc,
    /// Render the flat chart and spine without a plan.
    Render {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 720)]
        width: u32,
    },
}

/// Exit status plus what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn rounded(report: &PlanReport) -> PlanReport {
    let mut r = report.clone();
    for w in &mut r.waypoints {
        w.t = round12(w.t);
        w.r1.s = round12(w.r1.s);
        w.r2.s = round12(w.r2.s);
    }
    r
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Collision(_) => 3,
        Error::Singular(_) => 4,
        Error::Usage(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_plan(from: (CirclePoint, CirclePoint), to: (CirclePoint, CirclePoint), out: Option<PathBuf>, svg: Option<PathBuf>, samples: usize) -> Outcome {
    let configs = Configuration::new(from.0, from.1).and_then(|i| Ok((i, Configuration::new(to.0, to.1)?)));
    let (i, f) = match configs {
        Ok(pair) => pair,
        Err(e) => return Outcome::fail(exit_code(&e), format!("collision: {e}\n")),
    };
    let p = match plan(&i, &f) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(exit_code(&e), format!("{e}\n")),
    };
    if let Err(e) = p.validate() {
        return Outcome::fail(1, format!("plan failed validation: {e}\n"));
    }
    if p.full_path.min_separation(samples) <= 0.0 {
        return Outcome::fail(1, "plan failed validation: sampled collision\n".into());
    }
    let text = serde_json::to_string(&rounded(&p.report())).expect("plain data serializes") + "\n";
    if let Some(path) = svg {
        if let Err(e) = write(&path, &render_svg(Some(&p), &RenderSpec::default())) {
            return Outcome::fail(1, e + "\n");
        }
    }
    match out {
        Some(path) => match write(&path, &text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(1, e + "\n"),
        },
        None => Outcome::ok(text),
    }
}

fn cmd_verify(suite: &str, seed: u64, n: usize) -> Outcome {
    match run_suite(suite, seed, n) {
        Ok(report) => {
            let text = serde_json::to_string(&report).expect("plain data serializes") + "\n";
            Outcome { code: if report.pass { 0 } else { 1 }, stdout: text, stderr: String::new() }
        }
        Err(e) => Outcome::fail(2, format!("{e}\n")),
    }
}

fn cmd_tc() -> Outcome {
    match topological_complexity() {
        Ok((b1, tc)) => Outcome::ok(json!({ "b1": b1, "tc": tc }).to_string() + "\n"),
        Err(e) => Outcome::fail(1, format!("{e}\n")),
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Plan { from_r1, from_r2, to_r1, to_r2, out, svg, samples } => {
            cmd_plan((from_r1, from_r2), (to_r1, to_r2), out, svg, samples)
        }
        Command::Verify { suite, seed, n } => cmd_verify(&suite, seed, n),
        Command::Tc => cmd_tc(),
        Command::Render { out, width } => {
            let spec = RenderSpec { width, ..RenderSpec::default() };
            match write(&out, &render_svg(None, &spec)) {
                Ok(()) => Outcome::ok(String::new()),
                Err(e) => Outcome::fail(1, e + "\n"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(Cli::try_parse_from(std::iter::once("fig8").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn round_to_twelve_digits() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn tc_output() {
        assert_eq!(run_args(&["tc"]).stdout, "{\"b1\":7,\"tc\":3}\n");
    }

    #[test]
    fn plan_vertex_pair() {
        let o = run_args(&["plan", "--from-r1", "A:0.5", "--from-r2", "B:0.5", "--to-r1", "B:0.5", "--to-r2", "A:0.5"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("\"instruction\":3"));
    }

    #[test]
    fn plan_collision_exit() {
        let o = run_args(&["plan", "--from-r1", "A:0.2", "--from-r2", "A:0.2", "--to-r1", "B:0.5", "--to-r2", "A:0.5"]);
        assert_eq!(o.code, 3);
        assert!(o.stderr.contains("collision"));
    }

    #[test]
    fn plan_singular_exit() {
        let o = run_args(&["plan", "--from-r1", "A:0.2", "--from-r2", "A:0.2000000000000001", "--to-r1", "B:0.5", "--to-r2", "A:0.5"]);
        assert_eq!(o.code, 4, "{}", o.stderr);
    }

    #[test]
    fn bad_position_is_a_parse_error() {
        let err = Cli::try_parse_from(["fig8", "plan", "--from-r1", "C:0.2", "--from-r2", "A:0.1", "--to-r1", "A:0.3", "--to-r2", "A:0.4"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_unknown_suite() {
        assert_eq!(run_args(&["verify", "--suite", "nope"]).code, 2);
    }
}
