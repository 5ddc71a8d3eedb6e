//! Runs the nine acceptance suites and prints one line per criterion.
//!
//! The seed can be overridden with `FINPROP_SEED`, and a subset of suites
//! chosen with `FINPROP_CRITERIA` (comma-separated numbers).

use std::io::Write;
use std::process::ExitCode;

use finprop_core::verify::{DEFAULT_SEED, SUITES};

fn main() -> ExitCode {
    let seed = std::env::var("FINPROP_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let only: Option<Vec<usize>> =
        std::env::var("FINPROP_CRITERIA").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    println!("acceptance suites, seed {seed}");
    let (mut run, mut failed) = (0, 0);
    for (number, suite) in SUITES {
        if only.as_ref().is_some_and(|o| !o.contains(&number)) {
            continue;
        }
        let report = suite(seed);
        println!("{report}");
        std::io::stdout().flush().ok();
        run += 1;
        if !report.passed() {
            failed += 1;
        }
    }
    println!("{} of {run} criteria passed", run - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
