//! All acceptance criteria, one line per criterion followed by its checks.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hsl_core::verify::{run_criterion, summarize, Suite};

const N: usize = 256;

fn main() -> ExitCode {
    // Accept and ignore libtest flags such as `--nocapture`; a name filter
    // that is not "acceptance" skips the run, as libtest would.
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if filter.is_some_and(|f| !"acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let mut failed = Vec::new();
    for &k in Suite::All.criteria() {
        let t = Instant::now();
        let checks = run_criterion(k, N);
        println!("{}  [{:.1}s]", summarize(k, &checks), t.elapsed().as_secs_f64());
        for c in &checks {
            println!("    {c}");
        }
        if checks.is_empty() || checks.iter().any(|c| !c.pass) {
            failed.push(k);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", Suite::All.criteria().len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
