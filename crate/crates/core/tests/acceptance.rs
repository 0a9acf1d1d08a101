//! Runs the ten reproduction criteria and prints one PASS/FAIL line each.
//! Pass `--slow` (or set `FQG_SLOW=1`) to add the `k = 15` nilpotency run.

use std::process::ExitCode;
use std::time::Duration;

use fqg_core::reproduce::{run_all, ReproduceOptions};

fn time_bound(id: u8, slow: bool) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(10)),
        5 | 9 => Some(Duration::from_secs(5)),
        7 => Some(Duration::from_secs(60)),
        6 if slow => Some(Duration::from_secs(600)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let slow = std::env::args().any(|a| a == "--slow") || std::env::var("FQG_SLOW").is_ok_and(|v| v == "1");
    let opts = ReproduceOptions { slow, ..ReproduceOptions::default() };
    let mut all = true;
    for (r, elapsed) in run_all(&opts) {
        let over = time_bound(r.id, slow).filter(|b| elapsed > *b);
        let passed = r.passed && over.is_none();
        all &= passed;
        println!("{} criterion {:>2} {:<26} {:>9.3}s", if passed { "PASS" } else { "FAIL" }, r.id, r.title, elapsed.as_secs_f64());
        for d in &r.details {
            println!("      {d}");
        }
        for f in &r.failures {
            println!("      failure: {f}");
        }
        if let Some(b) = over {
            println!("      failure: exceeded {}s", b.as_secs());
        }
    }
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
