//! Runs the eleven acceptance checks and prints one line per check.
//! Exits nonzero if any fails.

use boolfam::harness::{checks, run_check, Profile, Status};

const SEED: u64 = 42;

fn main() {
    let mut failed = 0;
    for check in checks().iter().filter(|c| c.acceptance) {
        let report = run_check(check, SEED, Profile::Quick);
        let tag = match report.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!(
            "{tag} {} {} ({} trials, {} ms): {}",
            report.id, report.name, report.trials, report.millis, report.detail
        );
        if let Some(w) = &report.witness {
            println!("     witness: {w}");
        }
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
