//! Generate seeded scenarios in memory, run them on a thread pool, and print
//! one JSON report per line, as the command-line `run` does.

use ttokit::scenario::{generate, run_all, CheckKind, Settings};

fn main() -> ttokit::Result<()> {
    let mut scenarios = Vec::new();
    for kind in CheckKind::ALL {
        scenarios.extend(generate(kind, 2, 11, 3)?.into_iter().map(|(_, s)| s));
    }
    let reports = run_all(&scenarios, &Settings::default(), 4)?;
    for r in &reports {
        println!("{}", serde_json::to_string(r).expect("serializable"));
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{} scenarios, {failed} failed", reports.len());
    Ok(())
}
