// Runs every check suite with the default grids and prints one line each.
//
// ```bash
// cargo run --release --example check_suites
// ```

use gabor_theta::verify::{all_passed, run_all, VerifyConfig};

pub fn run_example() -> gabor_theta::Result<()> {
    let results = run_all(&VerifyConfig::default())?;
    for r in &results {
        let status = match (r.informational, r.passed) {
            (true, _) => "info",
            (false, true) => "pass",
            (false, false) => "FAIL",
        };
        println!(
            "{status:4} {:<20} worst = {:+.3e} at {:?} over {} points{}",
            r.name,
            r.worst_residual,
            r.worst_location,
            r.points_tested,
            if r.low_margin { " (low margin)" } else { "" }
        );
    }
    println!("all gating suites passed: {}", all_passed(&results));
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
