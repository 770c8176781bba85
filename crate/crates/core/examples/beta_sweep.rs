// Sweeps β for redundancy 2, writes CSV and an SVG plot of B/A to the
// system temp directory, and locates the optimal β for n = 2, 3, 4.
//
// ```bash
// cargo run --example beta_sweep
// ```

use gabor_theta::oracle::GridSpec;
use gabor_theta::sweep::{emit_csv, emit_plot, find_optimal_beta, sweep_beta, Column};

pub fn run_example() -> gabor_theta::Result<()> {
    let rows = sweep_beta(2, &GridSpec::log(0.3, 1.7, 141)?, 1e-12)?;
    let dir = std::env::temp_dir().join("gabor-theta-beta-sweep");
    std::fs::create_dir_all(&dir)?;
    emit_csv(&rows, &dir.join("n2.csv"))?;
    emit_plot(&rows, &dir.join("n2_ratio.svg"), Column::Ratio)?;
    println!("wrote {} rows to {}", rows.len(), dir.display());

    for (n, range) in [(2u32, (0.3, 1.5)), (3, (0.3, 1.5)), (4, (0.2, 1.2))] {
        let r = find_optimal_beta(n, range, 1e-7)?;
        println!(
            "n = {n}: max A = {:.12} at beta = {:.7}, min B = {:.12} at beta = {:.7} (1/sqrt(n) = {:.7})",
            r.max_a,
            r.beta_for_max_a,
            r.min_b,
            r.beta_for_min_b,
            1.0 / (n as f64).sqrt()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
