// Brute-force check of the closed forms: the extrema of Janssen's function
// F(x, ω) over a grid of the unit square reproduce A and B.
//
// ```bash
// cargo run --release --example janssen_oracle
// ```

use gabor_theta::frame::{frame_bounds, LatticeParams};
use gabor_theta::oracle::{frame_bounds_via_f, grid_extrema_f};

pub fn run_example() -> gabor_theta::Result<()> {
    for n in [2u32, 3, 4] {
        for beta in [0.4, 1.0 / (n as f64).sqrt(), 0.9] {
            let p = LatticeParams::new(n, beta)?;
            let report = grid_extrema_f(&p, 64, None)?;
            let via_f = frame_bounds_via_f(&p, 64, None)?;
            let closed = frame_bounds(&p, 1e-12)?;
            println!(
                "n = {n}, beta = {beta:.4}: max F at {:?}, min F at {:?}, K = {}, |dA| = {:.1e}, |dB| = {:.1e}",
                report.argmax,
                report.argmin,
                report.truncation_k,
                (via_f.lower - closed.lower).abs(),
                (via_f.upper - closed.upper).abs()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
