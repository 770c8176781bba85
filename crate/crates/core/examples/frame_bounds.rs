// Frame bounds of the Gaussian on αℤ × βℤ for a few redundancies, and the
// square lattice β = 1/√n next to a skewed one.
//
// ```bash
// cargo run --example frame_bounds
// ```

use gabor_theta::frame::{frame_bounds, LatticeParams};

pub fn run_example() -> gabor_theta::Result<()> {
    println!("{:>3} {:>10} {:>18} {:>18} {:>12} {:>6}", "n", "beta", "A", "B", "B/A", "frame");
    for n in 1..=5u32 {
        let square = 1.0 / (n as f64).sqrt();
        for beta in [square, 1.5 * square] {
            let p = LatticeParams::new(n, beta)?;
            let fb = frame_bounds(&p, 1e-12)?;
            println!(
                "{:>3} {:>10.6} {:>18.12} {:>18.12} {:>12.8} {:>6}",
                n, beta, fb.lower, fb.upper, fb.ratio, fb.valid
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
