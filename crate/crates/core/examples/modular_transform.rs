// Small-s evaluation: the direct series against the modular transform.
//
// The alternating θ₄ series loses digits to cancellation as s shrinks,
// while θ₄(s) = s^{-1/2} θ_o(1/(4s)) needs only a handful of terms.
//
// ```bash
// cargo run --example modular_transform
// ```

use gabor_theta::theta::{
    eval_theta_direct, eval_theta_modular, jacobi_identity_residual, DerivativeOrder, ThetaFamily,
};
use gabor_theta::Error;

pub fn run_example() -> gabor_theta::Result<()> {
    let order = DerivativeOrder::VALUE;
    println!("{:>8}  {:>24} {:>6}  {:>24} {:>10}", "s", "modular", "terms", "direct (tol 1e-12)", "bound");
    for s in [0.2, 0.05, 0.01, 1e-3, 1e-4] {
        let m = eval_theta_modular(ThetaFamily::Theta4, s, order, 1e-12)?;
        let direct = match eval_theta_direct(ThetaFamily::Theta4, s, order, 1e-12) {
            Ok(d) => format!("{:>24.16e} {:>10.1e}", d.value, d.error_bound),
            Err(Error::Convergence(_)) => format!("{:>24} {:>10}", "cannot certify", "-"),
            Err(e) => return Err(e),
        };
        println!("{s:>8}  {:>24.16e} {:>6}  {direct}", m.value, m.terms_used);
    }

    println!();
    for s in [0.05, 0.5, 2.0, 20.0] {
        println!("|θ₃(1/s) - √s θ₃(s)| at s = {s:<5}: {:.2e}", jacobi_identity_residual(s)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
