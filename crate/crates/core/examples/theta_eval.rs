// Certified values of θ₃, θ₄, θ_o and Θ(z, is) with their s-derivatives.
//
// ```bash
// cargo run --example theta_eval
// ```

use gabor_theta::theta::{eval_theta, eval_theta_general, DerivativeOrder, ThetaFamily};

pub fn run_example() -> gabor_theta::Result<()> {
    let families = [ThetaFamily::Theta3, ThetaFamily::Theta4, ThetaFamily::ThetaOdd];
    println!("{:<10} {:>6} {:>3} {:>24} {:>10}  method", "family", "s", "d", "value", "bound");
    for family in families {
        for s in [0.1, 1.0, 2.5] {
            for order in 0..=2u8 {
                let v = eval_theta(family, s, DerivativeOrder::new(order)?, 1e-12)?;
                println!(
                    "{:<10} {:>6} {:>3} {:>24.16e} {:>10.1e}  {:?}",
                    family.name(),
                    s,
                    order,
                    v.value,
                    v.error_bound,
                    v.method
                );
            }
        }
    }

    // Θ(z, is) interpolates between θ₃ (z = 0) and θ₄ (z = 1/2)
    for z in [0.0, 0.125, 0.25, 0.375, 0.5] {
        let v = eval_theta_general(z, 1.0, 1e-13)?;
        println!("Theta(z = {z:<5}, s = 1) = {:.15} ± {:.1e}", v.value, v.error_bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_theta::Result<()> {
    run_example()
}
