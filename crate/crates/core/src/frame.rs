//! Sharp frame bounds of the Gaussian `g₀(t) = 2^{1/4} e^{-πt²}` on the
//! separable lattice `αℤ × βℤ` with integer redundancy `n = 1/(αβ)`.
//!
//! With `a = n²β²/2` and `b = 1/(2β²)`:
//!
//! ```text
//! n even:  A = n θ₄(a)θ₄(b)                 B = n θ₃(a)θ₃(b)
//! n odd:   A = n (θ₄(a)θ₄(b) - 2θ_o(a)θ_o(b))   B = n (θ₃(a)θ₃(b) - 2θ_o(a)θ_o(b))
//! ```

use serde::Serialize;

use crate::error::{domain, Result};
use crate::theta::{eval_theta, DerivativeOrder, ThetaFamily, ThetaValue, S_MAX, S_MIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A separable lattice `αℤ × βℤ` with `αβ = 1/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeParams {
    pub alpha: f64,
    pub beta: f64,
    pub n: u32,
    pub parity: Parity,
}

impl LatticeParams {
    /// Lattice with redundancy `n` and frequency step `beta`; `α = 1/(nβ)`.
    pub fn new(n: u32, beta: f64) -> Result<Self> {
        if n == 0 {
            return domain("redundancy n must be at least 1");
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return domain(format!("beta = {beta} must be positive"));
        }
        let alpha = 1.0 / (n as f64 * beta);
        Self::from_parts(alpha, beta, n)
    }

    /// Lattice from both steps; `1/(αβ)` must be an integer to 1e-12.
    pub fn from_alpha_beta(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && beta > 0.0 && beta.is_finite()) {
            return domain(format!("alpha = {alpha} and beta = {beta} must be positive"));
        }
        let density = 1.0 / (alpha * beta);
        let n = density.round();
        if n < 1.0 || n > u32::MAX as f64 {
            return domain(format!("redundancy 1/(alpha*beta) = {density} is not a positive integer"));
        }
        Self::from_parts(alpha, beta, n as u32)
    }

    fn from_parts(alpha: f64, beta: f64, n: u32) -> Result<Self> {
        if (alpha * beta * n as f64 - 1.0).abs() > 1e-12 {
            return domain(format!(
                "alpha*beta*n = {} differs from 1 by more than 1e-12",
                alpha * beta * n as f64
            ));
        }
        let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        Ok(LatticeParams { alpha, beta, n, parity })
    }

    /// Theta arguments `(n²β²/2, 1/(2β²))`.
    pub fn theta_args(&self) -> (f64, f64) {
        let nb = self.n as f64 * self.beta;
        (0.5 * nb * nb, 0.5 / (self.beta * self.beta))
    }
}

/// Lower and upper frame bound with a common absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
    pub error_bound: f64,
    /// False when `lower` cannot be told apart from zero; `ratio` is then
    /// reported as infinite.
    pub valid: bool,
}

impl FrameBounds {
    pub(crate) fn from_parts(lower: f64, upper: f64, error_bound: f64) -> Self {
        let valid = lower > error_bound;
        FrameBounds {
            lower,
            upper,
            ratio: if valid { upper / lower } else { f64::INFINITY },
            error_bound,
            valid,
        }
    }
}

#[derive(Clone, Copy)]
struct Bounded {
    value: f64,
    err: f64,
}

impl From<ThetaValue> for Bounded {
    fn from(v: ThetaValue) -> Self {
        Bounded {
            value: v.value,
            err: v.error_bound,
        }
    }
}

impl Bounded {
    fn mul(self, o: Bounded) -> Bounded {
        let value = self.value * o.value;
        Bounded {
            value,
            err: self.value.abs() * o.err + o.value.abs() * self.err + self.err * o.err + f64::EPSILON * value.abs(),
        }
    }

    fn sub(self, o: Bounded) -> Bounded {
        let value = self.value - o.value;
        Bounded {
            value,
            err: self.err + o.err + f64::EPSILON * value.abs(),
        }
    }

    fn scale(self, n: f64) -> Bounded {
        let value = self.value * n;
        Bounded {
            value,
            err: self.err * n + f64::EPSILON * value.abs(),
        }
    }
}

fn check_args(n: u32, beta: f64) -> Result<(f64, f64)> {
    let params = LatticeParams::new(n, beta)?;
    let (a, b) = params.theta_args();
    for (name, x) in [("n²β²/2", a), ("1/(2β²)", b)] {
        if !(S_MIN..=S_MAX).contains(&x) {
            return domain(format!(
                "beta = {beta} puts the theta argument {name} = {x:e} outside [{S_MIN:e}, {S_MAX:e}]"
            ));
        }
    }
    Ok((a, b))
}

fn theta_pair(family: ThetaFamily, a: f64, b: f64, tol: f64) -> Result<Bounded> {
    let ta: Bounded = eval_theta(family, a, DerivativeOrder::VALUE, tol)?.into();
    let tb: Bounded = eval_theta(family, b, DerivativeOrder::VALUE, tol)?.into();
    Ok(ta.mul(tb))
}

fn assemble(lower: Bounded, upper: Bounded) -> FrameBounds {
    FrameBounds::from_parts(lower.value, upper.value, lower.err.max(upper.err))
}

/// `A = nθ₄(n²β²/2)θ₄(1/(2β²))`, `B = nθ₃(n²β²/2)θ₃(1/(2β²))` for even `n`.
pub fn frame_bounds_even(n: u32, beta: f64, tol: f64) -> Result<FrameBounds> {
    if n == 0 || !n.is_multiple_of(2) {
        return domain(format!("n = {n} is not a positive even integer"));
    }
    let (a, b) = check_args(n, beta)?;
    let nf = n as f64;
    let lower = theta_pair(ThetaFamily::Theta4, a, b, tol)?.scale(nf);
    let upper = theta_pair(ThetaFamily::Theta3, a, b, tol)?.scale(nf);
    Ok(assemble(lower, upper))
}

/// Odd-redundancy bounds; the θ_o product is subtracted from both.
///
/// For `n = 1` the formulas are evaluated as stated. The Gaussian does not
/// generate a frame at critical density, so the result is typically flagged
/// invalid because `A` vanishes to within its error bound.
pub fn frame_bounds_odd(n: u32, beta: f64, tol: f64) -> Result<FrameBounds> {
    if n % 2 != 1 {
        return domain(format!("n = {n} is not a positive odd integer"));
    }
    let (a, b) = check_args(n, beta)?;
    let nf = n as f64;
    let odd = theta_pair(ThetaFamily::ThetaOdd, a, b, tol)?.scale(2.0);
    let lower = theta_pair(ThetaFamily::Theta4, a, b, tol)?.sub(odd).scale(nf);
    let upper = theta_pair(ThetaFamily::Theta3, a, b, tol)?.sub(odd).scale(nf);
    Ok(assemble(lower, upper))
}

/// Dispatches on the parity of the redundancy.
pub fn frame_bounds(params: &LatticeParams, tol: f64) -> Result<FrameBounds> {
    match params.parity {
        Parity::Even => frame_bounds_even(params.n, params.beta, tol),
        Parity::Odd => frame_bounds_odd(params.n, params.beta, tol),
    }
}
