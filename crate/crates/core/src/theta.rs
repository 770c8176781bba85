//! Jacobi theta functions on the imaginary axis.
//!
//! With `τ = is` the functions evaluated here are
//!
//! ```text
//! θ₃(s) = Σ_k e^{-πk²s}          θ₄(s) = Σ_k (-1)^k e^{-πk²s}
//! θ_o(s) = Σ_k e^{-π(2k+1)²s}    Θ(z, is) = Σ_k e^{-πk²s} cos(2πkz)
//! ```
//!
//! together with their first and second derivatives in `s`. Every value is
//! returned as a [`ThetaValue`] whose `error_bound` covers both the
//! truncated tail and floating-point rounding of the partial sum.
//!
//! For `s` below [`SMALL_S_SWITCH`] the direct series converges slowly and
//! θ₄ suffers catastrophic cancellation, so θ₃, θ₄ and θ_o are evaluated
//! through the modular relations
//!
//! ```text
//! θ₃(s) = s^{-1/2} θ₃(1/s)
//! θ₄(s) = s^{-1/2} θ_o(1/(4s))
//! θ_o(s) = s^{-1/2} θ₄(1/(4s)) / 2
//! ```
//!
//! and their differentiated forms.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Smallest supported argument `s`.
pub const S_MIN: f64 = 1e-6;
/// Largest supported argument `s`.
pub const S_MAX: f64 = 1e6;
/// Below this argument θ₃, θ₄ and θ_o switch to the modular transforms.
pub const SMALL_S_SWITCH: f64 = 0.25;
/// Maximal number of series terms (or product factors) before giving up.
pub const TERM_CAP: u64 = 1_000_000;
/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

// Truncation target for sums feeding ratios; far below the rounding floor.
const RATIO_TRUNCATION: f64 = 1e-18;

/// Which theta function an evaluation targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThetaFamily {
    Theta3,
    Theta4,
    ThetaOdd,
    /// Θ(z, is) for a fixed real `z`, reduced into `[0, 1)`.
    General { z: f64 },
}

impl ThetaFamily {
    /// Θ(z, ·) with `z` reduced modulo 1.
    pub fn general(z: f64) -> Result<Self> {
        if !z.is_finite() {
            return domain(format!("z = {z} must be finite"));
        }
        let mut z = z.rem_euclid(1.0);
        if z >= 1.0 {
            z = 0.0;
        }
        Ok(ThetaFamily::General { z })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ThetaFamily::Theta3 => "theta3",
            ThetaFamily::Theta4 => "theta4",
            ThetaFamily::ThetaOdd => "theta_odd",
            ThetaFamily::General { .. } => "theta_general",
        }
    }
}

/// Derivative order in `s`: 0, 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DerivativeOrder(u8);

impl DerivativeOrder {
    pub const VALUE: Self = DerivativeOrder(0);
    pub const FIRST: Self = DerivativeOrder(1);
    pub const SECOND: Self = DerivativeOrder(2);

    pub fn new(order: u8) -> Result<Self> {
        if order > 2 {
            return domain(format!("derivative order {order} not in {{0, 1, 2}}"));
        }
        Ok(DerivativeOrder(order))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for DerivativeOrder {
    type Error = Error;

    fn try_from(order: u8) -> Result<Self> {
        DerivativeOrder::new(order)
    }
}

/// How a [`ThetaValue`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    DirectSeries,
    ModularTransform,
    TripleProduct,
}

/// A computed value with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms_used: u64,
    pub method: Method,
}

impl ThetaValue {
    /// Whether `x` lies within `value ± error_bound`.
    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.error_bound
    }
}

/// A real quantity with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

/// `s·θ'(s)/θ(s)` stored as `offset + residual`.
///
/// The small-`s` branch computes `-1/2 - g(w)` for a transformed argument
/// `w`; keeping the `-1/2` apart preserves the relative accuracy of the
/// exponentially small residual, which differences between nearby grid
/// points depend on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogDerivative {
    pub offset: f64,
    pub residual: f64,
    pub error_bound: f64,
}

impl LogDerivative {
    pub fn value(&self) -> f64 {
        self.offset + self.residual
    }

    /// `self - other`, exact in the offsets.
    pub fn minus(&self, other: &LogDerivative) -> f64 {
        (self.offset - other.offset) + (self.residual - other.residual)
    }

    /// `self - c` for a constant `c`, exact in the offset.
    pub fn minus_const(&self, c: f64) -> f64 {
        (self.offset - c) + self.residual
    }
}

#[derive(Debug, Clone, Copy)]
enum Kernel {
    Theta3,
    Theta4,
    Odd,
    Cosine(f64),
}

impl Kernel {
    fn of(family: ThetaFamily) -> Self {
        match family {
            ThetaFamily::Theta3 => Kernel::Theta3,
            ThetaFamily::Theta4 => Kernel::Theta4,
            ThetaFamily::ThetaOdd => Kernel::Odd,
            ThetaFamily::General { z } => Kernel::Cosine(z),
        }
    }

    fn first_index(self) -> u64 {
        match self {
            Kernel::Odd => 1,
            _ => 0,
        }
    }

    fn step(self) -> u64 {
        match self {
            Kernel::Odd => 2,
            _ => 1,
        }
    }

    fn weight(self, j: u64) -> f64 {
        match self {
            Kernel::Theta3 | Kernel::Odd => 1.0,
            Kernel::Theta4 => {
                if j % 2 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
            Kernel::Cosine(z) => {
                let frac = (j as f64 * z).rem_euclid(1.0);
                (2.0 * PI * frac).cos()
            }
        }
    }

    // Absolute error of `weight`, in units of the machine epsilon.
    fn weight_error(self, j: u64) -> f64 {
        match self {
            Kernel::Cosine(z) => 2.0 * PI * (j as f64 * z + 2.0),
            _ => 0.0,
        }
    }
}

/// Partial sum scaled by `exp(-log_scale)`; θ_o pulls out its leading
/// exponential so that ratios stay accurate after the value underflows.
#[derive(Debug, Clone, Copy)]
struct RawSum {
    scaled: f64,
    log_scale: f64,
    truncation: f64,
    rounding: f64,
    terms: u64,
}

impl RawSum {
    fn scaled_error(&self) -> f64 {
        self.truncation + self.rounding
    }

    fn value(&self) -> f64 {
        self.scaled * self.log_scale.exp()
    }

    fn error(&self) -> f64 {
        let scale_rounding = f64::EPSILON * (self.log_scale.abs() + 2.0) * self.scaled.abs();
        (self.scaled_error() + scale_rounding) * self.log_scale.exp()
    }
}

// Bound on Σ_{i≥0} 2(πj_i²)^m e^{-π(j_i² - j0²)s} over j_i = next + i·step.
// The ratio of consecutive terms decreases in j, so once it drops below one
// the tail is dominated by a geometric series.
fn tail_bound(next: u64, step: u64, j0_sq: f64, s: f64, order: u8) -> f64 {
    let a = next as f64;
    let b = (next + step) as f64;
    let x = PI * (a * a - j0_sq) * s;
    let first = 2.0 * (PI * a * a).powi(order as i32) * (-x).exp();
    if first == 0.0 {
        return 0.0;
    }
    let first = first * (1.0 + f64::EPSILON * (x + 8.0));
    let q = (b / a).powi(2 * order as i32) * (-PI * (b * b - a * a) * s).exp();
    if q < 1.0 {
        first / (1.0 - q)
    } else {
        f64::INFINITY
    }
}

fn direct_sum(kernel: Kernel, s: f64, order: u8, rel_truncation: f64) -> Result<RawSum> {
    let j0 = kernel.first_index();
    let step = kernel.step();
    let j0_sq = (j0 * j0) as f64;
    let log_scale = -PI * j0_sq * s;
    let sign = if order % 2 == 1 { -1.0 } else { 1.0 };

    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut round_acc = 0.0;
    let mut terms = 0u64;
    let mut j = j0;
    if j0 == 0 {
        if order == 0 {
            sum = 1.0;
            abs_sum = 1.0;
        }
        terms = 1;
        j = 1;
    }

    let truncation = loop {
        let jf = j as f64;
        let x = PI * (jf * jf - j0_sq) * s;
        let magnitude = 2.0 * (PI * jf * jf).powi(order as i32) * (-x).exp();
        let term = sign * kernel.weight(j) * magnitude;
        sum += term;
        abs_sum += term.abs();
        round_acc += term.abs() * (x + 4.0 + 2.0 * order as f64) + magnitude * kernel.weight_error(j);
        terms += 1;

        let next = j + step;
        let tail = tail_bound(next, step, j0_sq, s, order);
        if tail <= rel_truncation * sum.abs().max(f64::MIN_POSITIVE) {
            break tail;
        }
        if terms > TERM_CAP {
            return Err(Error::Convergence(format!(
                "series at s = {s} needs more than {TERM_CAP} terms"
            )));
        }
        j = next;
    };

    Ok(RawSum {
        scaled: sum,
        log_scale,
        truncation,
        rounding: f64::EPSILON * (round_acc + terms as f64 * abs_sum),
        terms,
    })
}

fn check_s(s: f64) -> Result<()> {
    if !s.is_finite() || s <= 0.0 {
        return domain(format!("s = {s} must be positive"));
    }
    if !(S_MIN..=S_MAX).contains(&s) {
        return domain(format!("s = {s} outside the supported range [{S_MIN:e}, {S_MAX:e}]"));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return domain(format!("tol = {tol} must lie in (0, 1)"));
    }
    Ok(())
}

fn finish(value: f64, error_bound: f64, terms_used: u64, method: Method, tol: f64) -> Result<ThetaValue> {
    if error_bound.is_nan() || error_bound > tol * value.abs().max(1.0) {
        return Err(Error::Convergence(format!(
            "certified bound {error_bound:e} does not reach tol = {tol:e} (value {value:e})"
        )));
    }
    Ok(ThetaValue {
        value,
        error_bound,
        terms_used,
        method,
    })
}

/// Evaluates a theta function or one of its first two `s`-derivatives.
///
/// Below [`SMALL_S_SWITCH`] the modular transforms are used, the direct
/// series otherwise. The
/// returned bound satisfies `error_bound <= tol * max(1, |value|)`.
pub fn eval_theta(family: ThetaFamily, s: f64, order: DerivativeOrder, tol: f64) -> Result<ThetaValue> {
    check_s(s)?;
    check_tol(tol)?;
    if s < SMALL_S_SWITCH {
        eval_theta_modular(family, s, order, tol)
    } else {
        eval_theta_direct(family, s, order, tol)
    }
}

/// Term-wise summation of the defining series, whatever the size of `s`.
pub fn eval_theta_direct(family: ThetaFamily, s: f64, order: DerivativeOrder, tol: f64) -> Result<ThetaValue> {
    check_s(s)?;
    check_tol(tol)?;
    let raw = direct_sum(Kernel::of(family), s, order.get(), 0.5 * tol)?;
    finish(raw.value(), raw.error(), raw.terms, Method::DirectSeries, tol)
}

/// Evaluation through the modular relations.
///
/// Θ(z, is) uses its Poisson form `s^{-1/2} Σ_k e^{-π(k+z)²/s}`.
pub fn eval_theta_modular(family: ThetaFamily, s: f64, order: DerivativeOrder, tol: f64) -> Result<ThetaValue> {
    check_s(s)?;
    check_tol(tol)?;
    let (coef, inner, a) = match family {
        ThetaFamily::Theta3 => (1.0, Kernel::Theta3, 1.0),
        ThetaFamily::Theta4 => (1.0, Kernel::Odd, 0.25),
        ThetaFamily::ThetaOdd => (0.5, Kernel::Theta4, 0.25),
        ThetaFamily::General { z } => return general_poisson(z, s, order, tol),
    };
    let w = a / s;
    check_s(w)?;
    let m = order.get();
    let h: Vec<RawSum> = (0..=m)
        .map(|k| direct_sum(inner, w, k, tol * 1e-3))
        .collect::<Result<_>>()?;

    // f(s) = p(s) h(w(s)) with p = coef·s^{-1/2}, w = a/s.
    let p0 = coef / s.sqrt();
    let p1 = -0.5 * p0 / s;
    let p2 = 0.75 * p0 / (s * s);
    let w1 = -w / s;
    let w2 = 2.0 * w / (s * s);
    let c: Vec<f64> = match m {
        0 => vec![p0],
        1 => vec![p1, p0 * w1],
        _ => vec![p2, 2.0 * p1 * w1 + p0 * w2, p0 * w1 * w1],
    };

    let mut scaled = 0.0;
    let mut abs_sum = 0.0;
    let mut err = 0.0;
    for (ck, hk) in c.iter().zip(&h) {
        scaled += ck * hk.scaled;
        abs_sum += (ck * hk.scaled).abs();
        err += ck.abs() * hk.scaled_error();
    }
    err += f64::EPSILON * (12.0 + 2.0 * h[0].log_scale.abs()) * abs_sum;
    let scale = h[0].log_scale.exp();
    let terms = h.iter().map(|r| r.terms).sum();
    finish(scaled * scale, err * scale, terms, Method::ModularTransform, tol)
}

// Terms g_d(s) = s^{-1/2} e^{-πd²/s} over d ∈ {m + z, m + 1 - z : m ≥ 0}.
// With w = 1/s and c = πd²w:
//   g' = g·(c w - w/2),   g'' = g·((c w - w/2)² - 2c w² + w²/2).
// The absolute factors are polynomials in d² with nonnegative coefficients,
// so the weighted terms decrease in d once d ≥ 1 for s < 1/4, and the tail
// past pair m is at most twice the geometric bound started at d = m + 1.
fn general_poisson(z: f64, s: f64, order: DerivativeOrder, tol: f64) -> Result<ThetaValue> {
    let w = 1.0 / s;
    let sqrt_w = w.sqrt();
    let m_ord = order.get();
    let factors = |d: f64| -> (f64, f64) {
        let c = PI * d * d * w;
        let lin = c * w - 0.5 * w;
        let lin_abs = c * w + 0.5 * w;
        match m_ord {
            0 => (1.0, 1.0),
            1 => (lin, lin_abs),
            _ => (
                lin * lin - 2.0 * c * w * w + 0.5 * w * w,
                lin_abs * lin_abs + 2.0 * c * w * w + 0.5 * w * w,
            ),
        }
    };
    let envelope = |d: f64| sqrt_w * factors(d).1 * (-PI * d * d * w).exp();

    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut round_acc = 0.0;
    let mut terms = 0u64;
    let mut m = 0u64;
    let truncation = loop {
        let mf = m as f64;
        for d in [mf + z, mf + 1.0 - z] {
            let x = PI * d * d * w;
            let base = sqrt_w * (-x).exp();
            let (p, p_abs) = factors(d);
            let t = base * p;
            sum += t;
            abs_sum += t.abs();
            round_acc += t.abs() * (x + 6.0) + 8.0 * base * p_abs;
            terms += 1;
        }
        let next = mf + 1.0;
        let first = envelope(next);
        let tail = if first == 0.0 {
            0.0
        } else {
            let q = ((next + 1.0) / next).powi(2 * m_ord as i32) * (-PI * (2.0 * next + 1.0) * w).exp();
            if q < 1.0 {
                2.0 * first * (1.0 + f64::EPSILON * (PI * next * next * w + 8.0)) / (1.0 - q)
            } else {
                f64::INFINITY
            }
        };
        if tail <= 0.5 * tol * sum.abs().max(1.0) {
            break tail;
        }
        if terms > TERM_CAP {
            return Err(Error::Convergence(format!(
                "Poisson series at s = {s} needs more than {TERM_CAP} terms"
            )));
        }
        m += 1;
    };
    let rounding = f64::EPSILON * (round_acc + (terms as f64 + 4.0) * abs_sum);
    finish(sum, truncation + rounding, terms, Method::ModularTransform, tol)
}

/// Θ(z, is) = 1 + 2 Σ_{k≥1} e^{-πk²s} cos(2πkz), with `z` reduced modulo 1.
pub fn eval_theta_general(z: f64, s: f64, tol: f64) -> Result<ThetaValue> {
    eval_theta(ThetaFamily::general(z)?, s, DerivativeOrder::VALUE, tol)
}

/// θ₄ from the Jacobi triple product
/// `Π_{k≥1} (1 - e^{-2kπs}) (1 - e^{-(2k-1)πs})²`.
///
/// After `K` factors the remaining product lies in `[1 - T, 1]` with
/// `T = Σ_{k>K} (q^{2k} + 2q^{2k-1}) ≤ (q^{2K+2} + 2q^{2K+1}) / (1 - q²)`,
/// `q = e^{-πs}`, so the truncation error is at most `P·T`.
pub fn theta4_triple_product(s: f64, tol: f64) -> Result<ThetaValue> {
    check_s(s)?;
    check_tol(tol)?;
    let x = PI * s;
    let one_minus_q2 = -(-2.0 * x).exp_m1();
    let mut product = 1.0;
    let mut k = 0u64;
    let tail = loop {
        k += 1;
        if k > TERM_CAP {
            return Err(Error::Convergence(format!(
                "triple product at s = {s} needs more than {TERM_CAP} factors"
            )));
        }
        let kf = k as f64;
        let even = -(-2.0 * kf * x).exp_m1();
        let odd = -(-(2.0 * kf - 1.0) * x).exp_m1();
        product *= even * odd * odd;
        let t = ((-(2.0 * kf + 2.0) * x).exp() + 2.0 * (-(2.0 * kf + 1.0) * x).exp()) / one_minus_q2;
        let t = t * (1.0 + f64::EPSILON * (x * (2.0 * kf + 2.0) + 8.0));
        if t <= 0.5 * tol {
            break t;
        }
    };
    let truncation = product * tail;
    let rounding = product * f64::EPSILON * 10.0 * k as f64;
    finish(product, truncation + rounding, k, Method::TripleProduct, tol)
}

fn ratio_family(family: ThetaFamily) -> Result<()> {
    if let ThetaFamily::General { .. } = family {
        return domain("log-derivative ratios are defined for theta3, theta4 and theta_odd only");
    }
    Ok(())
}

fn log_deriv_raw(kernel: Kernel, s: f64) -> Result<LogDerivative> {
    let d0 = direct_sum(kernel, s, 0, RATIO_TRUNCATION)?;
    let d1 = direct_sum(kernel, s, 1, RATIO_TRUNCATION)?;
    let g = s * d1.scaled / d0.scaled;
    let a0 = d0.scaled.abs();
    let err = s * (d1.scaled_error() + d1.scaled.abs() * d0.scaled_error() / a0) / a0 + 4.0 * f64::EPSILON * g.abs();
    Ok(LogDerivative {
        offset: 0.0,
        residual: g,
        error_bound: err,
    })
}

// Kernel and argument of the modular partner: g(s) = -1/2 - g_inner(w).
fn modular_partner(family: ThetaFamily, s: f64) -> (Kernel, f64) {
    match family {
        ThetaFamily::Theta3 => (Kernel::Theta3, 1.0 / s),
        ThetaFamily::Theta4 => (Kernel::Odd, 0.25 / s),
        _ => (Kernel::Theta4, 0.25 / s),
    }
}

/// `g(s) = s·θ'(s)/θ(s)` in split form, transformed below [`SMALL_S_SWITCH`].
pub fn log_deriv(family: ThetaFamily, s: f64) -> Result<LogDerivative> {
    check_s(s)?;
    ratio_family(family)?;
    if s >= SMALL_S_SWITCH {
        return log_deriv_raw(Kernel::of(family), s);
    }
    let (kernel, w) = modular_partner(family, s);
    let inner = log_deriv_raw(kernel, w)?;
    let g = inner.value();
    Ok(LogDerivative {
        offset: -0.5,
        residual: -g,
        error_bound: inner.error_bound + f64::EPSILON * (4.0 + PI * w) * g.abs(),
    })
}

/// `g(s) = s·θ'(s)/θ(s)` from the direct series only.
pub fn log_deriv_direct(family: ThetaFamily, s: f64) -> Result<LogDerivative> {
    check_s(s)?;
    ratio_family(family)?;
    log_deriv_raw(Kernel::of(family), s)
}

/// `s·θ'(s)/θ(s)` for θ₃, θ₄ or θ_o.
pub fn log_deriv_ratio(family: ThetaFamily, s: f64) -> Result<f64> {
    Ok(log_deriv(family, s)?.value())
}

fn log_deriv_slope_raw(kernel: Kernel, s: f64) -> Result<Estimate> {
    let d: Vec<RawSum> = (0..=2)
        .map(|m| direct_sum(kernel, s, m, RATIO_TRUNCATION))
        .collect::<Result<_>>()?;
    let a0 = d[0].scaled.abs();
    let r1 = d[1].scaled / d[0].scaled;
    let r2 = d[2].scaled / d[0].scaled;
    let e1 = (d[1].scaled_error() + r1.abs() * d[0].scaled_error()) / a0;
    let e2 = (d[2].scaled_error() + r2.abs() * d[0].scaled_error()) / a0;
    let value = r1 + s * (r2 - r1 * r1);
    let err = e1 + s * (e2 + 2.0 * r1.abs() * e1) + 4.0 * f64::EPSILON * (r1.abs() + s * r2.abs() + s * r1 * r1);
    Ok(Estimate { value, error_bound: err })
}

/// Derivative `g'(s)` of `g(s) = s·θ'(s)/θ(s)`.
///
/// `g'(s) = θ'/θ + s(θ''θ - θ'²)/θ²`, so its sign decides the refined
/// log-convexity chains. Below [`SMALL_S_SWITCH`] it is obtained from the
/// differentiated modular relation `g'(s) = g_inner'(w)·w/s`.
pub fn log_deriv_slope(family: ThetaFamily, s: f64) -> Result<Estimate> {
    check_s(s)?;
    ratio_family(family)?;
    if s >= SMALL_S_SWITCH {
        return log_deriv_slope_raw(Kernel::of(family), s);
    }
    let (kernel, w) = modular_partner(family, s);
    let inner = log_deriv_slope_raw(kernel, w)?;
    let factor = w / s;
    let value = inner.value * factor;
    Ok(Estimate {
        value,
        error_bound: inner.error_bound * factor + f64::EPSILON * (6.0 + PI * w) * value.abs(),
    })
}

/// `|θ₃(1/s) - √s·θ₃(s)|`, both sides from the direct series.
pub fn jacobi_identity_residual(s: f64) -> Result<f64> {
    check_s(s)?;
    check_s(1.0 / s)?;
    let lhs = direct_sum(Kernel::Theta3, 1.0 / s, 0, 1e-18)?.value();
    let rhs = s.sqrt() * direct_sum(Kernel::Theta3, s, 0, 1e-18)?.value();
    Ok((lhs - rhs).abs())
}

/// `|g₃(s) + g₃(1/s) + 1/2|` with `g₃ = s·θ₃'/θ₃`, both terms from the
/// direct series so that the modular relation under test is not assumed.
pub fn fact2_residual(s: f64) -> Result<f64> {
    check_s(s)?;
    let a = log_deriv_direct(ThetaFamily::Theta3, s)?;
    let b = log_deriv_direct(ThetaFamily::Theta3, 1.0 / s)?;
    Ok((a.value() + b.value() + 0.5).abs())
}

/// `|θ_o(rs) - θ₄(1/(4rs)) / (2√(rs))|`, both sides from the direct series.
pub fn theta_odd_poisson_residual(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("r = {r} must be positive"));
    }
    check_s(s)?;
    let x = r * s;
    check_s(x)?;
    check_s(0.25 / x)?;
    let lhs = direct_sum(Kernel::Odd, x, 0, 1e-18)?.value();
    let rhs = direct_sum(Kernel::Theta4, 0.25 / x, 0, 1e-18)?.value() / (2.0 * x.sqrt());
    Ok((lhs - rhs).abs())
}
