//! Brute-force references used to validate the closed forms.
//!
//! Nothing here certifies its own accuracy beyond a tail envelope; the
//! point is an evaluation path that shares no code with [`crate::theta`].

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::frame::{FrameBounds, LatticeParams};
use crate::theta::ThetaFamily;

/// Neglected-tail target for Janssen's double series.
pub const JANSSEN_TAIL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scale {
    Linear,
    Log,
}

/// `steps` points from `min` to `max` inclusive, equally spaced in the
/// chosen scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, steps: usize, scale: Scale) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return domain(format!("grid needs finite min < max, got [{min}, {max}]"));
        }
        if steps < 2 {
            return domain(format!("grid needs at least 2 steps, got {steps}"));
        }
        if scale == Scale::Log && min <= 0.0 {
            return domain(format!("log grid needs min > 0, got {min}"));
        }
        Ok(GridSpec { min, max, steps, scale })
    }

    pub fn linear(min: f64, max: f64, steps: usize) -> Result<Self> {
        Self::new(min, max, steps, Scale::Linear)
    }

    pub fn log(min: f64, max: f64, steps: usize) -> Result<Self> {
        Self::new(min, max, steps, Scale::Log)
    }

    pub fn point(&self, i: usize) -> f64 {
        if i == 0 {
            return self.min;
        }
        if i + 1 == self.steps {
            return self.max;
        }
        let t = i as f64 / (self.steps - 1) as f64;
        match self.scale {
            Scale::Linear => self.min + t * (self.max - self.min),
            Scale::Log => {
                let (a, b) = (self.min.ln(), self.max.ln());
                (a + t * (b - a)).exp()
            }
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.point(i)).collect()
    }
}

/// Partial sum over `|k| ≤ k_max` (θ_o: odd `j` with `|j| ≤ 2k_max + 1`),
/// summed from the most negative index upwards with no error control.
pub fn naive_theta(family: ThetaFamily, s: f64, k_max: u32) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("s = {s} must be positive"));
    }
    let k_max = k_max as i64;
    let mut sum = 0.0;
    match family {
        ThetaFamily::ThetaOdd => {
            for k in (-k_max - 1)..=k_max {
                let j = (2 * k + 1) as f64;
                sum += (-PI * j * j * s).exp();
            }
        }
        _ => {
            for k in -k_max..=k_max {
                let kf = k as f64;
                let weight = match family {
                    ThetaFamily::Theta3 => 1.0,
                    ThetaFamily::Theta4 => {
                        if k % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    ThetaFamily::General { z } => (2.0 * PI * kf * z).cos(),
                    ThetaFamily::ThetaOdd => unreachable!(),
                };
                sum += weight * (-PI * kf * kf * s).exp();
            }
        }
    }
    Ok(sum)
}

/// Smallest `K ≥ 1` with `(2K+1)² e^{-(π/2)K²·min(1/β², 1/α²)} < 1e-13`.
pub fn janssen_truncation(params: &LatticeParams) -> u32 {
    let m = (1.0 / (params.beta * params.beta)).min(1.0 / (params.alpha * params.alpha));
    let mut k = 1u32;
    loop {
        let kf = k as f64;
        let envelope = (2.0 * kf + 1.0).powi(2) * (-0.5 * PI * kf * kf * m).exp();
        if envelope < JANSSEN_TAIL {
            return k;
        }
        k += 1;
    }
}

fn resolve_k_max(params: &LatticeParams, k_max: Option<u32>) -> Result<u32> {
    let needed = janssen_truncation(params);
    match k_max {
        None => Ok(needed),
        Some(k) if k >= needed => Ok(k),
        Some(k) => domain(format!(
            "k_max = {k} leaves a tail above {JANSSEN_TAIL:e}; at least {needed} is required"
        )),
    }
}

fn check_point(x: f64, omega: f64) -> Result<()> {
    if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&omega)) {
        return domain(format!("(x, omega) = ({x}, {omega}) outside [0,1]²"));
    }
    Ok(())
}

// Coefficient of the (k, l) term, including the sign (-1)^{kln} and 1/(αβ) = n.
fn janssen_coefficient(params: &LatticeParams, k: i64, l: i64) -> f64 {
    let kf = k as f64;
    let lf = l as f64;
    let decay = (-0.5 * PI * (kf * kf / (params.beta * params.beta) + lf * lf / (params.alpha * params.alpha))).exp();
    let sign = if (k * l * params.n as i64).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    params.n as f64 * sign * decay
}

/// Real and imaginary part of the full complex double sum
/// `(1/αβ) ΣΣ (-1)^{kl/(αβ)} e^{-(π/2)(k²/β² + l²/α²)} e^{2πi(kx + lω)}`.
pub fn janssen_f_complex(x: f64, omega: f64, params: &LatticeParams, k_max: u32) -> Result<(f64, f64)> {
    check_point(x, omega)?;
    let k_max = resolve_k_max(params, Some(k_max))? as i64;
    let mut re = 0.0;
    let mut im = 0.0;
    for k in -k_max..=k_max {
        for l in -k_max..=k_max {
            let c = janssen_coefficient(params, k, l);
            let phase = 2.0 * PI * (k as f64 * x + l as f64 * omega);
            re += c * phase.cos();
            im += c * phase.sin();
        }
    }
    Ok((re, im))
}

/// Janssen's function `F(x, ω; α, β)`; the imaginary part cancels by the
/// `(k, l) ↔ (-k, -l)` symmetry, so only cosines are summed.
pub fn janssen_f(x: f64, omega: f64, params: &LatticeParams, k_max: u32) -> Result<f64> {
    check_point(x, omega)?;
    let k_max = resolve_k_max(params, Some(k_max))?;
    Ok(janssen_f_unchecked(x, omega, params, k_max as i64))
}

fn janssen_f_unchecked(x: f64, omega: f64, params: &LatticeParams, k_max: i64) -> f64 {
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        for l in -k_max..=k_max {
            let phase = 2.0 * PI * (k as f64 * x + l as f64 * omega);
            sum += janssen_coefficient(params, k, l) * phase.cos();
        }
    }
    sum
}

/// Extrema of `F` over the grid `{i/steps} × {j/steps}`, `0 ≤ i, j < steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremaReport {
    pub max_value: f64,
    pub argmax: (f64, f64),
    pub min_value: f64,
    pub argmin: (f64, f64),
    pub grid_steps: u32,
    pub truncation_k: u32,
}

/// Evaluates `F` on the uniform grid and returns its extrema.
///
/// Grid points are evaluated in parallel; the reduction runs in
/// lexicographic `(i, j)` order and keeps the first strict extremum, so the
/// report does not depend on scheduling.
pub fn grid_extrema_f(params: &LatticeParams, grid_steps: u32, k_max: Option<u32>) -> Result<ExtremaReport> {
    if grid_steps < 8 || !grid_steps.is_multiple_of(2) {
        return domain(format!("grid_steps = {grid_steps} must be even and at least 8"));
    }
    let k = resolve_k_max(params, k_max)?;
    let n = grid_steps as usize;
    let h = 1.0 / grid_steps as f64;
    let values: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            janssen_f_unchecked(i as f64 * h, j as f64 * h, params, k as i64)
        })
        .collect();

    let (mut imax, mut imin) = (0usize, 0usize);
    for (idx, &v) in values.iter().enumerate() {
        if v > values[imax] {
            imax = idx;
        }
        if v < values[imin] {
            imin = idx;
        }
    }
    let at = |idx: usize| ((idx / n) as f64 * h, (idx % n) as f64 * h);
    Ok(ExtremaReport {
        max_value: values[imax],
        argmax: at(imax),
        min_value: values[imin],
        argmin: at(imin),
        grid_steps,
        truncation_k: k,
    })
}

/// Frame bounds read off the grid extrema of `F`.
///
/// The error bound adds the tail envelope, summation rounding, and the
/// largest possible gap between a continuum extremum and its nearest grid
/// point, `M h²/4` with `M` bounding the Hessian of `F`.
pub fn frame_bounds_via_f(params: &LatticeParams, grid_steps: u32, k_max: Option<u32>) -> Result<FrameBounds> {
    let report = grid_extrema_f(params, grid_steps, k_max)?;
    let k = report.truncation_k as i64;
    let mut abs_sum = 0.0;
    let mut hessian = 0.0;
    for kk in -k..=k {
        for l in -k..=k {
            let c = janssen_coefficient(params, kk, l).abs();
            abs_sum += c;
            hessian += c * 4.0 * PI * PI * ((kk * kk + l * l) as f64);
        }
    }
    let h = 1.0 / grid_steps as f64;
    let terms = ((2 * k + 1) * (2 * k + 1)) as f64;
    let rounding = f64::EPSILON * (terms + 8.0 * k as f64 + 8.0) * abs_sum;
    let error_bound = params.n as f64 * JANSSEN_TAIL + rounding + hessian * h * h / 4.0;
    Ok(FrameBounds::from_parts(report.min_value, report.max_value, error_bound))
}
