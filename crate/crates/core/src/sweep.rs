//! Sweeps over the frequency step `β` at fixed redundancy, the search for
//! the optimal lattice, and CSV/SVG output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::frame::{frame_bounds, LatticeParams};
use crate::oracle::GridSpec;
use crate::theta::DEFAULT_TOL;

/// Points of the coarse scan that brackets each optimum.
pub const BRACKET_SCAN_POINTS: usize = 64;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimumReport {
    pub n: u32,
    pub beta_for_max_a: f64,
    pub max_a: f64,
    pub beta_for_min_b: f64,
    pub min_b: f64,
    /// Larger of the two final golden-section brackets.
    pub bracket_width: f64,
}

/// Which column of a sweep to plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Column {
    A,
    B,
    Ratio,
}

impl Column {
    fn label(self) -> &'static str {
        match self {
            Column::A => "A",
            Column::B => "B",
            Column::Ratio => "B/A",
        }
    }

    fn of(self, row: &SweepRow) -> f64 {
        match self {
            Column::A => row.lower,
            Column::B => row.upper,
            Column::Ratio => row.ratio,
        }
    }
}

/// Frame bounds at every grid point, in grid order.
pub fn sweep_beta(n: u32, grid: &GridSpec, tol: f64) -> Result<Vec<SweepRow>> {
    grid.points()
        .into_par_iter()
        .map(|beta| {
            let fb = frame_bounds(&LatticeParams::new(n, beta)?, tol)?;
            Ok(SweepRow {
                beta,
                lower: fb.lower,
                upper: fb.upper,
                ratio: fb.ratio,
            })
        })
        .collect()
}

// Golden-section search for the minimum of `f` on [a, b].
fn golden_min(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, resolution: f64) -> Result<(f64, f64, f64)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > resolution {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?, b - a))
}

// Scan `f` on a uniform grid, return the bracket around its smallest value.
// Ties go to the smallest β; an extremum on the boundary is an error.
fn bracket(f: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64, what: &str) -> Result<(f64, f64)> {
    let grid = GridSpec::linear(lo, hi, BRACKET_SCAN_POINTS)?;
    let pts = grid.points();
    let vals: Vec<f64> = pts.iter().map(|&b| f(b)).collect::<Result<_>>()?;
    let mut best = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v < vals[best] {
            best = i;
        }
    }
    if best == 0 || best + 1 == pts.len() {
        return Err(Error::Range(format!(
            "the {what} sits on the boundary beta = {} of [{lo}, {hi}]",
            pts[best]
        )));
    }
    Ok((pts[best - 1], pts[best + 1]))
}

/// Locates `argmax_β A(β)` and `argmin_β B(β)` on `(lo, hi)`.
///
/// Each search scans 64 points to bracket the optimum and then runs
/// golden-section until the bracket is at most `resolution` wide.
pub fn find_optimal_beta(n: u32, range: (f64, f64), resolution: f64) -> Result<OptimumReport> {
    let (lo, hi) = range;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return domain(format!("search range ({lo}, {hi}) must satisfy 0 < lo < hi"));
    }
    if resolution.is_nan() || resolution < 1e-8 {
        return domain(format!("resolution = {resolution} must be at least 1e-8"));
    }
    LatticeParams::new(n, lo)?;

    let neg_a = |beta: f64| -> Result<f64> { Ok(-frame_bounds(&LatticeParams::new(n, beta)?, DEFAULT_TOL)?.lower) };
    let b = |beta: f64| -> Result<f64> { Ok(frame_bounds(&LatticeParams::new(n, beta)?, DEFAULT_TOL)?.upper) };

    let (a_lo, a_hi) = bracket(&neg_a, lo, hi, "maximum of A")?;
    let (beta_a, neg_max_a, width_a) = golden_min(&neg_a, a_lo, a_hi, resolution)?;
    let (b_lo, b_hi) = bracket(&b, lo, hi, "minimum of B")?;
    let (beta_b, min_b, width_b) = golden_min(&b, b_lo, b_hi, resolution)?;

    Ok(OptimumReport {
        n,
        beta_for_max_a: beta_a,
        max_a: -neg_max_a,
        beta_for_min_b: beta_b,
        min_b,
        bracket_width: width_a.max(width_b),
    })
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text: header `beta,A,B,ratio`, one LF-terminated line per row.
pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut out = String::from("beta,A,B,ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", sci(r.beta), sci(r.lower), sci(r.upper), sci(r.ratio));
    }
    out
}

/// Writes the sweep as CSV. Fails without touching the file system when
/// `rows` is empty.
pub fn emit_csv(rows: &[SweepRow], destination: &Path) -> Result<()> {
    if rows.is_empty() {
        return domain("cannot write a CSV without rows");
    }
    fs::write(destination, csv_string(rows))?;
    Ok(())
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 70.0;

fn padded_range(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

/// SVG document plotting one column against `β`.
pub fn svg_string(rows: &[SweepRow], which: Column) -> Result<String> {
    if rows.len() < 2 {
        return domain("a plot needs at least two rows");
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.beta).collect();
    let ys: Vec<f64> = rows.iter().map(|r| which.of(r)).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return domain(format!("column {} contains non-finite values", which.label()));
    }
    let fold = |v: &[f64]| v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let (x0, x1) = fold(&xs);
    let (x0, x1) = if x1 > x0 { (x0, x1) } else { padded_range(x0, x1) };
    let (y0, y1) = fold(&ys);
    let (y0, y1) = padded_range(y0, y1);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (bx, by) = (LEFT, TOP + plot_h);
    let _ = writeln!(
        svg,
        r#"<path d="M {bx:.3} {TOP:.3} L {bx:.3} {by:.3} L {:.3} {by:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
        LEFT + plot_w
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let (tx, ty) = (px(xv), py(yv));
        let _ = writeln!(
            svg,
            r#"<line x1="{tx:.3}" y1="{by:.3}" x2="{tx:.3}" y2="{:.3}" stroke="black"/><text x="{tx:.3}" y="{:.3}" font-size="12" text-anchor="middle">{xv:.4}</text>"#,
            by + 5.0,
            by + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.3}" y1="{ty:.3}" x2="{bx:.3}" y2="{ty:.3}" stroke="black"/><text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{}</text>"#,
            bx - 5.0,
            bx - 8.0,
            ty + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">beta</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.3})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        which.label()
    );
    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| format!("{:.3},{:.3}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        points.join(" ")
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.3e}")
    } else {
        format!("{v:.6}")
    }
}

/// Writes an 800×600 SVG line plot of one column against `β`.
pub fn emit_plot(rows: &[SweepRow], destination: &Path, which: Column) -> Result<()> {
    let svg = svg_string(rows, which)?;
    fs::write(destination, svg)?;
    Ok(())
}
