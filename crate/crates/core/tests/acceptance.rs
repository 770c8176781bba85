//! Acceptance gate: each criterion prints one PASS/FAIL line, and the
//! process exits nonzero if any of them fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gabor_theta::frame::{frame_bounds, frame_bounds_even, LatticeParams};
use gabor_theta::oracle::{frame_bounds_via_f, grid_extrema_f, GridSpec};
use gabor_theta::sweep::find_optimal_beta;
use gabor_theta::theta::{eval_theta, DerivativeOrder, ThetaFamily};
use gabor_theta::verify::{self, CheckResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite(r: gabor_theta::Result<CheckResult>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    let line = format!(
        "{} worst {:+.3e} at {:?} over {} points",
        r.name, r.worst_residual, r.worst_location, r.points_tested
    );
    if r.passed {
        Ok(line)
    } else {
        Err(line)
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for p in parts {
        match p {
            Ok(l) => lines.push(l),
            Err(l) => {
                ok = false;
                lines.push(format!("FAILED {l}"));
            }
        }
    }
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn log_grid(a: f64, b: f64, n: usize) -> GridSpec {
    GridSpec::log(a, b, n).unwrap()
}

fn jacobi_identity() -> Outcome {
    suite(verify::check_jacobi_identity(&log_grid(0.05, 20.0, 100), 1e-10))
}

fn fact2() -> Outcome {
    suite(verify::check_fact2(&log_grid(0.05, 20.0, 100), 1e-10))
}

fn triple_product() -> Outcome {
    suite(verify::check_triple_product(&log_grid(0.1, 10.0, 100), 1e-12))
}

fn poisson() -> Outcome {
    suite(verify::check_poisson(50, 2024, 1e-12))
}

fn monotonicity() -> Outcome {
    let g = log_grid(0.05, 20.0, 1000);
    all(vec![
        suite(verify::check_monotone_log_ratio(ThetaFamily::Theta3, &g)),
        suite(verify::check_monotone_log_ratio(ThetaFamily::Theta4, &g)),
    ])
}

fn refined() -> Outcome {
    suite(verify::check_refined_inequalities(&log_grid(0.05, 10.0, 500)))
}

const R_VALUES: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

fn product_extremality() -> Outcome {
    let g = log_grid(1.0 / 3.0, 3.0, 301);
    all(vec![
        suite(verify::check_product_inequality(ThetaFamily::Theta3, &R_VALUES, &g)),
        suite(verify::check_product_inequality(ThetaFamily::Theta4, &R_VALUES, &g)),
    ])
}

fn odd_extremality() -> Outcome {
    let g = log_grid(1.0 / 3.0, 3.0, 301);
    all(vec![
        suite(verify::check_odd_upper(&R_VALUES, &g)),
        suite(verify::check_odd_lower(&[1.0, 2.0, 5.0], &g)),
    ])
}

fn odd_ratio() -> Outcome {
    let g = log_grid(1e-3, 10.0, 1250);
    let upper = g.points().iter().filter(|&&s| s >= 0.25).count();
    if upper < 500 {
        return Err(format!("only {upper} grid points in [1/4, 10]"));
    }
    suite(verify::check_lemma_odd_ratio(&g)).map(|l| format!("{l} ({upper} in [1/4, 10])"))
}

fn square_lattice() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, range) in [(2u32, (0.3, 1.5)), (3, (0.3, 1.5)), (4, (0.2, 1.2))] {
        let opt = find_optimal_beta(n, range, 1e-6).map_err(|e| e.to_string())?;
        let target = 1.0 / (n as f64).sqrt();
        for b in [opt.beta_for_max_a, opt.beta_for_min_b] {
            worst = worst.max((b - target).abs());
        }
    }
    let fb = frame_bounds_even(2, 0.5f64.sqrt(), 1e-12).map_err(|e| e.to_string())?;
    let ratio_dev = (fb.ratio - 2f64.sqrt()).abs();
    let line = format!("optimizer deviation {worst:.2e}, ratio deviation {ratio_dev:.2e}");
    if worst < 1e-4 && ratio_dev < 1e-10 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [2u32, 3, 4] {
        for beta in [0.4, 1.0 / (n as f64).sqrt(), 0.9] {
            let p = LatticeParams::new(n, beta).map_err(|e| e.to_string())?;
            let closed = frame_bounds(&p, 1e-13).map_err(|e| e.to_string())?;
            let via_f = frame_bounds_via_f(&p, 128, None).map_err(|e| e.to_string())?;
            let report = grid_extrema_f(&p, 128, None).map_err(|e| e.to_string())?;
            if report.argmax != (0.0, 0.0) || report.argmin != (0.5, 0.5) {
                return Err(format!(
                    "n = {n}, beta = {beta}: argmax {:?}, argmin {:?}",
                    report.argmax, report.argmin
                ));
            }
            worst = worst
                .max((closed.lower - via_f.lower).abs())
                .max((closed.upper - via_f.upper).abs());
        }
    }
    let elapsed = start.elapsed();
    let line = format!("max |closed - grid| = {worst:.2e} in {elapsed:.1?}");
    if worst < 1e-8 && elapsed < Duration::from_secs(120) {
        Ok(line)
    } else {
        Err(line)
    }
}

fn derivatives() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    let mut at = (String::new(), 0.0, 0u8);
    let names = ["theta3", "theta4", "theta_odd", "theta_general"];
    for name in names {
        for _ in 0..100 {
            let family = match name {
                "theta3" => ThetaFamily::Theta3,
                "theta4" => ThetaFamily::Theta4,
                "theta_odd" => ThetaFamily::ThetaOdd,
                _ => ThetaFamily::general(rng.gen_range(0.0..1.0)).unwrap(),
            };
            let s = rng.gen_range(0.05f64.ln()..3f64.ln()).exp();
            let h = 1e-5 * s.max(1.0);
            for order in [1u8, 2] {
                let lower = DerivativeOrder::new(order - 1).unwrap();
                let ev = |x: f64, o: DerivativeOrder| eval_theta(family, x, o, 1e-12).map(|v| v.value);
                let fd = (ev(s + h, lower).map_err(|e| e.to_string())?
                    - ev(s - h, lower).map_err(|e| e.to_string())?)
                    / (2.0 * h);
                let analytic = ev(s, DerivativeOrder::new(order).unwrap()).map_err(|e| e.to_string())?;
                let rel = (fd - analytic).abs() / analytic.abs();
                if rel > worst {
                    worst = rel;
                    at = (name.to_string(), s, order);
                }
            }
        }
    }
    let line = format!(
        "worst relative error {worst:.2e} ({} order {} at s = {:.4})",
        at.0, at.2, at.1
    );
    if worst < 1e-6 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_gabor-theta");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
            String::from_utf8_lossy(&out.stderr).into_owned(),
        )
    };
    let mut parts = Vec::new();

    let (code, out, _) = run(&["eval", "--family", "theta3", "--s", "1", "--order", "0"]);
    parts.push(if code == 0 && out.contains("1.0864348112") {
        Ok("eval ok".to_string())
    } else {
        Err(format!("eval: exit {code}, output {out:?}"))
    });

    let (code, out, _) = run(&["bounds", "--n", "2", "--beta", "0.70710678", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    let near = |k: &str, v: f64| json[k].as_f64().is_some_and(|x| (x - v).abs() < 5e-7);
    parts.push(
        if code == 0 && near("lower", 1.6692537) && near("upper", 2.3606812) && near("ratio", std::f64::consts::SQRT_2) {
            Ok("bounds ok".to_string())
        } else {
            Err(format!("bounds: exit {code}, output {out:?}"))
        },
    );

    let (code, _, err) = run(&["eval", "--family", "theta3", "--s", "-1"]);
    parts.push(if code == 1 && err.lines().count() == 1 && err.contains("domain") {
        Ok("domain error ok".to_string())
    } else {
        Err(format!("negative s: exit {code}, stderr {err:?}"))
    });

    let (code, out, _) = run(&["verify", "--suite", "all"]);
    let suites = out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("INFO")).count();
    parts.push(if code == 0 && suites == verify::SUITE_NAMES.len() {
        Ok("verify ok".to_string())
    } else {
        Err(format!("verify: exit {code}, output {out:?}"))
    });

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let sweep = |p: &Path| {
        run(&[
            "sweep",
            "--n",
            "2",
            "--beta-min",
            "0.4",
            "--beta-max",
            "1.4",
            "--steps",
            "101",
            "--out",
            p.to_str().unwrap(),
        ])
    };
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let (c1, _, _) = sweep(&a);
    let (c2, _, _) = sweep(&b);
    let same = std::fs::read(&a).ok().zip(std::fs::read(&b).ok()).is_some_and(|(x, y)| x == y && !x.is_empty());
    parts.push(if c1 == 0 && c2 == 0 && same {
        Ok("sweep csv reproducible".to_string())
    } else {
        Err(format!("sweep: exits {c1}/{c2}, identical {same}"))
    });
    all(parts)
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("jacobi identity", jacobi_identity),
        ("log-derivative identity", fact2),
        ("triple product", triple_product),
        ("poisson relation", poisson),
        ("log-ratio monotonicity", monotonicity),
        ("refined inequalities", refined),
        ("product extremality", product_extremality),
        ("odd-redundancy extremality", odd_extremality),
        ("odd log-ratio", odd_ratio),
        ("square lattice optimality", square_lattice),
        ("oracle equivalence", oracle_equivalence),
        ("derivative finite differences", derivatives),
        ("cli end to end", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
