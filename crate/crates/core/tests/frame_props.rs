use gabor_theta::frame::{frame_bounds, frame_bounds_even, frame_bounds_odd, LatticeParams};
use gabor_theta::oracle::GridSpec;
use gabor_theta::theta::{eval_theta, DerivativeOrder, ThetaFamily};

const TOL: f64 = 1e-13;

fn bounds(n: u32, beta: f64) -> gabor_theta::FrameBounds {
    frame_bounds(&LatticeParams::new(n, beta).unwrap(), TOL).unwrap()
}

#[test]
fn reparametrization_symmetry() {
    for n in 1..=6u32 {
        for beta in GridSpec::log(0.2, 2.0, 37).unwrap().points() {
            let a = bounds(n, beta);
            let b = bounds(n, 1.0 / (n as f64 * beta));
            assert!((a.lower - b.lower).abs() <= 1e-12, "n = {n}, beta = {beta}");
            assert!((a.upper - b.upper).abs() <= 1e-12, "n = {n}, beta = {beta}");
        }
    }
}

#[test]
fn odd_bounds_sit_below_even_envelope() {
    let t = |f, s| eval_theta(f, s, DerivativeOrder::VALUE, TOL).unwrap().value;
    for n in [1u32, 3, 5] {
        for beta in GridSpec::log(0.3, 1.5, 25).unwrap().points() {
            let p = LatticeParams::new(n, beta).unwrap();
            let (a, b) = p.theta_args();
            let fb = frame_bounds_odd(n, beta, TOL).unwrap();
            let nf = n as f64;
            let odd = 2.0 * nf * t(ThetaFamily::ThetaOdd, a) * t(ThetaFamily::ThetaOdd, b);
            let upper_env = nf * t(ThetaFamily::Theta3, a) * t(ThetaFamily::Theta3, b);
            let lower_env = nf * t(ThetaFamily::Theta4, a) * t(ThetaFamily::Theta4, b);
            assert!(odd > 0.0);
            // the gap is the subtracted product, visible whenever it exceeds the bound
            for (bound, env) in [(fb.upper, upper_env), (fb.lower, lower_env)] {
                assert!(((env - bound) - odd).abs() <= 2.0 * fb.error_bound);
                if odd > 2.0 * fb.error_bound {
                    assert!(bound < env, "n = {n}, beta = {beta}");
                }
            }
        }
    }
}

#[test]
fn ratio_grows_away_from_square_lattice() {
    for n in [2u32, 3, 4] {
        let center = 1.0 / (n as f64).sqrt();
        let right = GridSpec::log(center, 3.0 * center, 60).unwrap().points();
        let left = GridSpec::log(0.3 * center, center, 60).unwrap().points();
        let ratios = |pts: &[f64]| pts.iter().map(|&b| bounds(n, b).ratio).collect::<Vec<_>>();
        let r = ratios(&right);
        assert!(r.windows(2).all(|w| w[1] > w[0]), "n = {n} right side");
        let l = ratios(&left);
        assert!(l.windows(2).all(|w| w[1] < w[0]), "n = {n} left side");
    }
}

#[test]
fn frames_above_critical_density() {
    for n in 2..=8u32 {
        for beta in GridSpec::log(0.3, 1.5, 20).unwrap().points() {
            let fb = bounds(n, beta);
            assert!(fb.valid && fb.lower > 0.0 && fb.upper.is_finite(), "n = {n}, beta = {beta}");
            assert!(fb.lower <= fb.upper && fb.ratio >= 1.0);
        }
    }
}

#[test]
fn reference_point_values() {
    let fb = frame_bounds_even(2, 0.5f64.sqrt(), TOL).unwrap();
    assert!((fb.lower - 1.6692537).abs() < 1e-7 && (fb.upper - 2.3606812).abs() < 1e-7);
    let fb = frame_bounds_odd(3, (1.0f64 / 3.0).sqrt(), TOL).unwrap();
    // 40-digit evaluation of the same formula: 2.89123219028..., 3.10683117759...
    assert!((fb.lower - 2.891_232_190_280_48).abs() < 1e-12);
    assert!((fb.upper - 3.106_831_177_595_725).abs() < 1e-12);
    let fb = bounds(4, 0.5);
    assert!((fb.upper - 4.0299349).abs() < 1e-7);
}

#[test]
fn degenerate_critical_density() {
    let fb = frame_bounds_odd(1, 1.0, TOL).unwrap();
    assert!(!fb.valid);
    assert!(fb.lower.abs() <= fb.error_bound);
    assert_eq!(fb.ratio, f64::INFINITY);
}
