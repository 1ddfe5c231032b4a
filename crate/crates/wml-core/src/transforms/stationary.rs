//! Numerical verification of the stationary-phase structure of h~+(t): the
//! integrand h_hat(s) G_t^+(s) along s = sigma + i(2t + y) has a unique
//! stationary point whose location is predicted by the positive root of
//! K^2 y (y + 4t) = (2t + y)^4.

use super::kernels::{kernel_log, SpectralArg, Variant};
use super::TransformConfig;
use crate::error::{Error, Result};
use crate::testfn::{h_hat_log, TestFunctionParams};
use serde::Serialize;

/// Outcome of the stationary-point search at one spectral parameter t.
#[derive(Debug, Clone, Serialize)]
pub struct StationaryPointResult {
    pub t: f64,
    /// Zero of the unwrapped phase derivative along tau = 2t + y.
    pub y_located: f64,
    /// Positive root of K^2 y (y + 4t) = (2t + y)^4.
    pub y_predicted: f64,
    pub rel_deviation: f64,
}

/// Unwrapped phase of the integrand at s = sigma + i(2t + y).
fn phase_at(
    y: f64,
    t: f64,
    p: &TestFunctionParams,
    tc: &TransformConfig,
) -> Result<f64> {
    let cfg = &tc.cfg;
    let s = cfg.cplx(tc.sigma, 2.0 * t + y);
    let lh = h_hat_log(&s, p, cfg)?;
    let lk = kernel_log(Variant::Plus, &s, &SpectralArg::MaassT(t), cfg)?;
    Ok((&lh + &lk).im.to_f64())
}

/// Reduce a phase increment to (-pi, pi].
fn wrap_increment(d: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut r = d % two_pi;
    if r > std::f64::consts::PI {
        r -= two_pi;
    } else if r <= -std::f64::consts::PI {
        r += two_pi;
    }
    r
}

/// Local phase slope by a symmetric difference over a relative step small
/// enough that the increment cannot wrap.
fn phase_slope(
    y: f64,
    t: f64,
    p: &TestFunctionParams,
    tc: &TransformConfig,
) -> Result<f64> {
    let h = y * 1e-7;
    let a = phase_at(y - h, t, p, tc)?;
    let b = phase_at(y + h, t, p, tc)?;
    Ok(wrap_increment(b - a) / (2.0 * h))
}

/// Solve K^2 y (y + 4t) = (2t + y)^4 for its positive root by bisection on
/// (0, 80 t^3/K^2).
pub fn predicted_stationary_point(t: f64, k: f64) -> f64 {
    let g = |y: f64| (k * k * y * (y + 4.0 * t)).ln() - 4.0 * (2.0 * t + y).ln();
    let mut lo = 1e-12 * t * t * t / (k * k);
    let mut hi = 80.0 * t * t * t / (k * k);
    debug_assert!(g(lo) < 0.0 && g(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locate the stationary point of the integrand phase numerically and
/// compare against the quartic-root prediction.
///
/// The admissible regime is the oscillatory one, K^(2/3+0.05) < t
/// < K log K / L (the upper end follows the integrand analysis; the
/// window below K/L would exclude the regime's own interior).
pub fn locate_stationary_point(
    t: f64,
    p: &TestFunctionParams,
    tc: &TransformConfig,
) -> Result<StationaryPointResult> {
    p.validate()?;
    let k = p.weight_center as f64;
    let l = p.window as f64;
    let lo_t = k.powf(2.0 / 3.0 + 0.05);
    let hi_t = k * k.ln() / l;
    if !(t > lo_t && t < hi_t) {
        return Err(Error::Domain(format!(
            "stationary-point search needs K^(2/3+0.05) < t < K ln K/L, got t = {t} \
             against ({lo_t:.2}, {hi_t:.2})"
        )));
    }

    // Log-spaced grid over (t^3/K^2.2, t^3/K^1.8), densified until phase
    // increments are unambiguous (< pi/2).
    let y_lo = t.powi(3) / k.powf(2.2);
    let y_hi = t.powi(3) / k.powf(1.8);
    let mut n = 64usize;
    let (ys, slopes) = loop {
        let ys: Vec<f64> = (0..=n)
            .map(|i| y_lo * (y_hi / y_lo).powf(i as f64 / n as f64))
            .collect();
        let phis: Result<Vec<f64>> = ys.iter().map(|&y| phase_at(y, t, p, tc)).collect();
        let phis = phis?;
        let mut ok = true;
        let mut incr = Vec::with_capacity(n);
        for i in 0..n {
            let d = wrap_increment(phis[i + 1] - phis[i]);
            if d.abs() > std::f64::consts::FRAC_PI_2 {
                ok = false;
                break;
            }
            incr.push(d / (ys[i + 1] - ys[i]));
        }
        if ok {
            break (ys, incr);
        }
        n *= 2;
        if n > 1 << 16 {
            return Err(Error::NonConvergence {
                what: "stationary-point phase unwrapping".into(),
                location: format!("t = {t}"),
            });
        }
    };

    // Find the slope sign change (negative to positive).
    let mut bracket = None;
    for i in 0..slopes.len() - 1 {
        if slopes[i] < 0.0 && slopes[i + 1] >= 0.0 {
            bracket = Some((ys[i], ys[i + 2].min(y_hi)));
            break;
        }
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::Domain(format!(
            "no stationary point in window ({y_lo:.4e}, {y_hi:.4e}) at t = {t}; \
             parameter regime violation"
        ))
    })?;

    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if phase_slope(mid, t, p, tc)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) / mid < 1e-9 {
            break;
        }
    }
    let y_located = 0.5 * (lo + hi);
    let y_predicted = predicted_stationary_point(t, k);
    let rel_deviation = ((y_located - y_predicted) / y_predicted).abs();
    Ok(StationaryPointResult {
        t,
        y_located,
        y_predicted,
        rel_deviation,
    })
}
