//! The dual transforms: h~±(t) and h~hol(k) as contour integrals
//! (1/2 pi i) \int h_hat(s) G(s) ds over Re(s) = sigma, |Im s| <= tau_max.
//!
//! The integration range is further restricted to where the proven
//! envelope of the integrand is non-negligible; the envelope mass of every
//! skipped or truncated region is carried in the returned budget.

use super::fused::{integrand_envelope, FusedIntegrand};
use super::interp::LogInterp;
use super::kernels::{SpectralArg, Variant};
use super::TransformConfig;
use crate::error::Result;
use crate::num::complex::Cplx;
use crate::num::quad::{integrate_line, QuadOptions};
use crate::testfn::TestFunctionParams;
use rug::Float;

/// A transform value with its numerical budget: quadrature error estimate
/// plus the truncation/skip tail bound (both in value units).
#[derive(Debug, Clone)]
pub struct TransformValue {
    pub value: Cplx,
    pub quad_err: f64,
    pub tail_bound: f64,
}

impl TransformValue {
    pub fn budget(&self) -> f64 {
        self.quad_err + self.tail_bound
    }
}

/// Determine the effective integration window [lo_eff, hi_eff] inside
/// [0, tau_max] outside of which the envelope mass stays below the skip
/// target; returns (lo, hi, skipped_mass).
fn effective_window(
    variant: Variant,
    spectral: f64,
    p: &TestFunctionParams,
    sigma: f64,
    tau_max: f64,
    skip_target: f64,
) -> (f64, f64, f64) {
    let env = |tau: f64| integrand_envelope(variant, spectral, p, sigma, tau);
    let mut skipped = 0.0;

    // Upper cut: scan down from tau_max accumulating envelope mass.
    let n = 400;
    let mut hi_eff = tau_max;
    {
        let lo_scan = 1.0f64.max(tau_max / 1e4);
        let ratio = (tau_max / lo_scan).powf(1.0 / n as f64);
        let mut acc = 0.0;
        let mut tau = tau_max;
        while tau > lo_scan {
            let prev = tau / ratio;
            let seg = env(tau).max(env(prev)) * (tau - prev);
            if acc + seg > skip_target {
                break;
            }
            acc += seg;
            hi_eff = prev;
            tau = prev;
        }
        skipped += acc;
    }

    // Lower cut: only the +-(t) kernels have the exponential ridge
    // suppression below |tau| = 2|t|.
    let mut lo_eff = 0.0;
    let two_t = 2.0 * spectral.abs();
    if matches!(variant, Variant::Plus | Variant::Minus) && two_t > 60.0 {
        let cap = two_t - 30.0;
        let m = 200;
        let step = cap / m as f64;
        let mut acc = 0.0;
        let mut tau = 0.0;
        for _ in 0..m {
            let next = tau + step;
            let seg = env(tau).max(env(next)) * step;
            if acc + seg > skip_target {
                break;
            }
            acc += seg;
            lo_eff = next;
            tau = next;
        }
        skipped += acc;
    }
    (lo_eff, hi_eff.max(lo_eff), skipped)
}

/// Evaluate h~±(t) or h~hol(k) for the test-function pair `p`.
pub fn transform_eval(
    variant: Variant,
    arg: SpectralArg,
    p: &TestFunctionParams,
    tc: &TransformConfig,
) -> Result<TransformValue> {
    tc.validate(p, arg.as_f64())?;
    p.validate()?;
    let cfg = &tc.cfg;
    let prec = cfg.prec();
    let fused = FusedIntegrand::new(variant, arg, p, tc.sigma, cfg);

    let (lo_eff, hi_eff, skipped) = effective_window(
        variant,
        arg.as_f64(),
        p,
        tc.sigma,
        tc.tau_max,
        tc.skip_target,
    );

    let mut opts = QuadOptions::from_cfg(cfg)
        .with_panel_width(tc.panel_width(p))
        .with_abs_floor((tc.skip_target * 0.03).max(1e-300));
    opts.rel_tol = tc.quad_rel_tol();
    let two_pi = {
        let mut t = cfg.pi();
        t *= 2;
        t
    };

    // The integrand is exp(g) with g analytic away from the pole ridges at
    // tau in {0, +-2t}; interpolate g blockwise and exponentiate at the
    // quadrature nodes.
    let g_log = |tau: &Float| fused.eval_log(tau);
    let two_t = 2.0 * arg.as_f64().abs();
    let anchors: Vec<f64> = match variant {
        Variant::Plus | Variant::Minus => vec![-two_t, 0.0, two_t],
        Variant::Hol => vec![0.0],
    };
    let g_target = (tc.quad_rel_tol() * 1e-2).max(1e-200);

    let (value, quad_err) = if tc.symmetric {
        // Conjugate symmetry of the integrand for real t / even k:
        // (1/2 pi i) int_{-T}^{T} f i d tau = (1/pi) Re int_0^T f d tau.
        let li = LogInterp::build(&g_log, lo_eff, hi_eff, &anchors, tc.sigma, g_target, cfg)?;
        let r = integrate_line(
            |tau: &Float| li.eval(tau),
            &Float::with_val(prec, lo_eff),
            &Float::with_val(prec, hi_eff),
            cfg,
            &opts,
        )?;
        let v = Cplx::from_real(r.value.re / &cfg.pi());
        (v, (r.err / cfg.pi()).to_f64())
    } else {
        let mut raw = Cplx::zero(prec);
        let mut err = Float::new(prec);
        let li_low = LogInterp::build(&g_log, -hi_eff, -lo_eff, &anchors, tc.sigma, g_target, cfg)?;
        let lower = integrate_line(
            |tau: &Float| li_low.eval(tau),
            &Float::with_val(prec, -hi_eff),
            &Float::with_val(prec, -lo_eff),
            cfg,
            &opts,
        )?;
        raw = &raw + &lower.value;
        err += &lower.err;
        let li_up = LogInterp::build(&g_log, lo_eff, hi_eff, &anchors, tc.sigma, g_target, cfg)?;
        let upper = integrate_line(
            |tau: &Float| li_up.eval(tau),
            &Float::with_val(prec, lo_eff),
            &Float::with_val(prec, hi_eff),
            cfg,
            &opts,
        )?;
        raw = &raw + &upper.value;
        err += &upper.err;
        // (1/2 pi i) * (i * raw) = raw / (2 pi)
        let v = raw.scale(&two_pi.clone().recip());
        (v, (err / &two_pi).to_f64())
    };

    let tail_bound = (tc.tail_bound + 2.0 * skipped) / (2.0 * std::f64::consts::PI);
    Ok(TransformValue {
        value,
        quad_err,
        tail_bound,
    })
}

/// Evaluate on a grid of spectral arguments, preserving input order.
pub fn transform_grid(
    variant: Variant,
    args: &[SpectralArg],
    p: &TestFunctionParams,
    tc: &TransformConfig,
) -> Result<Vec<TransformValue>> {
    use rayon::prelude::*;
    args.par_iter()
        .map(|a| {
            let mut tci = tc.clone();
            let floor = 4.0 * (2.0 * a.as_f64().abs()).max(p.weight_center as f64);
            if tci.tau_max < floor {
                tci.tau_max = floor;
            }
            transform_eval(variant, *a, p, &tci)
        })
        .collect()
}
