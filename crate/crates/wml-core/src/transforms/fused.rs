//! Fused evaluation of h_hat(s) * G(s) for the transform quadratures.
//!
//! Algebraically the (2 pi)^s of the kernel cancels the (2 pi)^{-s-1} of
//! h_hat, and every Gamma argument shares s/2, so the fused integrand costs
//! five log-gammas plus one trigonometric exponential per point. The
//! reference path (`h_hat_log` + `kernel_log`) is kept as the correctness
//! oracle; a test pins the two together.

use super::kernels::{log_cos_half_pi, log_one_plus_sin_sq_half_pi, log_sin_half_pi, SpectralArg, Variant};
use crate::error::Result;
use crate::num::complex::Cplx;
use crate::num::gamma::log_gamma;
use crate::num::{PrecisionConfig, Real};
use crate::testfn::TestFunctionParams;
use rug::ops::CompleteRound;
use rug::Float;

/// Precomputed constants for integrand evaluation along one vertical line.
pub struct FusedIntegrand {
    variant: Variant,
    arg: SpectralArg,
    prec: u32,
    cfg: PrecisionConfig,
    sigma: Real,
    /// ln prefactor of h_hat minus ln(2 pi) (the net power of 2 pi) and the
    /// kernel's pi constants.
    ln_const: Real,
    /// i^{-k} sign for the holomorphic kernel (0 or pi added to Im).
    im_const: Real,
    /// cosh factor of the minus kernel, as a log.
    /// (K - L^2 - 1)/2, (K + L^2 + 1)/2, t or k at precision.
    c_num: Real,
    c_den: Real,
    spectral: Real,
    half_sigma: Real,
}

impl FusedIntegrand {
    pub fn new(
        variant: Variant,
        arg: SpectralArg,
        p: &TestFunctionParams,
        sigma: f64,
        cfg: &PrecisionConfig,
    ) -> Self {
        let prec = cfg.prec();
        let kk = p.weight_center as i64;
        let l2 = (p.window as i64) * (p.window as i64);
        let pi = cfg.pi();
        let ln_pi = pi.clone().ln();
        let ln_two_pi = crate::num::cache::ln_two_pi(prec);
        // h_hat: (2pi)^{-s-1} pref Gamma(a)/Gamma(b); kernel carries (2pi)^s
        // and 1/pi^2 (plus/minus), 1/pi (hol), an extra 2 cosh(pi t) for
        // minus. Net constant log:
        let mut ln_const = crate::testfn::ln_prefactor(p, prec) - &ln_two_pi;
        let mut im_const = Float::new(prec);
        match (variant, arg) {
            (Variant::Plus, SpectralArg::MaassT(_)) => {
                ln_const -= ln_pi.clone() * 2u32;
            }
            (Variant::Minus, SpectralArg::MaassT(t)) => {
                ln_const -= ln_pi.clone() * 2u32;
                ln_const += Float::with_val(prec, 2).ln();
                // ln cosh(pi t)
                let a = Float::with_val(prec, t.abs()) * &pi;
                ln_const += a.clone() + (-(a * 2u32)).exp().ln_1p() - Float::with_val(prec, 2).ln();
            }
            (Variant::Hol, SpectralArg::Weight(k)) => {
                ln_const -= &ln_pi;
                if (k / 2) % 2 == 1 {
                    im_const += &pi;
                }
            }
            _ => unreachable!("variant/argument mismatch checked by caller"),
        }
        FusedIntegrand {
            variant,
            arg,
            prec,
            cfg: cfg.clone(),
            sigma: Float::with_val(prec, sigma),
            ln_const,
            im_const,
            c_num: Float::with_val(prec, (kk - l2 - 1) as f64 / 2.0),
            c_den: Float::with_val(prec, (kk + l2 + 1) as f64 / 2.0),
            spectral: Float::with_val(prec, arg.as_f64()),
            half_sigma: Float::with_val(prec, sigma / 2.0),
        }
    }

    /// Evaluate h_hat(s) G(s) at s = sigma + i tau.
    pub fn eval(&self, tau: &Real) -> Result<Cplx> {
        Ok(self.eval_log(tau)?.exp())
    }

    /// log(h_hat(s) G(s)), continuous in tau (principal determinations of
    /// analytic factors).
    pub fn eval_log(&self, tau: &Real) -> Result<Cplx> {
        let prec = self.prec;
        let cfg = &self.cfg;
        let s = Cplx::new(self.sigma.clone(), tau.clone());
        let half_tau = (tau / 2u32).complete(prec);

        // h_hat gammas: a = c_num + s/2, b = c_den - s/2.
        let lg_a = log_gamma(
            &Cplx::new((&self.c_num + &self.half_sigma).complete(prec), half_tau.clone()),
            cfg,
        )?;
        let lg_b = log_gamma(
            &Cplx::new(
                (&self.c_den - &self.half_sigma).complete(prec),
                -half_tau.clone(),
            ),
            cfg,
        )?;
        let mut acc = &lg_a - &lg_b;
        acc.re += &self.ln_const;
        acc.im += &self.im_const;

        // Kernel gammas.
        let one_minus_half = Cplx::new(
            ((1u32 - &self.sigma).complete(prec)) / 2u32,
            -half_tau.clone(),
        );
        let lg_c = log_gamma(&one_minus_half, cfg)?;
        acc = &acc + &lg_c.scale(&Float::with_val(prec, 4));

        match self.variant {
            Variant::Plus | Variant::Minus => {
                let a = Cplx::new(
                    self.half_sigma.clone(),
                    (&half_tau + &self.spectral).complete(prec),
                );
                let b = Cplx::new(
                    self.half_sigma.clone(),
                    (&half_tau - &self.spectral).complete(prec),
                );
                acc = &acc + &log_gamma(&a, cfg)?;
                acc = &acc + &log_gamma(&b, cfg)?;
                if self.variant == Variant::Plus {
                    acc = &acc + &log_cos_half_pi(&s, cfg);
                    acc = &acc + &log_one_plus_sin_sq_half_pi(&s, cfg);
                } else {
                    acc = &acc + &log_sin_half_pi(&s, cfg);
                }
            }
            Variant::Hol => {
                let k = self.spectral.clone();
                let a = Cplx::new(
                    ((&k - 1u32).complete(prec) + &self.sigma) / 2u32,
                    half_tau.clone(),
                );
                let b = Cplx::new(
                    ((&k + 1u32).complete(prec) - &self.sigma) / 2u32,
                    -half_tau.clone(),
                );
                acc = &acc + &log_gamma(&a, cfg)?;
                acc = &acc - &log_gamma(&b, cfg)?;
                acc = &acc + &log_one_plus_sin_sq_half_pi(&s, cfg);
            }
        }
        Ok(acc)
    }
}

/// f64 envelope of |h_hat(s) G(s)| on the line, used to restrict the
/// integration range; skipped mass goes into the reported budget. Built
/// from the proven regime bounds times the kernel's Stirling envelope, with
/// a generous safety constant.
pub fn integrand_envelope(
    variant: Variant,
    spectral: f64,
    p: &TestFunctionParams,
    sigma: f64,
    tau: f64,
) -> f64 {
    const SAFETY: f64 = 300.0;
    let hh = crate::testfn::regime_bound(p, sigma, tau);
    let t = tau.abs();
    let kernel = match variant {
        Variant::Plus | Variant::Minus => {
            let two_t = 2.0 * spectral.abs();
            let poly = ((1.0 + (t + two_t)) * (1.0 + (t - two_t).abs())).powf((sigma - 1.0) / 2.0)
                * (1.0 + t).powf(-2.0 * sigma);
            let ridge = if t < two_t {
                (-(std::f64::consts::FRAC_PI_2) * (two_t - t)).exp()
            } else {
                1.0
            };
            poly * ridge
        }
        Variant::Hol => {
            (spectral + t).powf(sigma - 1.0) * (1.0 + t).powf(-2.0 * sigma)
        }
    };
    SAFETY * hh * kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::kernels::kernel_log;
    use crate::testfn::h_hat_log;

    #[test]
    fn fused_matches_reference() {
        let cfg = PrecisionConfig::new(40).unwrap();
        let p = TestFunctionParams::new(128, 4).unwrap();
        for (variant, arg) in [
            (Variant::Plus, SpectralArg::MaassT(23.0)),
            (Variant::Minus, SpectralArg::MaassT(23.0)),
            (Variant::Hol, SpectralArg::Weight(16)),
        ] {
            let f = FusedIntegrand::new(variant, arg, &p, 0.5, &cfg);
            for tau in [0.25, 7.0, -41.0, 180.0] {
                let fast = f.eval(&cfg.real_from_f64(tau)).unwrap();
                let s = cfg.cplx(0.5, tau);
                let slow = (&h_hat_log(&s, &p, &cfg).unwrap()
                    + &kernel_log(variant, &s, &arg, &cfg).unwrap())
                    .exp();
                let denom = slow.abs().to_f64().max(1e-280);
                let rel = (&fast - &slow).abs().to_f64() / denom;
                assert!(
                    rel < 1e-35,
                    "fused vs reference at {variant:?}, tau={tau}: rel {rel:e}"
                );
            }
        }
    }

    #[test]
    fn envelope_dominates_samples() {
        let cfg = PrecisionConfig::new(30).unwrap();
        let p = TestFunctionParams::new(128, 4).unwrap();
        let f = FusedIntegrand::new(Variant::Plus, SpectralArg::MaassT(30.0), &p, 0.5, &cfg);
        for tau in [0.0f64, 10.0, 55.0, 61.0, 100.0, 250.0, 700.0] {
            let v = f.eval(&cfg.real_from_f64(tau)).unwrap().abs().to_f64();
            let env = integrand_envelope(Variant::Plus, 30.0, &p, 0.5, tau);
            assert!(v <= env, "envelope violated at tau={tau}: {v:e} > {env:e}");
        }
    }
}
