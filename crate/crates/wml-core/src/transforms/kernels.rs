//! The three Mellin–Barnes kernels paired against h_hat(s) on vertical
//! lines:
//!
//!   G_t^+(s)   = (1/pi^2) (2pi)^s Gamma(s/2+it) Gamma(s/2-it)
//!                Gamma((1-s)/2)^4 cos(pi s/2) (sin^2(pi s/2) + 1)
//!   G_t^-(s)   = (2/pi^2) cosh(pi t) (2pi)^s Gamma(s/2+it) Gamma(s/2-it)
//!                Gamma((1-s)/2)^4 sin(pi s/2)
//!   G_k^hol(s) = (i^{-k}/pi) (2pi)^s Gamma((s+k-1)/2)/Gamma((1-s+k)/2)
//!                Gamma((1-s)/2)^4 (sin^2(pi s/2) + 1)
//!
//! Everything is assembled in log space: the trigonometric factors grow
//! like e^{3 pi |tau| / 2} exactly against the Gamma decay, so the log of
//! each factor is formed stably and the sum exponentiated once.

use crate::error::{Error, Result};
use crate::num::complex::Cplx;
use crate::num::gamma::log_gamma;
use crate::num::{PrecisionConfig, Real};
use rug::ops::CompleteRound;
use rug::Float;

/// Which dual transform the kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plus,
    Minus,
    Hol,
}

/// Spectral argument: a real Maass parameter t for the +/- kernels, an even
/// weight k for the holomorphic one.
#[derive(Debug, Clone, Copy)]
pub enum SpectralArg {
    MaassT(f64),
    Weight(u32),
}

impl SpectralArg {
    pub fn as_f64(&self) -> f64 {
        match self {
            SpectralArg::MaassT(t) => *t,
            SpectralArg::Weight(k) => *k as f64,
        }
    }
}


/// ln(1 + w) for |w| < 1/4 by series (cheaper than a full complex log when
/// w is exponentially small on the contour).
fn ln_1p_small(w: &Cplx, prec: u32) -> Cplx {
    let half_exp = w.re.get_exp().unwrap_or(i32::MIN / 2).max(w.im.get_exp().unwrap_or(i32::MIN / 2));
    if half_exp > -3 {
        return (&Cplx::one(prec) + w).ln();
    }
    // terms w^n/n until below 2^-prec
    let mut acc = w.clone();
    let mut pw = w.clone();
    let mut n = 1u32;
    loop {
        n += 1;
        pw = &pw * w;
        let term = Cplx::new(
            (&pw.re / n).complete(prec),
            (&pw.im / n).complete(prec),
        );
        if n % 2 == 0 {
            acc = &acc - &term;
        } else {
            acc = &acc + &term;
        }
        let e = term
            .re
            .get_exp()
            .unwrap_or(i32::MIN / 2)
            .max(term.im.get_exp().unwrap_or(i32::MIN / 2));
        if e < -(prec as i32) - 8 || n > 4 * prec {
            break;
        }
    }
    acc
}

/// log(cos(pi s/2)), stable for large |Im s|: with u = e^{i pi s} (upper
/// half-plane), cos(pi s/2) = e^{-i pi s/2}(1+u)/2.
pub fn log_cos_half_pi(s: &Cplx, cfg: &PrecisionConfig) -> Cplx {
    log_cos_and_q(s, cfg).0
}

/// log(sin(pi s/2)), stable for large |Im s|: sin(pi s/2)
/// = e^{-i pi s/2}(u - 1)/(2i).
pub fn log_sin_half_pi(s: &Cplx, cfg: &PrecisionConfig) -> Cplx {
    if s.im.is_sign_negative() && !s.im.is_zero() {
        return log_sin_half_pi(&s.conj(), cfg).conj();
    }
    let prec = cfg.prec();
    let pi = cfg.pi();
    let ipi_s = s.scale(&pi).mul_i();
    let u = ipi_s.exp();
    // u - 1 = -(1 - u): log = i pi + ln(1 - u) (branch consistent with the
    // principal log for Im s >= 0, where |u| <= 1).
    let mut lm = ln_1p_small(&(-&u), prec);
    lm.im += &pi;
    // log(2i) = ln 2 + i pi/2
    let log_2i = Cplx::new(Float::with_val(prec, 2).ln(), (&pi / 2u32).complete(prec));
    &(&lm - &log_2i) - &ipi_s.scale(&Float::with_val(prec, 0.5))
}

/// log(1 + sin^2(pi s/2)), stable: 1 + sin^2 = (-u^2 + 6u - 1)/(4u).
pub fn log_one_plus_sin_sq_half_pi(s: &Cplx, cfg: &PrecisionConfig) -> Cplx {
    log_cos_and_q(s, cfg).1
}


/// Both log(cos(pi s/2)) and log(1 + sin^2(pi s/2)) from a single
/// exponential u = e^{i pi s} (upper half-plane; conjugate below).
fn log_cos_and_q(s: &Cplx, cfg: &PrecisionConfig) -> (Cplx, Cplx) {
    if s.im.is_sign_negative() && !s.im.is_zero() {
        let (c, q) = log_cos_and_q(&s.conj(), cfg);
        return (c.conj(), q.conj());
    }
    let prec = cfg.prec();
    let pi = cfg.pi();
    let ipi_s = s.scale(&pi).mul_i();
    let u = ipi_s.exp();
    let ln2 = Float::with_val(prec, 2).ln();
    let mut lc = ln_1p_small(&u, prec);
    lc.re -= &ln2;
    let lc = &lc - &ipi_s.scale(&Float::with_val(prec, 0.5));
    // -1 + 6u - u^2 = -(1 - (6u - u^2)): log = i pi + ln(1 - (6u - u^2))
    let six = Cplx::new(Float::with_val(prec, 6), Float::new(prec));
    let w = &(&six * &u) - &(&u * &u);
    let mut lq = ln_1p_small(&(-&w), prec);
    lq.im += &pi;
    lq.re -= Float::with_val(prec, 4).ln();
    let lq = &lq - &ipi_s;
    (lc, lq)
}

/// ln cosh(pi t), stable for large |t|.
fn ln_cosh_pi(t: &Real, prec: u32) -> Real {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let a = t.clone().abs() * &pi;
    // ln cosh a = a + ln(1 + e^{-2a}) - ln 2
    let small = (-(a.clone() * 2u32)).exp();
    a + small.ln_1p() - Float::with_val(prec, 2).ln()
}

fn check_pole_distance(variant: Variant, s: &Cplx, arg: &SpectralArg) -> Result<()> {
    let sigma = s.re.to_f64();
    let tau = s.im.to_f64();
    let tol = 1e-6;
    // Gamma((1-s)/2)^4 poles / trig structure at odd integers s = 2l+1.
    let nearest_odd = 2.0 * ((sigma - 1.0) / 2.0).round() + 1.0;
    if nearest_odd >= 1.0 && (sigma - nearest_odd).abs() < tol && tau.abs() < tol {
        return Err(Error::Pole(format!(
            "kernel pole family s = 2l+1 at s = {nearest_odd}"
        )));
    }
    match (variant, arg) {
        (Variant::Plus | Variant::Minus, SpectralArg::MaassT(t)) => {
            // s = -2(+-it + l): Re = -2l, Im = -+2t.
            if sigma <= tol - 0.0 {
                let l = (-sigma / 2.0).round();
                if l >= 0.0 && (sigma + 2.0 * l).abs() < tol {
                    for sign in [1.0, -1.0] {
                        if (tau - sign * 2.0 * t).abs() < tol {
                            return Err(Error::Pole(format!(
                                "kernel pole family s = -2(+-it + l) at l = {l}"
                            )));
                        }
                    }
                }
            }
            Ok(())
        }
        (Variant::Hol, SpectralArg::Weight(k)) => {
            // s = 1 - k - 2l.
            if tau.abs() < tol {
                let base = 1.0 - *k as f64;
                if sigma <= base + tol {
                    let l = ((base - sigma) / 2.0).round();
                    if (sigma - (base - 2.0 * l)).abs() < tol {
                        return Err(Error::Pole(format!(
                            "kernel pole family s = 1-k-2l at l = {l}"
                        )));
                    }
                }
            }
            Ok(())
        }
        _ => Err(Error::Parameter(
            "kernel variant and spectral argument mismatch".into(),
        )),
    }
}

/// log of the kernel (principal determination of each factor).
pub fn kernel_log(
    variant: Variant,
    s: &Cplx,
    arg: &SpectralArg,
    cfg: &PrecisionConfig,
) -> Result<Cplx> {
    check_pole_distance(variant, s, arg)?;
    let prec = cfg.prec();
    let s = s.with_prec(prec);
    let pi = cfg.pi();
    let ln_pi = pi.clone().ln();
    let two_pi_ln = crate::num::cache::ln_two_pi(prec);
    let half = Float::with_val(prec, 0.5);
    // (1-s)/2
    let one_minus_s_half = Cplx::new(
        (1u32 - &s.re).complete(prec) * &half,
        -((&s.im * &half).complete(prec)),
    );
    let lg_one_minus = log_gamma(&one_minus_s_half, cfg)?;
    let mut acc = s.scale(&two_pi_ln); // (2pi)^s
    acc = &acc + &lg_one_minus.scale(&Float::with_val(prec, 4));

    match (variant, arg) {
        (Variant::Plus, SpectralArg::MaassT(t)) => {
            let tr = Float::with_val(prec, *t);
            let a = Cplx::new(
                (&s.re * &half).complete(prec),
                (&s.im * &half).complete(prec) + &tr,
            );
            let b = Cplx::new(
                (&s.re * &half).complete(prec),
                (&s.im * &half).complete(prec) - &tr,
            );
            acc = &acc + &log_gamma(&a, cfg)?;
            acc = &acc + &log_gamma(&b, cfg)?;
            let (lc, lq) = log_cos_and_q(&s, cfg);
            acc = &acc + &lc;
            acc = &acc + &lq;
            acc.re -= ln_pi.clone() * 2u32;
            Ok(acc)
        }
        (Variant::Minus, SpectralArg::MaassT(t)) => {
            let tr = Float::with_val(prec, *t);
            let a = Cplx::new(
                (&s.re * &half).complete(prec),
                (&s.im * &half).complete(prec) + &tr,
            );
            let b = Cplx::new(
                (&s.re * &half).complete(prec),
                (&s.im * &half).complete(prec) - &tr,
            );
            acc = &acc + &log_gamma(&a, cfg)?;
            acc = &acc + &log_gamma(&b, cfg)?;
            acc = &acc + &log_sin_half_pi(&s, cfg);
            acc.re += ln_cosh_pi(&tr, prec);
            acc.re += Float::with_val(prec, 2).ln();
            acc.re -= ln_pi.clone() * 2u32;
            Ok(acc)
        }
        (Variant::Hol, SpectralArg::Weight(k)) => {
            if k % 2 != 0 || *k < 2 {
                return Err(Error::Parameter(format!(
                    "holomorphic kernel needs even k >= 2, got {k}"
                )));
            }
            let km1 = Float::with_val(prec, *k as i64 - 1);
            let kp1 = Float::with_val(prec, *k as i64 + 1);
            let a = Cplx::new(
                (&s.re + &km1).complete(prec) * &half,
                (&s.im * &half).complete(prec),
            );
            let b = Cplx::new(
                (&kp1 - &s.re).complete(prec) * &half,
                -((&s.im * &half).complete(prec)),
            );
            acc = &acc + &log_gamma(&a, cfg)?;
            acc = &acc - &log_gamma(&b, cfg)?;
            acc = &acc + &log_one_plus_sin_sq_half_pi(&s, cfg);
            acc.re -= &ln_pi;
            // i^{-k} = (-1)^{k/2}: add i pi for the negative sign.
            if (k / 2) % 2 == 1 {
                acc.im += &pi;
            }
            Ok(acc)
        }
        _ => Err(Error::Parameter(
            "kernel variant and spectral argument mismatch".into(),
        )),
    }
}

/// The kernel value itself.
pub fn kernel_eval(
    variant: Variant,
    s: &Cplx,
    arg: &SpectralArg,
    cfg: &PrecisionConfig,
) -> Result<Cplx> {
    Ok(kernel_log(variant, s, arg, cfg)?.exp())
}
