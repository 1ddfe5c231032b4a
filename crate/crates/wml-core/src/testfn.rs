//! The test-function pair (h, h_hol): h vanishes identically, h_hol is a
//! Gamma-ratio sequence localising near weight K with window L, supported
//! exactly on [K - L^2, K + L^2].
//!
//! The module carries independent routes to the same objects and the
//! oracles that reconcile them:
//!   * `h_hol` — log-gamma evaluation of the Gamma-ratio,
//!   * `h_hol_product` — the exact rational double product valid on the
//!     support (integer arithmetic, no rounding),
//!   * `h_closed` / `h_hat` — the Hankel kernel H(x) and its closed-form
//!     Mellin transform,
//!   * `bessel_transform_oracle` / `mellin_oracle` — adaptive quadrature
//!     recovering h_hol and h_hat from H(x) directly.

use crate::error::{Error, Result};
use crate::num::complex::Cplx;
use crate::num::gamma::log_gamma;
use crate::num::quad::{integrate_line, QuadOptions};
use crate::num::{bessel_j, PrecisionConfig, Real};
use rug::ops::CompleteRound;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

/// Parameters of the test-function pair: weight center K (even), window L
/// (even), and the range-exponent delta used only for regime warnings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestFunctionParams {
    /// Weight center K.
    pub weight_center: u32,
    /// Window parameter L; the support half-width is L^2.
    pub window: u32,
    /// Exponent governing the admissible-range warning, in (0, 1/100).
    pub delta: f64,
}

impl TestFunctionParams {
    pub fn new(weight_center: u32, window: u32) -> Result<Self> {
        let p = TestFunctionParams {
            weight_center,
            window,
            delta: 1.0 / 128.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (k, l) = (self.weight_center, self.window);
        if k == 0 || k % 2 != 0 {
            return Err(Error::Parameter(format!(
                "weight center K must be even positive, got {k}"
            )));
        }
        if l == 0 || l % 2 != 0 {
            return Err(Error::Parameter(format!(
                "window L must be even positive, got {l}"
            )));
        }
        if (l as u64) * (l as u64) >= (k as u64).saturating_sub(1) {
            return Err(Error::Parameter(format!(
                "need L^2 < K - 1 for holomorphy of the Mellin transform (K={k}, L={l})"
            )));
        }
        if !(self.delta > 0.0 && self.delta < 0.01) {
            return Err(Error::Parameter(format!(
                "delta must lie in (0, 1/100), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// The asymptotic analysis assumes K^(delta/8) <= L <= K^(1/3 - delta/8).
    /// Outside that window the closed forms still hold, so this is a warning
    /// rather than an error; oracle tests deliberately use tiny K.
    pub fn range_warning(&self) -> Option<String> {
        let k = self.weight_center as f64;
        let l = self.window as f64;
        let lo = k.powf(self.delta / 8.0);
        let hi = k.powf(1.0 / 3.0 - self.delta / 8.0);
        if l < lo || l > hi {
            Some(format!(
                "window L={l} outside the asymptotic range [{lo:.3}, {hi:.3}] for K={k}"
            ))
        } else {
            None
        }
    }

    /// Support of h_hol: [K - L^2, K + L^2].
    pub fn support(&self) -> (u32, u32) {
        let l2 = self.window * self.window;
        (self.weight_center - l2, self.weight_center + l2)
    }

    pub fn in_support(&self, k: u32) -> bool {
        let (lo, hi) = self.support();
        k >= lo && k <= hi
    }
}

/// i^{-k} for even k, as a sign.
pub(crate) fn i_pow_minus(k: u32) -> i32 {
    debug_assert!(k % 2 == 0);
    if (k / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// h_hol(k): zero (exactly, detected arithmetically via the Gamma poles in
/// the denominator) outside [K - L^2, K + L^2]; otherwise i^{-k} times a
/// positive real evaluated through log-gamma.
pub fn h_hol(k: u32, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Result<Cplx> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Parameter(format!("h_hol needs even k >= 2, got {k}")));
    }
    let prec = cfg.prec();
    if !p.in_support(k) {
        return Ok(Cplx::zero(prec));
    }
    let kk = p.weight_center as i64;
    let l2 = (p.window as i64) * (p.window as i64);
    let kv = k as i64;

    let lg = |n: i64| -> Real {
        debug_assert!(n >= 1, "gamma argument must be positive, got {n}");
        Float::with_val(prec, n).ln_gamma()
    };
    // All arguments are positive integers inside the support.
    let ln_mag = lg(l2 / 2 + 1) * 2u32 + lg(kk + l2 / 2) + lg((kk - l2 + kv) / 2 - 1)
        - lg(kk - l2 / 2 - 1)
        - lg((l2 - kk + kv) / 2 + 1)
        - lg((kk + l2 + kv) / 2)
        - lg((kk + l2 - kv) / 2 + 1);
    let mag = ln_mag.exp();
    let sign = i_pow_minus(k);
    Ok(Cplx::from_real(mag * sign))
}

/// The exact rational product form of i^k h_hol(k), valid only on the
/// support (out-of-support k is an error here, unlike `h_hol`):
/// prod_{l=0}^{|K-k|/2-1} ((L^2-|K-k|)/2+1+l)/(L^2/2+1+l)
/// x prod_{j=0}^{L^2} (K-L^2/2-1+j)/((K-L^2+k)/2-1+j).
pub fn h_hol_product(k: u32, p: &TestFunctionParams) -> Result<Rational> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Parameter(format!(
            "h_hol_product needs even k >= 2, got {k}"
        )));
    }
    if !p.in_support(k) {
        return Err(Error::Domain(format!(
            "h_hol_product: k={k} outside support {:?}",
            p.support()
        )));
    }
    let kk = p.weight_center as i64;
    let l2 = (p.window as i64) * (p.window as i64);
    let kv = k as i64;
    let gap = (kk - kv).abs();
    let mut acc = Rational::from(1);
    for l in 0..gap / 2 {
        let num = (l2 - gap) / 2 + 1 + l;
        let den = l2 / 2 + 1 + l;
        acc *= Rational::from((num, den));
    }
    for j in 0..=l2 {
        let num = kk - l2 / 2 - 1 + j;
        let den = (kk - l2 + kv) / 2 - 1 + j;
        acc *= Rational::from((num, den));
    }
    Ok(acc)
}

/// Log of the constant prefactor shared by H(x) and h_hat:
/// Gamma(L^2/2+1)^2 Gamma(K+L^2/2) / (Gamma(L^2+1) Gamma(K-L^2/2-1)).
/// Cached per (K, L, precision); hot in every transform integrand.
pub(crate) fn ln_prefactor(p: &TestFunctionParams, prec: u32) -> Real {
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32, u32), Real>>> = OnceLock::new();
    let map = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    let key = (p.weight_center, p.window, prec);
    {
        let g = map.read().unwrap();
        if let Some(v) = g.get(&key) {
            return v.clone();
        }
    }
    let kk = p.weight_center as i64;
    let l2 = (p.window as i64) * (p.window as i64);
    let lg = |n: i64| -> Real { Float::with_val(prec, n).ln_gamma() };
    let v = lg(l2 / 2 + 1) * 2u32 + lg(kk + l2 / 2) - lg(l2 + 1) - lg(kk - l2 / 2 - 1);
    let mut g = map.write().unwrap();
    g.entry(key).or_insert(v).clone()
}

/// Closed form of the Hankel kernel:
/// H(x) = (1/pi) * prefactor * (2 pi x)^{-L^2} * J_{K-1}(4 pi x).
pub fn h_closed(x: &Real, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Result<Real> {
    let xf = x.to_f64();
    if !(xf > 0.0 && xf <= 1.0e4) {
        return Err(Error::Domain(format!(
            "h_closed: x must lie in (0, 1e4], got {xf}"
        )));
    }
    let prec = cfg.prec();
    let x = Float::with_val(prec, x);
    let pi = cfg.pi();
    let l2 = (p.window as i64) * (p.window as i64);
    let two_pi_x = (&pi * &x).complete(prec) * 2u32;
    let ln_scalar = ln_prefactor(p, prec) - two_pi_x.ln() * Float::with_val(prec, l2) - pi.clone().ln();
    // Overflow guard: refuse regimes whose scalar magnitude would consume
    // the precision budget.
    let budget = 0.35 * (prec as f64) * std::f64::consts::LN_2 + 600.0;
    if ln_scalar.to_f64().abs() > budget {
        return Err(Error::Unsupported(format!(
            "h_closed prefactor magnitude exp({:.1}) exceeds the precision budget in this regime \
             (K={}, L={}, x={xf})",
            ln_scalar.to_f64(),
            p.weight_center,
            p.window
        )));
    }
    let nu = Float::with_val(prec, p.weight_center - 1);
    let arg = (&pi * &x).complete(prec) * 4u32;
    let j = bessel_j(&nu, &arg, cfg)?;
    Ok(ln_scalar.exp() * j)
}

/// Log of the Mellin transform h_hat(s) (continuous along vertical lines):
/// -(s+1) ln(2 pi) + ln prefactor
/// + lgamma((K-L^2+s-1)/2) - lgamma((K+L^2-s+1)/2).
pub fn h_hat_log(s: &Cplx, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Result<Cplx> {
    let prec = cfg.prec();
    let s = s.with_prec(prec);
    let kk = p.weight_center as f64;
    let l2 = (p.window as f64) * (p.window as f64);
    let sigma = s.re.to_f64();
    if sigma <= l2 - kk - 1.0 + 1e-6 {
        return Err(Error::Domain(format!(
            "h_hat: Re(s) = {sigma} at or left of the holomorphy boundary {}",
            l2 - kk - 1.0
        )));
    }
    let half = Float::with_val(prec, 0.5);
    let l2r = Float::with_val(prec, l2);
    let kkr = Float::with_val(prec, kk);
    // a = (K - L^2 + s - 1)/2, b = (K + L^2 - s + 1)/2
    let a = Cplx::new(
        ((&kkr - &l2r).complete(prec) + &s.re - 1u32) * &half,
        (&s.im * &half).complete(prec),
    );
    let b = Cplx::new(
        ((&kkr + &l2r).complete(prec) - &s.re + 1u32) * &half,
        -((&s.im * &half).complete(prec)),
    );
    // Pole proximity of the numerator Gamma.
    if a.re.to_f64() < 0.5 && a.im.to_f64().abs() < 1e-6 {
        let nearest = a.re.clone().round();
        if nearest.to_f64() <= 0.0 && (a.re.clone() - &nearest).abs().to_f64() < 1e-6 {
            return Err(Error::Pole(format!(
                "h_hat within 1e-6 of the Gamma pole at (K-L^2+s-1)/2 = {}",
                nearest.to_f64()
            )));
        }
    }
    let ln_two_pi = crate::num::cache::ln_two_pi(prec);
    let s_plus_1 = Cplx::new((&s.re + 1u32).complete(prec), s.im.clone());
    let mut acc = -(s_plus_1.scale(&ln_two_pi));
    acc.re += ln_prefactor(p, prec);
    acc = &acc + &log_gamma(&a, cfg)?;
    acc = &acc - &log_gamma(&b, cfg)?;
    Ok(acc)
}

/// The Mellin transform h_hat(s) itself.
pub fn h_hat(s: &Cplx, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Result<Cplx> {
    Ok(h_hat_log(s, p, cfg)?.exp())
}

/// Quadrature recovery of h_hol(k) from H(x):
/// 2 pi i^{-k} int_0^infty H(x) J_{k-1}(4 pi x) dx/x.
/// This is the anti-hallucination oracle for the module; it must agree with
/// `h_hol` to 1e-8 in the oracle regime K <= 40, L <= 4.
pub fn bessel_transform_oracle(
    k: u32,
    p: &TestFunctionParams,
    cfg: &PrecisionConfig,
) -> Result<Cplx> {
    if p.weight_center > 40 || p.window > 4 {
        return Err(Error::Domain(
            "bessel_transform_oracle: oracle regime is K <= 40, L <= 4".into(),
        ));
    }
    if k < 2 || k % 2 != 0 {
        return Err(Error::Parameter(format!("needs even k >= 2, got {k}")));
    }
    let prec = cfg.prec();
    let pi = cfg.pi();
    let l2 = (p.window as f64) * (p.window as f64);
    let kk = p.weight_center as f64;

    // Tail envelope |H(x) J_{k-1}(4 pi x) / x| <= C x^{-(L^2 + 2/3 + 1)}
    // from the prefactor and the Landau bound on each Bessel factor.
    let ln_pref = ln_prefactor(p, prec).to_f64();
    let c_env = (ln_pref - std::f64::consts::PI.ln()).exp()
        * (2.0 * std::f64::consts::PI).powf(-l2)
        * 0.7857468704f64.powi(2)
        * (4.0 * std::f64::consts::PI).powf(-2.0 / 3.0);
    let decay = l2 + 2.0 / 3.0 + 1.0;
    let tail_target = 1e-11;
    let x_max = (c_env / ((decay - 1.0) * tail_target))
        .powf(1.0 / (decay - 1.0))
        .max(kk / 2.0 + 8.0);
    let tail_bound = c_env * x_max.powf(-(decay - 1.0)) / (decay - 1.0);
    if tail_bound > 1e-9 {
        return Err(Error::TailBudget {
            what: "bessel_transform_oracle".into(),
            achieved: tail_bound,
            required: 1e-9,
        });
    }

    let nu_pair = Float::with_val(prec, k - 1);
    let p2 = p.clone();
    let cfg2 = cfg.clone();
    let pi2 = pi.clone();
    let integrand = move |x: &Real| -> Result<Cplx> {
        let h = h_closed(x, &p2, &cfg2)?;
        let arg = (&pi2 * x).complete(prec) * 4u32;
        let j = bessel_j(&nu_pair, &arg, &cfg2)?;
        Ok(Cplx::from_real(h * j / x))
    };
    // Both Bessel factors oscillate with wavelength 1/2 in x.
    let opts = QuadOptions::from_cfg(cfg)
        .with_panel_width(0.2)
        .with_abs_floor(1e-14);
    let r = integrate_line(
        integrand,
        &Float::new(prec),
        &Float::with_val(prec, x_max),
        cfg,
        &opts,
    )?;
    let sign = i_pow_minus(k);
    let two_pi_signed = Float::with_val(prec, 2 * sign) * &pi;
    Ok(r.value.scale(&two_pi_signed))
}

/// Quadrature recovery of h_hat(s) as int_0^infty H(x) x^{s-1} dx in the
/// oracle regime; matches the closed form to 1e-6 relative.
pub fn mellin_oracle(s: &Cplx, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Result<Cplx> {
    if p.weight_center > 40 || p.window > 4 {
        return Err(Error::Domain(
            "mellin_oracle: oracle regime is K <= 40, L <= 4".into(),
        ));
    }
    let prec = cfg.prec();
    let sigma = s.re.to_f64();
    let l2 = (p.window as f64) * (p.window as f64);
    let kk = p.weight_center as f64;
    if sigma <= l2 - kk - 1.0 || sigma >= kk {
        return Err(Error::Domain(format!(
            "mellin_oracle: Re(s) = {sigma} outside the integrability window ({}, {})",
            l2 - kk - 1.0,
            kk
        )));
    }
    let ln_pref = ln_prefactor(p, prec).to_f64();
    // |H(x)| <= C_env x^{-(L^2 + 1/3)} for x >= 1.
    let c_env = (ln_pref - std::f64::consts::PI.ln()).exp()
        * (2.0 * std::f64::consts::PI).powf(-l2)
        * 0.7857468704
        * (4.0 * std::f64::consts::PI).powf(-1.0 / 3.0);
    let decay = l2 + 1.0 / 3.0 + 1.0 - sigma;
    if decay <= 1.2 {
        return Err(Error::Domain(format!(
            "mellin_oracle: tail decays too slowly at Re(s) = {sigma} for this window"
        )));
    }
    let tail_target = 1e-10;
    let x_max = (c_env / ((decay - 1.0) * tail_target))
        .powf(1.0 / (decay - 1.0))
        .max(kk / 2.0 + 8.0);

    let s2 = s.with_prec(prec);
    let p2 = p.clone();
    let cfg2 = cfg.clone();
    let integrand = move |x: &Real| -> Result<Cplx> {
        let h = h_closed(x, &p2, &cfg2)?;
        let lnx = x.clone().ln();
        let one = Cplx::one(prec);
        let pw = (&s2 - &one).scale(&lnx).exp();
        Ok(pw.scale(&h))
    };
    let opts = QuadOptions::from_cfg(cfg)
        .with_panel_width(0.2)
        .with_abs_floor(1e-14);
    let r = integrate_line(
        integrand,
        &Float::new(prec),
        &Float::with_val(prec, x_max),
        cfg,
        &opts,
    )?;
    Ok(r.value)
}

/// One row of the regime-bound tabulation.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeRow {
    pub tau: f64,
    pub abs_hhat: f64,
    pub regime_bound: f64,
    pub ratio: f64,
}

/// Comparison of |h_hat(sigma + i tau)| against the four-regime envelope,
/// with a least-squares fit of the Gaussian-regime rate.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeBoundReport {
    pub sigma: f64,
    pub rows: Vec<RegimeRow>,
    /// Fitted decay rate r in |h_hat| ~ exp(-r tau^2) over K/L <= tau <= K/2.
    pub fitted_gaussian_rate: f64,
    /// The envelope's Gaussian rate (L/2K)^2.
    pub envelope_rate: f64,
    /// The rate the Stirling expansion of log|h_hat| actually predicts,
    /// (L^2 - sigma + 1)/(2K^2), before the 1/(1 + tau^2/K^2) damping.
    pub predicted_rate: f64,
}

/// The four-regime envelope of |h_hat(sigma + i tau)| (up to an absolute
/// constant): K^s L; K^s L e^{-(L tau/2K)^2}; L tau^s (tau/K)^{-L^2-1}
/// e^{-(KL/2 tau)^2}; L tau^s (tau/K)^{-L^2-1}.
pub fn regime_bound(p: &TestFunctionParams, sigma: f64, tau: f64) -> f64 {
    let k = p.weight_center as f64;
    let l = p.window as f64;
    let l2 = l * l;
    let t = tau.abs();
    if t <= k / l {
        k.powf(sigma) * l
    } else if t <= k {
        k.powf(sigma) * l * (-(l * t / (2.0 * k)).powi(2)).exp()
    } else if t <= k * l {
        l * t.powf(sigma) * (t / k).powf(-(l2 + 1.0)) * (-(k * l / (2.0 * t)).powi(2)).exp()
    } else {
        l * t.powf(sigma) * (t / k).powf(-(l2 + 1.0))
    }
}

/// Tabulate |h_hat| against the regime envelope on a tau grid and fit the
/// Gaussian-regime rate.
pub fn regime_bound_report(
    p: &TestFunctionParams,
    sigma: f64,
    tau_grid: &[f64],
    cfg: &PrecisionConfig,
) -> Result<RegimeBoundReport> {
    let k = p.weight_center as f64;
    let l = p.window as f64;
    let mut rows = Vec::with_capacity(tau_grid.len());
    let mut fit_pts: Vec<(f64, f64)> = Vec::new();
    for &tau in tau_grid {
        let s = cfg.cplx(sigma, tau);
        let lh = h_hat_log(&s, p, cfg)?;
        let ln_abs = lh.re.to_f64();
        let abs = ln_abs.exp();
        let bound = regime_bound(p, sigma, tau);
        let ratio = if bound > 0.0 { abs / bound } else { f64::INFINITY };
        rows.push(RegimeRow {
            tau,
            abs_hhat: abs,
            regime_bound: bound,
            ratio,
        });
        let t = tau.abs();
        if t >= k / l && t <= k / 2.0 {
            fit_pts.push((t * t, ln_abs));
        }
    }
    let fitted = if fit_pts.len() >= 2 {
        let n = fit_pts.len() as f64;
        let mx: f64 = fit_pts.iter().map(|q| q.0).sum::<f64>() / n;
        let my: f64 = fit_pts.iter().map(|q| q.1).sum::<f64>() / n;
        let sxy: f64 = fit_pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
        let sxx: f64 = fit_pts.iter().map(|q| (q.0 - mx) * (q.0 - mx)).sum();
        -(sxy / sxx)
    } else {
        f64::NAN
    };
    Ok(RegimeBoundReport {
        sigma,
        rows,
        fitted_gaussian_rate: fitted,
        envelope_rate: (l / (2.0 * k)).powi(2),
        predicted_rate: (l * l - sigma + 1.0) / (2.0 * k * k),
    })
}

/// The minus-channel transform of H carries the factor sin(pi(K - L^2)/2),
/// which vanishes identically because K and L^2 are both even.
pub fn minus_channel_vanishes(p: &TestFunctionParams) -> bool {
    (p.weight_center as i64 - (p.window as i64) * (p.window as i64)) % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(50).unwrap()
    }

    fn p12() -> TestFunctionParams {
        TestFunctionParams::new(12, 2).unwrap()
    }

    #[test]
    fn params_invariants() {
        assert!(TestFunctionParams::new(12, 2).is_ok());
        assert!(TestFunctionParams::new(11, 2).is_err()); // odd K
        assert!(TestFunctionParams::new(12, 3).is_err()); // odd L
        assert!(TestFunctionParams::new(16, 4).is_err()); // L^2 >= K-1
        assert!(TestFunctionParams::new(1024, 8).is_ok());
        // K=12, L=2 sits just inside the asymptotic window (12^(1/3) > 2);
        // K=256, L=8 does not — warning, never an error.
        assert!(p12().range_warning().is_none());
        assert!(TestFunctionParams::new(256, 8)
            .unwrap()
            .range_warning()
            .is_some());
    }

    #[test]
    fn center_normalization_exact() {
        // i^K h_hol(K) = 1: all Gamma factors cancel pairwise.
        let c = cfg();
        for (k, l) in [(12u32, 2u32), (256, 4), (1024, 8)] {
            let p = TestFunctionParams::new(k, l).unwrap();
            let v = h_hol(k, &p, &c).unwrap();
            let expected_sign = i_pow_minus(k);
            let dev = (v.re.to_f64() - expected_sign as f64).abs();
            assert!(dev < 1e-30, "center normalization at K={k}: dev {dev:e}");
            assert!(v.im.is_zero());
        }
    }

    #[test]
    fn support_is_exact_zero() {
        let c = cfg();
        let p = p12();
        // Support is [8, 16]; k = 18 and k = 6 give exact zeros.
        assert!(h_hol(18, &p, &c).unwrap().is_zero());
        assert!(h_hol(6, &p, &c).unwrap().is_zero());
        assert!(!h_hol(16, &p, &c).unwrap().is_zero());
    }

    #[test]
    fn product_formula_examples() {
        let p = p12();
        // k = K: both products telescope to 1.
        assert_eq!(h_hol_product(12, &p).unwrap(), Rational::from(1));
        // k = 10: (2/3) * (13/8) = 13/12, hand-checked.
        assert_eq!(h_hol_product(10, &p).unwrap(), Rational::from((13, 12)));
        // k = 16: first product hits (L^2-|K-k|)/2+1 = 1 at l = 0; positive.
        let v = h_hol_product(16, &p).unwrap();
        assert!(v > 0);
        // Out of support is an error for the product form.
        assert!(h_hol_product(18, &p).is_err());
    }

    #[test]
    fn h_hol_example_value() {
        // (K=12, L=2, k=10) -> i^{-10} * 13/12 = -13/12.
        let c = cfg();
        let v = h_hol(10, &p12(), &c).unwrap();
        let dev = (v.re.to_f64() + 13.0 / 12.0).abs();
        assert!(dev < 1e-14, "got {} dev {dev:e}", v.re.to_f64());
    }

    #[test]
    fn dual_path_identity() {
        // |i^k h_hol(k) - product(k)| <= 1e-35 * product(k) at 50 digits.
        let c = cfg();
        for (k, l) in [(12u32, 2u32), (64, 2), (256, 4)] {
            let p = TestFunctionParams::new(k, l).unwrap();
            let (lo, hi) = p.support();
            for kv in (lo..=hi).step_by(2) {
                let via_gamma = h_hol(kv, &p, &c).unwrap();
                let exact = h_hol_product(kv, &p).unwrap();
                let exact_f = Float::with_val(c.prec(), &exact);
                let signed = via_gamma.re.clone() * i_pow_minus(kv);
                let rel = ((signed - &exact_f) / &exact_f).abs().to_f64();
                assert!(rel < 1e-35, "dual path at K={k}, k={kv}: rel {rel:e}");
            }
        }
    }

    #[test]
    fn positivity_on_support() {
        let c = cfg();
        let p = TestFunctionParams::new(256, 4).unwrap();
        let (lo, hi) = p.support();
        for kv in (lo..=hi).step_by(2) {
            let prod = h_hol_product(kv, &p).unwrap();
            assert!(prod > 0, "positivity at k={kv}");
            let v = h_hol(kv, &p, &c).unwrap();
            assert!(v.re.to_f64() * (i_pow_minus(kv) as f64) > 0.0);
        }
    }

    #[test]
    fn gaussian_decay_constant() {
        // i^k h_hol(k) <= C e^{-(k-K)^2/(4L^2)} with fitted C <= 10 on
        // L <= |k-K| <= L^2.
        let c = cfg();
        for (k, l) in [(256u32, 4u32), (256, 8), (1024, 4), (1024, 8)] {
            let p = TestFunctionParams::new(k, l).unwrap();
            let mut cmax: f64 = 0.0;
            let (lo, hi) = p.support();
            for kv in (lo..=hi).step_by(2) {
                let gap = (kv as f64 - k as f64).abs();
                if gap < l as f64 || gap > (l * l) as f64 {
                    continue;
                }
                let v = h_hol(kv, &p, &c).unwrap().re.to_f64() * i_pow_minus(kv) as f64;
                let envelope = (-(gap * gap) / (4.0 * (l * l) as f64)).exp();
                cmax = cmax.max(v / envelope);
            }
            assert!(cmax <= 10.0, "Gaussian fit constant at K={k}, L={l}: {cmax}");
        }
    }

    #[test]
    fn localization_profile() {
        // |log(i^k h(k)) + (K-k)^2/(2L^2) - (K-k)L^2/(2K)| <= 3 across the
        // support, checked at an admissible (K, L) where the expansion's
        // o(1) terms are genuinely small.
        let c = cfg();
        let p = TestFunctionParams::new(1024, 4).unwrap();
        assert!(p.range_warning().is_none());
        let (lo, hi) = p.support();
        let kk = 1024f64;
        let l2 = 16f64;
        for kv in (lo..=hi).step_by(2) {
            let v = h_hol(kv, &p, &c).unwrap().re.to_f64() * i_pow_minus(kv) as f64;
            let gap = kk - kv as f64;
            let dev = (v.ln() + gap * gap / (2.0 * l2) - gap * l2 / (2.0 * kk)).abs();
            assert!(dev <= 3.0, "profile at k={kv}: {dev}");
        }
    }

    #[test]
    fn minus_channel_symbolic_zero() {
        assert!(minus_channel_vanishes(&p12()));
        assert!(minus_channel_vanishes(
            &TestFunctionParams::new(512, 8).unwrap()
        ));
    }

    #[test]
    fn h_hat_real_positive_on_unit_interval() {
        let c = cfg();
        let p = p12();
        for sr in [0.1, 0.5, 0.9] {
            let v = h_hat(&c.cplx(sr, 0.0), &p, &c).unwrap();
            assert!(v.re.to_f64() > 0.0);
            assert!(v.im.to_f64().abs() < 1e-45);
        }
    }

    #[test]
    fn h_hat_conjugate_symmetry() {
        let c = cfg();
        let p = p12();
        let s = c.cplx(0.5, 3.0);
        let a = h_hat(&s, &p, &c).unwrap();
        let b = h_hat(&s.conj(), &p, &c).unwrap();
        let rel = (&a.conj() - &b).abs() / a.abs();
        assert!(rel.to_f64() < 1e-44);
    }

    #[test]
    fn h_hat_holomorphy_strip() {
        // Finite on a grid of the strip Re(s) in (L^2-K-1+0.1, 2].
        let c = cfg();
        let p = p12();
        let lo = 4.0 - 12.0 - 1.0 + 0.1;
        let mut sigma = lo;
        while sigma <= 2.0 {
            for tau in [0.0, 1.0, 17.0] {
                let v = h_hat(&c.cplx(sigma, tau), &p, &c).unwrap();
                assert!(v.is_finite(), "h_hat not finite at {sigma}+{tau}i");
            }
            sigma += 0.7;
        }
    }

    #[test]
    fn h_closed_power_law_and_sign() {
        let c = cfg();
        let p = p12();
        // x -> 0+: H ~ const x^{K-1-L^2} = const x^7, so H(2x)/H(x) -> 2^7.
        let x1 = c.real_from_f64(1e-5);
        let x2 = c.real_from_f64(2e-5);
        let h1 = h_closed(&x1, &p, &c).unwrap();
        let h2 = h_closed(&x2, &p, &c).unwrap();
        let ratio = (h2 / h1).to_f64();
        assert!((ratio / 128.0 - 1.0).abs() < 0.01, "ratio {ratio}");
        // x = 1: sign equals sign of J_11(4 pi).
        let h = h_closed(&c.real_from_f64(1.0), &p, &c).unwrap();
        let four_pi = c.pi() * 4u32;
        let j = bessel_j(&c.real_from_f64(11.0), &four_pi, &c).unwrap();
        assert_eq!(h.to_f64() > 0.0, j.to_f64() > 0.0);
        // x = 10: magnitude below the prefactor envelope with |J| <= 1.
        let h10 = h_closed(&c.real_from_f64(10.0), &p, &c).unwrap();
        let pref = ln_prefactor(&p, c.prec()).to_f64().exp() / std::f64::consts::PI;
        let bound = pref * (2.0 * std::f64::consts::PI * 10.0).powf(-4.0);
        assert!(h10.to_f64().abs() <= bound);
    }

    #[test]
    fn regime_report_smoke() {
        let c = cfg();
        let p = TestFunctionParams::new(256, 4).unwrap();
        let grid: Vec<f64> = (0..40).map(|i| i as f64 * 16.0).collect();
        let rep = regime_bound_report(&p, 0.5, &grid, &c).unwrap();
        for row in &rep.rows {
            assert!(row.ratio.is_finite() && row.ratio > 0.0);
        }
        assert!(rep.fitted_gaussian_rate > 0.0);
    }
}
