//! Quadrature oracles for the Gamma-ratio test function: the Bessel-pair
//! integral must recover h_hol(k), and direct Mellin quadrature of H(x)
//! must recover the closed-form transform.

use rug::{ops::Pow, Float};
use wml_core::num::PrecisionConfig;
use wml_core::testfn::*;

fn cfg() -> PrecisionConfig {
    // The oracle tolerances are 1e-8 / 1e-6; 30 digits keeps the quadrature
    // cheap while leaving plenty of headroom.
    PrecisionConfig::new(30).unwrap()
}

#[test]
fn bessel_pair_integral_recovers_h_hol() {
    let c = cfg();
    let p = TestFunctionParams::new(12, 2).unwrap();
    for k in [8u32, 10, 12, 14, 16] {
        let via_quad = bessel_transform_oracle(k, &p, &c).unwrap();
        let closed = h_hol(k, &p, &c).unwrap();
        let dev = (&via_quad - &closed).abs().to_f64();
        assert!(dev < 1e-8, "Bessel oracle at k={k}: |diff| = {dev:e}");
    }
}

#[test]
fn bessel_pair_integral_vanishes_outside_support() {
    let c = cfg();
    let p = TestFunctionParams::new(12, 2).unwrap();
    let v = bessel_transform_oracle(18, &p, &c).unwrap();
    assert!(
        v.abs().to_f64() < 1e-8,
        "orthogonality outside support: {:e}",
        v.abs().to_f64()
    );
}

#[test]
fn mellin_quadrature_matches_closed_form() {
    let c = cfg();
    let p = TestFunctionParams::new(12, 2).unwrap();
    for (re, im, tol) in [(1.0, 0.0, 1e-6), (0.5, 0.0, 1e-6), (0.5, 3.0, 1e-5)] {
        let s = c.cplx(re, im);
        let via_quad = mellin_oracle(&s, &p, &c).unwrap();
        let closed = h_hat(&s, &p, &c).unwrap();
        let rel = ((&via_quad - &closed).abs() / closed.abs()).to_f64();
        assert!(rel < tol, "Mellin oracle at s={re}+{im}i: rel = {rel:e}");
    }
}

#[test]
fn regime_report_brackets_at_k256() {
    let c = cfg();
    let p = TestFunctionParams::new(256, 4).unwrap();
    // tau = 0: ratio against K^s L within [1e-2, 1e2].
    let rep = regime_bound_report(&p, 0.5, &[0.0], &c).unwrap();
    let r0 = rep.rows[0].ratio;
    assert!((1e-2..=1e2).contains(&r0), "ratio at tau=0: {r0}");
    // tau = 2K: regime-3 ratio finite, and |h_hat| smaller than at tau=0 by
    // at least the factor 2^{L^2}.
    let rep2 = regime_bound_report(&p, 0.5, &[512.0], &c).unwrap();
    assert!(rep2.rows[0].ratio.is_finite() && rep2.rows[0].ratio > 0.0);
    let drop = rep.rows[0].abs_hhat / rep2.rows[0].abs_hhat;
    assert!(drop >= 2f64.powi(16), "drop factor {drop:e}");
}

#[test]
fn gaussian_rate_fit() {
    let c = cfg();
    let p = TestFunctionParams::new(256, 4).unwrap();
    let k = 256.0;
    let l = 4.0;
    let n = 48;
    let grid: Vec<f64> = (0..=n)
        .map(|i| k / l + (k / 2.0 - k / l) * i as f64 / n as f64)
        .collect();
    let rep = regime_bound_report(&p, 0.5, &grid, &c).unwrap();
    // The fitted rate tracks the Stirling prediction (L^2 - sigma + 1)/(2K^2)
    // damped by 1/(1 + tau^2/K^2); compare against the prediction averaged
    // over the fit window.
    let damp_avg = {
        let m = 200;
        let mut s = 0.0;
        for i in 0..=m {
            let t = k / l + (k / 2.0 - k / l) * i as f64 / m as f64;
            s += 1.0 / (1.0 + t * t / (k * k)).powi(2);
        }
        s / (m as f64 + 1.0)
    };
    let predicted = rep.predicted_rate * damp_avg;
    let rel = (rep.fitted_gaussian_rate / predicted - 1.0).abs();
    assert!(
        rel < 0.30,
        "fitted {} vs predicted {} (rel {rel})",
        rep.fitted_gaussian_rate,
        predicted
    );
    // And the envelope is valid: fitted decay at least as fast as (L/2K)^2.
    assert!(rep.fitted_gaussian_rate >= rep.envelope_rate);
}

#[test]
fn h_closed_bessel_oracle_cross_check() {
    // h_closed against an independently computed Bessel value.
    let c = cfg();
    let p = TestFunctionParams::new(12, 2).unwrap();
    let x = c.real_from_f64(1.5);
    let h = h_closed(&x, &p, &c).unwrap();
    let arg = c.pi() * 6u32; // 4 pi x = 6 pi
    let j = wml_core::oracles::bessel_integral_oracle(&c.real_from_f64(11.0), &arg, &c).unwrap();
    // prefactor for K=12, L^2=4: Gamma(3)^2 Gamma(14) / (Gamma(5) Gamma(9))
    let pref = Float::with_val(c.prec(), 4) * Float::with_val(c.prec(), 6227020800u64)
        / (Float::with_val(c.prec(), 24) * Float::with_val(c.prec(), 40320));
    let two_pi_x = c.pi() * 3u32; // 2 pi x with x = 1.5
    let expect = pref / c.pi() * two_pi_x.pow(-4i32) * j;
    let rel = ((h - &expect) / &expect).abs().to_f64();
    assert!(rel < 1e-25, "rel {rel:e}");
}
