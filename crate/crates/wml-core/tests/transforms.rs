//! Behavioural tests of the dual transforms at moderate desk parameters.
//! The acceptance suite re-runs these properties at the full criterion
//! parameters; here the scales are kept small enough for routine CI.

use wml_core::num::PrecisionConfig;
use wml_core::testfn::TestFunctionParams;
use wml_core::transforms::*;

fn cfg(digits: u32) -> PrecisionConfig {
    PrecisionConfig::new(digits).unwrap()
}

#[test]
fn minus_transform_is_tiny() {
    // p = (K=128, L=4), t = 30: the minus kernel's residue scale is
    // e^{-pi t} ~ 1e-41; the value must sit far below 1e-18.
    let c = cfg(40);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let tc = TransformConfig::auto(&p, 30.0, &c, 1e-26).unwrap();
    let v = transform_eval(Variant::Minus, SpectralArg::MaassT(30.0), &p, &tc).unwrap();
    assert!(
        v.value.abs().to_f64() < 1e-18,
        "minus transform magnitude {:e}",
        v.value.abs().to_f64()
    );
}

#[test]
fn hol_transform_is_tiny_in_small_k_regime() {
    let c = cfg(40);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let tc = TransformConfig::auto(&p, 12.0, &c, 1e-26).unwrap();
    let v = transform_eval(Variant::Hol, SpectralArg::Weight(12), &p, &tc).unwrap();
    // Residue scale K^{1-k} L ~ 128^{-11} * 4 ~ 2.6e-23.
    assert!(
        v.value.abs().to_f64() < 1e-18,
        "hol transform magnitude {:e}",
        v.value.abs().to_f64()
    );
}

#[test]
fn plus_transform_oscillatory_scale_and_realness() {
    // K = 128, L = 4, t = K^0.75 ~ 38: |h~+| should be within [1e-3,1e3]
    // of L/sqrt(t) and real to the quadrature budget.
    let c = cfg(40);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let t = 128f64.powf(0.75);
    let tc = TransformConfig::auto(&p, t, &c, 1e-24).unwrap();
    let v = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap();
    let scale = 4.0 / t.sqrt();
    let ratio = v.value.abs().to_f64() / scale;
    assert!(
        (1e-3..=1e3).contains(&ratio),
        "plus magnitude ratio {ratio:e}"
    );
    assert!(
        v.value.im.to_f64().abs() <= v.budget() * 10.0 + 1e-25,
        "imaginary part {:e} vs budget {:e}",
        v.value.im.to_f64(),
        v.budget()
    );
}

#[test]
fn plus_transform_even_in_t() {
    let c = cfg(35);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let t = 25.0;
    let tc = TransformConfig::auto(&p, t, &c, 1e-20).unwrap();
    let a = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap();
    let b = transform_eval(Variant::Plus, SpectralArg::MaassT(-t), &p, &tc).unwrap();
    let diff = (&a.value - &b.value).abs().to_f64();
    assert!(
        diff <= (a.budget() + b.budget()) * 10.0 + 1e-24,
        "evenness violated: {diff:e}"
    );
}

#[test]
fn sigma_independence() {
    // No poles inside 0 < sigma < 1, so the contour abscissa is irrelevant.
    let c = cfg(35);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let t = 20.0;
    let a = {
        let tc = TransformConfig::with_sigma(&p, t, &c, 1e-20, 0.3).unwrap();
        transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap()
    };
    let b = {
        let tc = TransformConfig::with_sigma(&p, t, &c, 1e-20, 0.7).unwrap();
        transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap()
    };
    let diff = (&a.value - &b.value).abs().to_f64();
    let budget = (a.budget() + b.budget()) * 10.0 + 1e-22;
    assert!(diff <= budget, "sigma dependence: {diff:e} vs {budget:e}");
}

#[test]
fn tau_max_doubling_is_below_tail_threshold() {
    let c = cfg(35);
    let p = TestFunctionParams::new(128, 4).unwrap();
    let t = 20.0;
    let tc = TransformConfig::auto(&p, t, &c, 1e-18).unwrap();
    let mut tc2 = tc.clone();
    tc2.tau_max *= 2.0;
    let a = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap();
    let b = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc2).unwrap();
    let diff = (&a.value - &b.value).abs().to_f64();
    assert!(
        diff <= tc.tail_bound * 10.0 + a.quad_err + b.quad_err,
        "tau_max doubling moved the value by {diff:e} (tail bound {:e})",
        tc.tail_bound
    );
}

#[test]
fn stationary_point_location_moderate() {
    // K = 1024, L = 4, t = K^0.75: the located phase-derivative zero must
    // sit within 25% of the quartic-root prediction.
    let c = cfg(35);
    let p = TestFunctionParams::new(1024, 4).unwrap();
    let t = 1024f64.powf(0.75);
    let tc = TransformConfig::auto(&p, t, &c, 1e-18).unwrap();
    let r = locate_stationary_point(t, &p, &tc).unwrap();
    assert!(
        r.rel_deviation <= 0.25,
        "stationary point deviation {} (located {}, predicted {})",
        r.rel_deviation,
        r.y_located,
        r.y_predicted
    );
}

#[test]
fn main_term_smoke_small_k() {
    // K = 12, L = 2 — the reciprocity-report configuration. Radius
    // independence and realness at modest tolerance.
    let c = cfg(35);
    let p = TestFunctionParams::new(12, 2).unwrap();
    let tc = TransformConfig::auto(&p, 0.0, &c, 1e-14).unwrap();
    let r = main_term_limit(&p, 0.01, 64, &tc).unwrap();
    let value = (r.value_re * r.value_re + r.value_im * r.value_im).sqrt();
    assert!(
        r.stability <= 1e-6 * value.max(1.0),
        "radius instability {:e} at value {value:e}",
        r.stability
    );
    assert!(
        r.value_im.abs() <= 1e-8 * value.max(1e-30),
        "imaginary part {:e} of {value:e}",
        r.value_im
    );
    // Scale: |value| <= 100 K^{1.1} L.
    assert!(value <= 100.0 * 12f64.powf(1.1) * 2.0);
}
