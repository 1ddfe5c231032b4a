use std::time::Instant;
use wml_core::num::PrecisionConfig;
use wml_core::testfn::TestFunctionParams;
use wml_core::transforms::*;

fn main() {
    let c = PrecisionConfig::new(30).unwrap();
    let p = TestFunctionParams::new(400, 4).unwrap();
    let t = 64.0;
    let tc = TransformConfig::auto(&p, t, &c, 1e-8).unwrap().symmetric(true);
    println!("tau_max = {:.1}, tail = {:.2e}", tc.tau_max, tc.tail_bound);
    let t0 = Instant::now();
    let v = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc).unwrap();
    println!(
        "plus transform: {:.2}s  value = {:.6e} + {:.2e}i  (quad {:.1e}, tail {:.1e})",
        t0.elapsed().as_secs_f64(),
        v.value.re.to_f64(),
        v.value.im.to_f64(),
        v.quad_err,
        v.tail_bound
    );
    // full-contour for comparison
    let tc2 = TransformConfig::auto(&p, t, &c, 1e-8).unwrap();
    let t0 = Instant::now();
    let v2 = transform_eval(Variant::Plus, SpectralArg::MaassT(t), &p, &tc2).unwrap();
    println!(
        "full contour:   {:.2}s  value = {:.6e} + {:.2e}i",
        t0.elapsed().as_secs_f64(),
        v2.value.re.to_f64(),
        v2.value.im.to_f64()
    );
    let d = (&v.value - &v2.value).abs().to_f64();
    println!("sym vs full diff = {d:.2e} (budgets {:.1e})", v.budget() + v2.budget());
}
