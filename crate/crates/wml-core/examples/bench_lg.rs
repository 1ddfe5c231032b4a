use std::time::Instant;
use wml_core::num::{gamma::log_gamma, PrecisionConfig};
use wml_core::testfn::{h_hat_log, TestFunctionParams};
use wml_core::transforms::{kernel_log, SpectralArg, Variant};

fn main() {
    let c = PrecisionConfig::new(30).unwrap();
    let t0 = Instant::now();
    let n = 20000;
    let mut s = 0.0f64;
    for i in 0..n {
        let zz = c.cplx(0.25, 200.0 + i as f64 * 0.001);
        let v = log_gamma(&zz, &c).unwrap();
        s += v.re.to_f64();
    }
    println!(
        "log_gamma: {:.2} us/call (sink {})",
        t0.elapsed().as_micros() as f64 / n as f64,
        s
    );
    let p = TestFunctionParams::new(512, 8).unwrap();
    let t0 = Instant::now();
    let n = 5000;
    let mut s = 0.0f64;
    for i in 0..n {
        let ss = c.cplx(0.5, 100.0 + i as f64 * 0.01);
        let a = h_hat_log(&ss, &p, &c).unwrap();
        let b = kernel_log(Variant::Plus, &ss, &SpectralArg::MaassT(107.0), &c).unwrap();
        s += (&a + &b).re.to_f64();
    }
    println!(
        "integrand logs: {:.2} us/call (sink {})",
        t0.elapsed().as_micros() as f64 / n as f64,
        s
    );
}
