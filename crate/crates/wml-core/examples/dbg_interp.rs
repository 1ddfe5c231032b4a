use std::time::Instant;
use rug::Float;
use wml_core::num::{complex::Cplx, PrecisionConfig};
use wml_core::testfn::TestFunctionParams;
use wml_core::transforms::fused::FusedIntegrand;
use wml_core::transforms::interp::LogInterp;
use wml_core::transforms::kernels::{SpectralArg, Variant};

fn main() {
    let c = PrecisionConfig::new(30).unwrap();
    let p = TestFunctionParams::new(400, 4).unwrap();
    let f = FusedIntegrand::new(Variant::Plus, SpectralArg::MaassT(64.0), &p, 0.5, &c);
    let g = |tau: &Float| f.eval_log(tau);
    let t0 = Instant::now();
    let li = LogInterp::build(&g, 98.0, 1600.0, &[0.0, 128.0], 0.5, 1e-22, &c).unwrap();
    println!("build: {:.2}s, blocks: {:?}", t0.elapsed().as_secs_f64(), li.debug_block_count());
    let t0 = Instant::now();
    let n = 20000;
    let mut s = 0.0;
    for i in 0..n {
        let tau = c.real_from_f64(100.0 + (i as f64) * 0.07);
        s += li.eval(&tau).unwrap().re.to_f64();
    }
    println!(
        "interp eval: {:.1} us/node (exact fallbacks {}) sink {s:.3e}",
        t0.elapsed().as_micros() as f64 / n as f64,
        li.exact_evals.get()
    );
}
