use wml_core::num::{complex, PrecisionConfig};
use wml_core::transforms::kernels::*;

fn main() {
    let c = PrecisionConfig::new(50).unwrap();
    let pi = c.pi();
    for (re, im) in [(0.5, 2.0), (0.3, -3.5), (0.9, 0.25)] {
        let s = c.cplx(re, im);
        let ps2 = s.scale(&pi).scale(&c.real_from_f64(0.5));
        let dc = complex::cos(&ps2);
        let vc = log_cos_half_pi(&s, &c).exp();
        let ds = complex::sin(&ps2);
        let vs = log_sin_half_pi(&s, &c).exp();
        let s2 = &ds * &ds;
        let one = wml_core::num::complex::Cplx::one(c.prec());
        let dq = &one + &s2;
        let vq = log_one_plus_sin_sq_half_pi(&s, &c).exp();
        println!(
            "s={re}+{im}i  cos diff {:.2e}  sin diff {:.2e}  q diff {:.2e}",
            (&dc - &vc).abs().to_f64(),
            (&ds - &vs).abs().to_f64(),
            (&dq - &vq).abs().to_f64()
        );
    }
}
