use rug::Float;
use std::time::Instant;
use wml_core::num::{complex::Cplx, PrecisionConfig};

fn main() {
    let c = PrecisionConfig::new(30).unwrap();
    let prec = c.prec();
    let n = 100_000;
    let w = c.cplx(52.25, 200.0);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        s += w.ln().re.to_f64();
    }
    println!("cplx ln: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        s += w.recip().re.to_f64();
    }
    println!("cplx recip: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        s += w.exp().re.to_f64();
    }
    println!("cplx exp: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        let h = w.re.clone().hypot(&w.im);
        s += h.to_f64();
    }
    println!("hypot: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        let h = w.im.clone().atan2(&w.re);
        s += h.to_f64();
    }
    println!("atan2: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);

    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..n {
        s += Float::with_val(prec, 1.7).ln().to_f64();
    }
    println!("real ln: {:.2} us (sink {s})", t0.elapsed().as_micros() as f64 / n as f64);
}
