use rug::{Float, ops::CompleteRound};
use std::time::Instant;

fn main() {
    let prec = 132;
    let a = Float::with_val(prec, 1.2345678901234);
    let b = Float::with_val(prec, 3.98765432109876);
    let n = 2_000_000;
    let mut acc = Float::new(prec);
    let t0 = Instant::now();
    let mut t = Float::new(prec);
    use rug::Assign;
    for _ in 0..n {
        t.assign(&a * &b);
        acc += &t;
    }
    println!("mul+add assign: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n as f64, acc.to_f64());
    let t0 = Instant::now();
    let n2 = 200_000;
    let mut s = 0.0;
    for _ in 0..n2 {
        let c = (&a * &b).complete(prec);
        s += c.to_f64();
    }
    println!("mul alloc: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n2 as f64, s);
    let t0 = Instant::now();
    let n3 = 100_000;
    let mut s = 0.0;
    for i in 0..n3 {
        let c = Float::with_val(prec, 1.5 + (i % 7) as f64).ln();
        s += c.to_f64();
    }
    println!("ln: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n3 as f64, s);
    let t0 = Instant::now();
    let mut s = 0.0;
    for i in 0..n3 {
        let c = Float::with_val(prec, 1.5 + (i % 7) as f64).exp();
        s += c.to_f64();
    }
    println!("exp: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n3 as f64, s);
    let t0 = Instant::now();
    let mut s = 0.0;
    for i in 0..n3 {
        let (a1, b1) = Float::with_val(prec, 1.5 + (i % 7) as f64).sin_cos(Float::new(prec));
        s += a1.to_f64() + b1.to_f64();
    }
    println!("sincos: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n3 as f64, s);
    let t0 = Instant::now();
    let mut s = 0.0;
    for i in 0..n3 {
        let c = Float::with_val(prec, 231.5 + (i % 7) as f64).ln_gamma();
        s += c.to_f64();
    }
    println!("real ln_gamma: {:.1} ns/op (sink {})", t0.elapsed().as_nanos() as f64 / n3 as f64, s);
}
