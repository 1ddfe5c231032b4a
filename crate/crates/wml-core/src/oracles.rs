//! Independent verification oracles.
//!
//! Everything here recomputes a quantity along a path disjoint from the
//! production implementation it checks: an accelerated alternating series
//! for zeta, the standard integral representation for Bessel J. These back
//! the invariant suites and the acceptance tests; production code never
//! calls them.

use crate::error::{Error, Result};
use crate::num::complex::Cplx;
use crate::num::quad::{integrate_line, QuadOptions};
use crate::num::{PrecisionConfig, Real};
use rug::ops::CompleteRound;
use rug::Float;

/// zeta(s) through the Dirichlet eta function with Cohen–Rodriguez
/// Villegas–Zagier acceleration of the alternating series:
/// zeta(s) = eta(s) / (1 - 2^{1-s}).
pub fn zeta_eta_oracle(s: &Cplx, cfg: &PrecisionConfig) -> Result<Cplx> {
    let prec = cfg.prec();
    let s = s.with_prec(prec);
    let one = Cplx::one(prec);
    if (&s - &one).abs() < cfg.eps() {
        return Err(Error::Pole("zeta_eta_oracle at s = 1".into()));
    }
    // n terms give ~ (3+sqrt(8))^-n accuracy: 1.31 n digits, with some loss
    // growing in |Im s|.
    let n = (cfg.digits as f64 * 1.35).ceil() as usize + 16 + (2.0 * s.im.to_f64().abs()) as usize;
    // Partial sums d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built
    // from the term ratio; b_0 = 1.
    let mut dk: Vec<Real> = Vec::with_capacity(n + 1);
    let mut b = Float::with_val(prec, 1);
    let mut partial = Float::with_val(prec, 1);
    dk.push(partial.clone());
    for i in 1..=n {
        // b_i / b_{i-1} = 4 (n+i-1)(n-i+1) / ((2i)(2i-1))
        let num = Float::with_val(prec, 4u64 * (n as u64 + i as u64 - 1) * (n as u64 - i as u64 + 1));
        let den = Float::with_val(prec, (2 * i as u64) * (2 * i as u64 - 1));
        b = b * num / den;
        partial += &b;
        dk.push(partial.clone());
    }
    let dn = dk[n].clone();
    let mut acc = Cplx::zero(prec);
    for k in 0..n {
        // (-1)^k (d_n - d_k) / (k+1)^s
        let coeff = (&dn - &dk[k]).complete(prec);
        let lnk1 = Float::with_val(prec, k as u64 + 1).ln();
        let pw = (-&s).scale(&lnk1).exp();
        let term_c = pw.scale(&coeff);
        if k % 2 == 0 {
            acc = &acc + &term_c;
        } else {
            acc = &acc - &term_c;
        }
    }
    let eta = acc.scale(&dn.recip());
    // divide by (1 - 2^{1-s})
    let ln2 = Float::with_val(prec, 2).ln();
    let two_pow = (&one - &s).scale(&ln2).exp();
    let denom = &one - &two_pow;
    Ok(&eta / &denom)
}

/// J_nu(x) by adaptive quadrature of the standard integral representation
///   J_nu(x) = (1/pi) int_0^pi cos(nu t - x sin t) dt
///           - sin(nu pi)/pi int_0^inf exp(-x sinh u - nu u) du,
/// the second term vanishing at integer order.
pub fn bessel_integral_oracle(order: &Real, x: &Real, cfg: &PrecisionConfig) -> Result<Real> {
    let prec = cfg.prec();
    let nu = Float::with_val(prec, order);
    let xx = Float::with_val(prec, x);
    let pi = cfg.pi();
    let opts = QuadOptions::from_cfg(cfg).with_panel_width(
        // resolve the oscillation nu*t - x sin t
        (1.0 / (1.0 + nu.to_f64().abs() + xx.to_f64().abs())).max(1e-4) * 3.0,
    );
    let nu1 = nu.clone();
    let x1 = xx.clone();
    let osc = integrate_line(
        move |t: &Real| {
            let arg = (&nu1 * t).complete(prec) - (&x1 * &t.clone().sin()).complete(prec);
            Ok(Cplx::from_real(arg.cos()))
        },
        &Float::new(prec),
        &pi,
        cfg,
        &opts,
    )?;
    let mut total = osc.value.re / &pi;

    // Non-integer order: subtract the exponential leg.
    let nu_rounded = nu.clone().round();
    if (&nu - &nu_rounded).complete(prec).to_f64().abs() > 1e-12 {
        // e^{-x sinh u - nu u} < eps for u beyond asinh((prec ln2 + 40)/x)
        let target = (prec as f64 + 64.0) * std::f64::consts::LN_2;
        let u_max = ((target / xx.to_f64().max(1e-3)).max(1.0)).asinh() + 2.0;
        let nu2 = nu.clone();
        let x2 = xx.clone();
        let leg = integrate_line(
            move |u: &Real| {
                let e = -(&x2 * &u.clone().sinh()).complete(prec) - (&nu2 * u).complete(prec);
                Ok(Cplx::from_real(e.exp()))
            },
            &Float::new(prec),
            &Float::with_val(prec, u_max),
            cfg,
            &QuadOptions::from_cfg(cfg),
        )?;
        let sin_nu_pi = (&nu * &pi).complete(prec).sin();
        total -= sin_nu_pi * leg.value.re / &pi;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(50).unwrap()
    }

    #[test]
    fn eta_oracle_at_2() {
        let c = cfg();
        let v = zeta_eta_oracle(&c.cplx(2.0, 0.0), &c).unwrap();
        let target = c.pi().square() / 6u32;
        assert!(
            (v.re.clone() - &target).abs().to_f64() < 1e-45,
            "zeta(2) via eta: {} vs {}",
            v.re.to_f64(),
            target.to_f64()
        );
    }

    #[test]
    fn eta_oracle_agrees_with_euler_maclaurin() {
        let c = cfg();
        for (re, im) in [(0.5, 0.0), (0.5, 3.0), (1.5, -7.0), (1.001, 0.0)] {
            let s = c.cplx(re, im);
            let a = zeta_eta_oracle(&s, &c).unwrap();
            let b = crate::num::zeta(&s, &c).unwrap();
            let rel = (&a - &b).abs() / b.abs();
            assert!(rel.to_f64() < 1e-20, "zeta mismatch at {re}+{im}i: {:e}", rel.to_f64());
        }
    }

    #[test]
    fn bessel_oracle_matches_implementation() {
        let c = cfg();
        let v_impl = crate::num::bessel_j(&c.real_from_f64(11.0), &c.real_from_f64(4.0 * std::f64::consts::PI), &c).unwrap();
        let v_orac = bessel_integral_oracle(
            &c.real_from_f64(11.0),
            &c.real_from_f64(4.0 * std::f64::consts::PI),
            &c,
        )
        .unwrap();
        let rel = ((v_impl - &v_orac) / &v_orac).abs().to_f64();
        assert!(rel < 1e-30, "rel {rel:e}");
    }

    #[test]
    fn bessel_oracle_noninteger_order() {
        let c = cfg();
        let nu = c.real_from_f64(2.5);
        let x = c.real_from_f64(3.0);
        let v_impl = crate::num::bessel_j(&nu, &x, &c).unwrap();
        let v_orac = bessel_integral_oracle(&nu, &x, &c).unwrap();
        let rel = ((v_impl - &v_orac) / &v_orac).abs().to_f64();
        assert!(rel < 1e-25, "rel {rel:e}");
    }
}
