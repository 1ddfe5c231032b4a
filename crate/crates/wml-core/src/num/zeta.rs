//! Riemann zeta by Euler–Maclaurin summation.
//!
//! zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//!           + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1} + R,
//!
//! with N scaled to |Im s| so the remainder ratio stays below ~1/5 per
//! order. Stable arbitrarily close to the pole at s = 1 (the pole term is
//! explicit), which the Cauchy-circle main term relies on.

use super::complex::Cplx;
use super::{PrecisionConfig, Real};
use crate::error::{Error, Result};
use rug::ops::{CompleteRound, Pow};
use rug::Float;

/// Euler–Maclaurin evaluation of zeta(s) for Re(s) > -10, |Im s| <= 1e5.
pub fn zeta(s: &Cplx, cfg: &PrecisionConfig) -> Result<Cplx> {
    let prec = cfg.prec();
    let s = s.with_prec(prec);
    if !s.is_finite() {
        return Err(Error::NonFinite("zeta argument".into()));
    }
    let sigma = s.re.to_f64();
    let t_abs = s.im.to_f64().abs();
    if sigma < -10.0 {
        return Err(Error::Domain(format!(
            "zeta: Re(s) = {sigma} < -10 is outside the supported strip"
        )));
    }
    if t_abs > 1.0e5 {
        return Err(Error::Domain(format!(
            "zeta: |Im(s)| = {t_abs:.3e} exceeds 1e5"
        )));
    }
    // Pole at s = 1.
    let one = Cplx::one(prec);
    let d = (&s - &one).abs();
    if d < cfg.eps() {
        return Err(Error::Pole("zeta at s = 1".into()));
    }

    let m = (0.85 * cfg.digits as f64).ceil() as usize + 8;
    let n = 20usize.max((0.8 * (t_abs + 2.0 * m as f64)).ceil() as usize);

    // Direct sum over n < N.
    let mut acc = Cplx::zero(prec);
    let minus_s = -&s;
    for k in 1..n {
        let lnk = Float::with_val(prec, k as u64).ln();
        acc = &acc + &minus_s.scale(&lnk).exp();
    }

    let nf = Float::with_val(prec, n as u64);
    let lnn = nf.clone().ln();
    // N^{1-s}/(s-1)
    let n_pow_1ms = (&one - &s).scale(&lnn).exp();
    acc = &acc + &(&n_pow_1ms / &(&s - &one));
    // N^{-s}/2
    let n_pow_ms = minus_s.scale(&lnn).exp();
    acc = &acc + &n_pow_ms.scale(&Float::with_val(prec, 0.5));

    // Correction terms.
    let coeffs = super::cache::zeta_em_coeffs(prec);
    let n2inv = Float::with_val(prec, (n * n) as u64).recip();
    let mut poch = s.clone(); // (s)_1 = s
    let mut npow = n_pow_ms.scale(&nf.clone().recip()); // N^{-s-1}
    let eps = Float::with_val(prec, 2f64).pow(-(prec as i32));
    let scale = acc.abs();
    let mut converged = false;
    for j in 1..=m {
        let coeff = &coeffs[j - 1];
        let term = (&poch * &npow).scale(coeff);
        acc = &acc + &term;
        if term.abs() < (&eps * &scale).complete(prec) {
            converged = true;
            break;
        }
        // advance: (s)_{2j+1} = (s)_{2j-1} (s+2j-1)(s+2j), N^{-s-2j-1}, (2j+2)!
        let a1 = Cplx::new(
            (&s.re + &Float::with_val(prec, (2 * j - 1) as u64)).complete(prec),
            s.im.clone(),
        );
        let a2 = Cplx::new(
            (&s.re + &Float::with_val(prec, (2 * j) as u64)).complete(prec),
            s.im.clone(),
        );
        poch = &(&poch * &a1) * &a2;
        npow = npow.scale(&n2inv);
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "zeta Euler-Maclaurin tail".into(),
            location: format!("s = {}", s),
        });
    }
    Ok(acc)
}


/// |zeta(1/2 + it)^4 / zeta(1 + 2it)|^2 — the Eisenstein density appearing
/// in the reciprocity identity.
pub fn zeta_ratio_density(t: &Real, cfg: &PrecisionConfig) -> Result<Real> {
    let prec = cfg.prec();
    let half = Cplx::new(Float::with_val(prec, 0.5), Float::with_val(prec, t));
    let z_num = zeta(&half, cfg)?;
    let one2it = Cplx::new(
        Float::with_val(prec, 1),
        Float::with_val(prec, (t * 2u32).complete(prec)),
    );
    let z_den = zeta(&one2it, cfg)?;
    let num = z_num.abs();
    let den = z_den.abs();
    let r4 = num.clone().square().square(); // |z|^4
    let ratio = r4 / den;
    Ok(ratio.square())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(50).unwrap()
    }

    #[test]
    fn zeta_two() {
        let c = cfg();
        let v = zeta(&c.cplx(2.0, 0.0), &c).unwrap();
        let pi = c.pi();
        let target = pi.clone().square() / 6u32;
        assert!((v.re - target).abs().to_f64() < 1e-47);
        assert!(v.im.to_f64().abs() < 1e-47);
    }

    #[test]
    fn zeta_zero() {
        let c = cfg();
        let v = zeta(&c.cplx(0.0, 0.0), &c).unwrap();
        assert!((v.re.to_f64() + 0.5).abs() < 1e-47);
    }

    #[test]
    fn zeta_near_one_stable() {
        // zeta(1 + e) = 1/e + gamma + O(e); check against the Stieltjes
        // expansion at e = 1e-3.
        let c = cfg();
        let e = 1e-3;
        let v = zeta(&c.cplx(1.0 + e, 0.0), &c).unwrap();
        let gamma_euler = 0.5772156649015328606;
        let expect = 1.0 / e + gamma_euler + 0.0728158454836767 * e;
        assert!((v.re.to_f64() - expect).abs() < 1e-4);
    }

    #[test]
    fn zeta_pole() {
        let c = cfg();
        assert!(matches!(zeta(&c.cplx(1.0, 0.0), &c), Err(Error::Pole(_))));
    }

    #[test]
    fn conjugate_symmetry() {
        let c = cfg();
        let a = zeta(&c.cplx(0.5, 14.0), &c).unwrap();
        let b = zeta(&c.cplx(0.5, -14.0), &c).unwrap();
        assert!((&a.conj() - &b).abs().to_f64() < 1e-45);
    }
}
