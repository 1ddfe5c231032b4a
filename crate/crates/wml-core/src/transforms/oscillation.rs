//! The oscillation-cancellation experiment: the weighted sum over even K of
//! h~+_K(t1) conj(h~+_K(t2)) with a smooth bump in K/T. Off-diagonal pairs
//! (t1 far from t2) cancel steeply; the diagonal does not.

use super::eval::transform_eval;
use super::kernels::{SpectralArg, Variant};
use super::TransformConfig;
use crate::error::{Error, Result};
use crate::num::complex::Cplx;
use crate::num::PrecisionConfig;
use crate::testfn::TestFunctionParams;
use rayon::prelude::*;

/// Result of the oscillation sum with its accumulated numerical budget.
#[derive(Debug, Clone)]
pub struct OscillationValue {
    pub value: Cplx,
    pub budget: f64,
    /// Number of weights K contributing.
    pub terms: usize,
}

/// The standard smooth partition-of-unity bump: 1 on [1,2], supported on
/// (1/2, 5/2), glued with phi(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}).
pub fn bump(x: f64) -> f64 {
    fn phi(u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        let a = (-1.0 / u).exp();
        let b = (-1.0 / (1.0 - u)).exp();
        a / (a + b)
    }
    if x <= 0.5 || x >= 2.5 {
        0.0
    } else if x < 1.0 {
        phi((x - 0.5) / 0.5)
    } else if x <= 2.0 {
        1.0
    } else {
        phi((2.5 - x) / 0.5)
    }
}

/// Sum over even K with bump(K/T) != 0 of
/// bump(K/T) h~+_K(t1) conj(h~+_K(t2)), parallel over K with a
/// deterministic reduction order.
pub fn oscillation_sum(
    t1: f64,
    t2: f64,
    big_t: u32,
    window: u32,
    cfg: &PrecisionConfig,
) -> Result<OscillationValue> {
    if big_t > 512 {
        return Err(Error::Domain(format!(
            "oscillation_sum: desk budget is T <= 512, got {big_t}"
        )));
    }
    let tf = big_t as f64;
    let lo_t = tf.powf(2.0 / 3.0 + 0.05);
    let hi_t = tf * tf.ln() / window as f64;
    for t in [t1, t2] {
        if !(t > lo_t && t < hi_t) {
            return Err(Error::Domain(format!(
                "oscillation_sum: t = {t} outside ({lo_t:.2}, {hi_t:.2})"
            )));
        }
    }

    // Even K with bump support: K/T in (1/2, 5/2).
    let k_min = {
        let mut k = (tf / 2.0).floor() as u32 + 1;
        if k % 2 == 1 {
            k += 1;
        }
        k
    };
    let k_max = ((2.5 * tf).ceil() as u32).saturating_sub(1);
    let weights: Vec<u32> = (k_min..=k_max)
        .step_by(2)
        .filter(|&k| {
            bump(k as f64 / tf) > 0.0
                && (window as u64 * window as u64) < (k as u64).saturating_sub(1)
        })
        .collect();

    let per_k: Result<Vec<(Cplx, f64)>> = weights
        .par_iter()
        .map(|&k| {
            let p = TestFunctionParams::new(k, window)?;
            let omega = bump(k as f64 / tf);
            let tc1 = TransformConfig::auto(&p, t1, cfg, 1e-8)?.symmetric(true);
            let v1 = transform_eval(Variant::Plus, SpectralArg::MaassT(t1), &p, &tc1)?;
            let tc2 = TransformConfig::auto(&p, t2, cfg, 1e-8)?.symmetric(true);
            let v2 = transform_eval(Variant::Plus, SpectralArg::MaassT(t2), &p, &tc2)?;
            let term = (&v1.value * &v2.value.conj()).scale(&cfg.real_from_f64(omega));
            let b1 = v1.budget();
            let b2 = v2.budget();
            let a1 = v1.value.abs().to_f64();
            let a2 = v2.value.abs().to_f64();
            let budget = omega * (a1 * b2 + a2 * b1 + b1 * b2);
            Ok((term, budget))
        })
        .collect();
    let per_k = per_k?;

    let mut acc = Cplx::zero(cfg.prec());
    let mut budget = 0.0;
    for (term, b) in &per_k {
        acc = &acc + term;
        budget += b;
    }
    Ok(OscillationValue {
        value: acc,
        budget,
        terms: per_k.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        assert_eq!(bump(0.4), 0.0);
        assert_eq!(bump(2.6), 0.0);
        assert_eq!(bump(1.0), 1.0);
        assert_eq!(bump(1.7), 1.0);
        assert_eq!(bump(2.0), 1.0);
        let r = bump(0.75);
        assert!(r > 0.0 && r < 1.0);
        // Symmetry of the glue: bump(0.75) == bump(2.25).
        assert!((bump(0.75) - bump(2.25)).abs() < 1e-15);
        // Monotone on the ramps.
        assert!(bump(0.6) < bump(0.8) && bump(0.8) < bump(0.95));
    }
}
