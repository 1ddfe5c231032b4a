//! Piecewise-Chebyshev interpolation of analytic log-integrands along a
//! contour.
//!
//! The transform integrands have the form exp(g(tau)) with g a sum of
//! log-gamma and log-trig terms: analytic in tau, with singularities at
//! complex distance ~ sqrt((tau - a)^2 + sigma^2) from the nearest anchor
//! a (the Gamma-pole ridges at tau = 0 and tau = +-2t). Blocks sized
//! proportionally to that distance give geometric Chebyshev convergence, so
//! g costs a handful of exact evaluations per block; every quadrature node
//! afterwards is one Clenshaw evaluation plus one exponential instead of
//! five log-gammas.
//!
//! Each block verifies itself against two exact probe evaluations; a block
//! that misses the target accuracy falls back to exact evaluation.

use crate::error::Result;
use crate::num::complex::Cplx;
use crate::num::{PrecisionConfig, Real};
use rug::ops::CompleteRound;
use rug::Float;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

const DEGREE: usize = 24;

/// cos(j pi (i + 1/2) / d) tables per precision.
fn cheb_cos_table(prec: u32) -> std::sync::Arc<Vec<Real>> {
    static T: OnceLock<RwLock<HashMap<u32, std::sync::Arc<Vec<Real>>>>> = OnceLock::new();
    let map = T.get_or_init(|| RwLock::new(HashMap::new()));
    {
        let g = map.read().unwrap();
        if let Some(v) = g.get(&prec) {
            return v.clone();
        }
    }
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let mut v = Vec::with_capacity(DEGREE * DEGREE);
    for j in 0..DEGREE {
        for i in 0..DEGREE {
            let ang = (&pi * &Float::with_val(prec, (j * (2 * i + 1)) as u64)).complete(prec)
                / (2 * DEGREE as u32);
            v.push(ang.cos());
        }
    }
    let v = std::sync::Arc::new(v);
    let mut g = map.write().unwrap();
    g.entry(prec).or_insert(v).clone()
}

struct Block {
    lo: f64,
    hi: f64,
    /// Chebyshev coefficients of g on the block, or None when the block
    /// fell back to exact evaluation.
    coeffs: Option<Vec<Cplx>>,
    center: Real,
    half: Real,
}

/// A piecewise interpolant of exp(g(tau)) on [lo, hi].
pub struct LogInterp<'a, F>
where
    F: Fn(&Real) -> Result<Cplx>,
{
    g: &'a F,
    blocks: Vec<Block>,
    prec: u32,
    /// Count of nodes that fell back to exact evaluation.
    pub exact_evals: std::cell::Cell<usize>,
}

impl<'a, F> LogInterp<'a, F>
where
    F: Fn(&Real) -> Result<Cplx>,
{
    /// Build over [lo, hi] with singular anchors (f64 tau positions at
    /// vertical offset `offset`), targeting absolute accuracy `target` in g.
    pub fn build(
        g: &'a F,
        lo: f64,
        hi: f64,
        anchors: &[f64],
        offset: f64,
        target: f64,
        cfg: &PrecisionConfig,
    ) -> Result<Self> {
        let prec = cfg.prec();
        // Initial block width factor: (4 / wf)^(-DEGREE) <= target / M with
        // a nominal scale M ~ 1e3 for g; blocks that miss their probes are
        // bisected recursively, so this only seeds the subdivision.
        let wf = (4.0 * (target * 1e-3).powf(1.0 / DEGREE as f64))
            .min(0.45)
            .max(0.03);
        let dist = |tau: f64| -> f64 {
            let mut d = f64::INFINITY;
            for &a in anchors {
                d = d.min((tau - a).abs());
            }
            (d * d + offset * offset).sqrt()
        };
        let mut blocks = Vec::new();
        let mut x = lo;
        let guard_max = 200_000;
        let mut n = 0;
        while x < hi {
            let w = (wf * dist(x + 1e-9)).max(wf * offset).min(hi - x).max(1e-6);
            // Graded: use the distance at the far end when it is smaller
            // (approaching an anchor from the left).
            let w_end = (wf * dist(x + w)).max(wf * offset);
            let w = w.min(w_end.max(1e-6)).min(hi - x);
            Self::fit_recursive(g, x, x + w, target, prec, 0, &mut blocks)?;
            x += w;
            n += 1;
            if n > guard_max {
                return Err(crate::error::Error::NonConvergence {
                    what: "log-interpolant block subdivision".into(),
                    location: format!("tau = {x}"),
                });
            }
        }
        Ok(LogInterp {
            g,
            blocks,
            prec,
            exact_evals: std::cell::Cell::new(0),
        })
    }

    fn fit_recursive(
        g: &F,
        lo: f64,
        hi: f64,
        target: f64,
        prec: u32,
        depth: u32,
        out: &mut Vec<Block>,
    ) -> Result<()> {
        let b = Self::fit_block(g, lo, hi, target, prec)?;
        if b.coeffs.is_some() || depth >= 10 {
            out.push(b);
            return Ok(());
        }
        let mid = 0.5 * (lo + hi);
        Self::fit_recursive(g, lo, mid, target, prec, depth + 1, out)?;
        Self::fit_recursive(g, mid, hi, target, prec, depth + 1, out)
    }

    fn fit_block(g: &F, lo: f64, hi: f64, target: f64, prec: u32) -> Result<Block> {
        let center = Float::with_val(prec, (lo + hi) / 2.0);
        let half = Float::with_val(prec, (hi - lo) / 2.0);
        let table = cheb_cos_table(prec);
        // Sample at Chebyshev nodes x_i = cos(pi (i+1/2)/d).
        let mut samples = Vec::with_capacity(DEGREE);
        for i in 0..DEGREE {
            let xi = &table[DEGREE + i]; // row j=1 is cos(pi(2i+1)/2d) = the nodes
            let tau = &center + (&half * xi).complete(prec);
            samples.push(g(&tau)?);
        }
        // c_j = (2/d) sum_i g_i cos(j pi (i+1/2)/d), c_0 halved.
        let mut coeffs = Vec::with_capacity(DEGREE);
        for j in 0..DEGREE {
            let mut acc = Cplx::zero(prec);
            for (i, gi) in samples.iter().enumerate() {
                acc = &acc + &gi.scale(&table[j * DEGREE + i]);
            }
            let norm = if j == 0 {
                Float::with_val(prec, DEGREE as u32).recip()
            } else {
                Float::with_val(prec, 2) / Float::with_val(prec, DEGREE as u32)
            };
            coeffs.push(acc.scale(&norm));
        }
        // Truncation indicator plus two exact probes.
        let tail: f64 = coeffs[DEGREE - 3..]
            .iter()
            .map(|c| c.abs().to_f64())
            .sum();
        let mut ok = tail < target * 0.25;
        if ok {
            for frac in [0.23_f64, 0.71] {
                let tau = Float::with_val(prec, lo + (hi - lo) * frac);
                let exact = g(&tau)?;
                let approx = clenshaw(&coeffs, &center, &half, &tau, prec);
                let err = (&exact - &approx).abs().to_f64();
                if !(err <= target) {
                    ok = false;
                    break;
                }
            }
        }
        Ok(Block {
            lo,
            hi,
            coeffs: if ok { Some(coeffs) } else { None },
            center,
            half,
        })
    }

    pub fn debug_block_count(&self) -> (usize, usize) {
        let total = self.blocks.len();
        let fallback = self.blocks.iter().filter(|b| b.coeffs.is_none()).count();
        (total, fallback)
    }

    /// exp(g(tau)) through the interpolant (exact where a block declined).
    pub fn eval(&self, tau: &Real) -> Result<Cplx> {
        let tf = tau.to_f64();
        let idx = self
            .blocks
            .binary_search_by(|b| {
                if tf < b.lo {
                    std::cmp::Ordering::Greater
                } else if tf > b.hi {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .unwrap_or_else(|e| e.min(self.blocks.len() - 1));
        let b = &self.blocks[idx];
        match &b.coeffs {
            Some(c) => Ok(clenshaw(c, &b.center, &b.half, tau, self.prec).exp()),
            None => {
                self.exact_evals.set(self.exact_evals.get() + 1);
                Ok((self.g)(tau)?.exp())
            }
        }
    }
}

fn clenshaw(coeffs: &[Cplx], center: &Real, half: &Real, tau: &Real, prec: u32) -> Cplx {
    let x = ((tau - center).complete(prec)) / half;
    let two_x = (&x * &Float::with_val(prec, 2)).complete(prec);
    let mut b1 = Cplx::zero(prec);
    let mut b2 = Cplx::zero(prec);
    for c in coeffs.iter().skip(1).rev() {
        let nb = &(c + &b1.scale(&two_x)) - &b2;
        b2 = b1;
        b1 = nb;
    }
    &(&coeffs[0] + &b1.scale(&x)) - &b2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_a_log_gamma_sum() {
        let cfg = PrecisionConfig::new(30).unwrap();
        let prec = cfg.prec();
        let g = |tau: &Real| -> Result<Cplx> {
            let z = Cplx::new(Float::with_val(prec, 0.25), (tau / 2u32).complete(prec));
            crate::num::gamma::log_gamma(&z, &cfg)
        };
        let li = LogInterp::build(&g, 5.0, 300.0, &[0.0], 0.5, 1e-24, &cfg).unwrap();
        for tau in [5.3, 17.9, 63.2, 141.0, 299.9] {
            let t = cfg.real_from_f64(tau);
            let via = li.eval(&t).unwrap();
            let exact = g(&t).unwrap().exp();
            let rel = ((&via - &exact).abs() / exact.abs()).to_f64();
            assert!(rel < 1e-20, "interp at tau={tau}: rel {rel:e}");
        }
    }
}
