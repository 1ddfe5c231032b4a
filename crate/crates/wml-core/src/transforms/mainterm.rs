//! The main-term limit of the reciprocity identity: the four-variable
//! function h~_{z1..z4} evaluated at z_j = 1/2 + j z on a small circle
//! |z| = radius and averaged by Cauchy's formula to produce its limit at
//! the central point.
//!
//! With h identically zero the middle sum of the defining expression
//! vanishes. Each contour integral h~±_{z;j} is evaluated on the vertical
//! line Re(s) = 2 plus the four residues at s = 2 - 2 z_m crossed when
//! deforming rightwards. (At circle radii up to 0.02 a line closer to 1
//! would leave some of those poles uncrossed and drag others across; at
//! Re(s) = 2 every pole family sits strictly on its prescribed side for
//! all nodes.)

use super::TransformConfig;
use crate::error::{Error, Result};
use crate::num::complex::{cos as ccos, sin as csin, Cplx};
use crate::num::gamma::log_gamma;
use crate::num::quad::{quad_vertical, QuadOptions};
use crate::num::zeta::zeta;
use crate::num::PrecisionConfig;
use crate::testfn::{h_hat, h_hat_log, TestFunctionParams};
use rayon::prelude::*;
use rug::ops::CompleteRound;
use rug::Float;
use serde::Serialize;

/// Result of the Cauchy-circle main-term computation.
#[derive(Debug, Clone, Serialize)]
pub struct MainTermResult {
    pub value_re: f64,
    pub value_im: f64,
    pub radius: f64,
    pub nodes: usize,
    /// Absolute change of the value under halving the radius.
    pub stability: f64,
}

/// Abscissa of the shifted contour for the inner Mellin–Barnes integrals.
const LINE_RE: f64 = 2.0;

struct ZContext {
    prec: u32,
    cfg: PrecisionConfig,
    p: TestFunctionParams,
    zj: [Cplx; 4],
    zsum: Cplx,
}

impl ZContext {
    fn new(z: &Cplx, p: &TestFunctionParams, cfg: &PrecisionConfig) -> Self {
        let prec = cfg.prec();
        let half = Cplx::new(Float::with_val(prec, 0.5), Float::new(prec));
        let mut zj: Vec<Cplx> = Vec::with_capacity(4);
        for j in 1..=4u32 {
            let jz = z.scale(&Float::with_val(prec, j));
            zj.push(&half + &jz);
        }
        let zsum = &(&zj[0] + &zj[1]) + &(&zj[2] + &zj[3]);
        ZContext {
            prec,
            cfg: cfg.clone(),
            p: p.clone(),
            zj: [zj[0].clone(), zj[1].clone(), zj[2].clone(), zj[3].clone()],
            zsum,
        }
    }

    fn zeta_at(&self, w: &Cplx) -> Result<Cplx> {
        zeta(w, &self.cfg)
    }

    /// First sum: 2 sum_j h_hat(2(1-z_j))
    ///   prod_{l != j} zeta(1 - z_j + z_l) prod_{m<n, m,n != j} zeta(z_m+z_n)
    ///   / zeta(1 - z_j + sum_{l != j} z_l).
    fn first_sum(&self) -> Result<Cplx> {
        let one = Cplx::one(self.prec);
        let two = Float::with_val(self.prec, 2);
        let mut acc = Cplx::zero(self.prec);
        for j in 0..4 {
            let arg = (&one - &self.zj[j]).scale(&two);
            let hh = h_hat(&arg, &self.p, &self.cfg)?;
            let mut num = hh;
            for l in 0..4 {
                if l == j {
                    continue;
                }
                num = &num * &self.zeta_at(&(&(&one - &self.zj[j]) + &self.zj[l]))?;
            }
            for m in 0..4 {
                for n in (m + 1)..4 {
                    if m == j || n == j {
                        continue;
                    }
                    num = &num * &self.zeta_at(&(&self.zj[m] + &self.zj[n]))?;
                }
            }
            let den_arg = &(&one - &self.zj[j]) + &(&self.zsum - &self.zj[j]);
            let den = self.zeta_at(&den_arg)?;
            acc = &acc + &(&num / &den);
        }
        Ok(acc.scale(&two))
    }

    /// Zeta-coefficient of the (j, +-) inner integral in the third sum:
    /// 2 prod_{l != j} zeta(1 + z_j - z_l) zeta(sum_{m != j,l} z_m - 1)
    /// / zeta(3 + z_j - sum_{l != j} z_l).
    fn third_sum_coeff(&self, j: usize) -> Result<Cplx> {
        let one = Cplx::one(self.prec);
        let three = Cplx::new(Float::with_val(self.prec, 3), Float::new(self.prec));
        let mut num = Cplx::new(Float::with_val(self.prec, 2), Float::new(self.prec));
        for l in 0..4 {
            if l == j {
                continue;
            }
            num = &num * &self.zeta_at(&(&(&one + &self.zj[j]) - &self.zj[l]))?;
            let partial = &(&self.zsum - &self.zj[j]) - &self.zj[l];
            num = &num * &self.zeta_at(&(&partial - &one))?;
        }
        let den_arg = &(&three + &self.zj[j]) - &(&self.zsum - &self.zj[j]);
        let den = self.zeta_at(&den_arg)?;
        Ok(&num / &den)
    }

    /// Shared s-independent trig constants.
    fn trig_constants(&self) -> (Cplx, Cplx) {
        let pi_half = {
            let mut t = self.cfg.pi();
            t /= 2u32;
            t
        };
        let k12 = ccos(&(&self.zj[0] - &self.zj[1]).scale(&pi_half));
        let k34 = ccos(&(&self.zj[2] - &self.zj[3]).scale(&pi_half));
        (k12, k34)
    }

    /// The combined integrand of the third sum at a point s on the line:
    /// sum_{j, +-} coeff_{j,+-} F_{j,+-}(s), with the shared factors
    /// h_hat(s) (2 pi)^s prod_m Gamma(1 - z_m - s/2) computed once.
    #[allow(clippy::too_many_arguments)]
    fn third_integrand(
        &self,
        s: &Cplx,
        coeff_plus: &[Cplx; 4],
        coeff_minus: &[Cplx; 4],
        k12: &Cplx,
        k34: &Cplx,
        skip_m: Option<usize>,
    ) -> Result<Cplx> {
        let prec = self.prec;
        let cfg = &self.cfg;
        let pi_half = {
            let mut t = cfg.pi();
            t /= 2u32;
            t
        };
        let two_pi_ln = {
            let mut t = cfg.pi();
            t *= 2;
            t.ln()
        };
        let half = Float::with_val(prec, 0.5);
        let one = Cplx::one(prec);

        // shared: h_hat(s) (2 pi)^s prod_m Gamma(1 - z_m - s/2)
        let mut shared_log = h_hat_log(s, &self.p, cfg)?;
        shared_log = &shared_log + &s.scale(&two_pi_ln);
        let s_half = s.scale(&half);
        for (m, zm) in self.zj.iter().enumerate() {
            if Some(m) == skip_m {
                continue;
            }
            let arg = &(&one - zm) - &s_half;
            shared_log = &shared_log + &log_gamma(&arg, cfg)?;
        }
        let shared = shared_log.exp();

        // trig pieces
        let c12 = ccos(&(&(s + &self.zj[0]) + &self.zj[1]).scale(&pi_half));
        let c34 = ccos(&(&(s + &self.zj[2]) + &self.zj[3]).scale(&pi_half));
        let sfac = csin(&(&(s + &self.zsum) - &one).scale(&pi_half));
        let t_plus = &sfac * &(&(&c12 * &c34) + &(k12 * k34));
        let t_minus = &(k12 * &c34) + &(&c12 * k34);

        // j-dependent Gamma pair and accumulation
        let mut acc = Cplx::zero(prec);
        let two = Cplx::new(Float::with_val(prec, 2), Float::new(prec));
        for j in 0..4 {
            let a = &(&s_half + &(&self.zsum - &self.zj[j])) - &two;
            let b = &s_half + &self.zj[j];
            let gj = (&log_gamma(&a, cfg)? + &log_gamma(&b, cfg)?).exp();
            let w = &(&coeff_plus[j] * &t_plus) + &(&coeff_minus[j] * &t_minus);
            acc = &acc + &(&gj * &w);
        }
        Ok(&acc * &shared)
    }
}

/// h~_{z1..z4} at z_j = 1/2 + j z (the middle sum vanishes because h = 0).
pub fn h_tilde_z(z: &Cplx, p: &TestFunctionParams, tc: &TransformConfig) -> Result<Cplx> {
    let cfg = &tc.cfg;
    let prec = cfg.prec();
    let ctx = ZContext::new(z, p, cfg);
    let first = ctx.first_sum()?;

    // Coefficients of the combined third-sum integrand. The minus variant
    // carries the outer factor cos(pi/2 (zsum - 2 z_j)).
    let pi_half = {
        let mut t = cfg.pi();
        t /= 2u32;
        t
    };
    let mut coeff_plus: Vec<Cplx> = Vec::with_capacity(4);
    let mut coeff_minus: Vec<Cplx> = Vec::with_capacity(4);
    for j in 0..4 {
        let c = ctx.third_sum_coeff(j)?;
        let xj = ccos(&(&ctx.zsum - &ctx.zj[j].scale(&Float::with_val(prec, 2))).scale(&pi_half));
        coeff_plus.push(c.clone());
        coeff_minus.push(&c * &xj);
    }
    let coeff_plus: [Cplx; 4] = [
        coeff_plus[0].clone(),
        coeff_plus[1].clone(),
        coeff_plus[2].clone(),
        coeff_plus[3].clone(),
    ];
    let coeff_minus: [Cplx; 4] = [
        coeff_minus[0].clone(),
        coeff_minus[1].clone(),
        coeff_minus[2].clone(),
        coeff_minus[3].clone(),
    ];
    let (k12, k34) = ctx.trig_constants();

    // Vertical integral on Re(s) = 2, extended outwards in blocks until a
    // block falls below tolerance.
    let sigma = Float::with_val(prec, LINE_RE);
    let opts = QuadOptions::from_cfg(cfg)
        .with_panel_width(tc.panel_width(p))
        .with_abs_floor(1e-40);
    let integrand = |s: &Cplx| -> Result<Cplx> {
        ctx.third_integrand(s, &coeff_plus, &coeff_minus, &k12, &k34, None)
    };
    let k = p.weight_center as f64;
    let t0 = (2.0 * k).max(48.0);
    let mut lo = Float::with_val(prec, -t0);
    let mut hi = Float::with_val(prec, t0);
    let base = quad_vertical(&integrand, &sigma, (&lo, &hi), cfg, &opts)?;
    let mut integral = base.value;
    let mut block_hi = t0;
    for _ in 0..12 {
        let next = block_hi * 2.0;
        let up = quad_vertical(
            &integrand,
            &sigma,
            (&Float::with_val(prec, block_hi), &Float::with_val(prec, next)),
            cfg,
            &opts,
        )?;
        let dn = quad_vertical(
            &integrand,
            &sigma,
            (&Float::with_val(prec, -next), &Float::with_val(prec, -block_hi)),
            cfg,
            &opts,
        )?;
        let block = &up.value + &dn.value;
        integral = &integral + &block;
        block_hi = next;
        let scale = integral.abs().to_f64().max(1.0);
        if block.abs().to_f64() < 1e-12 * scale {
            break;
        }
        if block_hi > 1e7 {
            return Err(Error::TailBudget {
                what: "main-term vertical integral".into(),
                achieved: block.abs().to_f64(),
                required: 1e-12 * scale,
            });
        }
        let _ = &lo;
        let _ = &hi;
        lo = Float::with_val(prec, -block_hi);
        hi = Float::with_val(prec, block_hi);
    }

    // Residues at s0 = 2 - 2 z_m (simple poles of Gamma(1 - z_m - s/2),
    // residue factor -2), all crossed when deforming to Re(s) = 2.
    let two = Float::with_val(prec, 2);
    let mut res_sum = Cplx::zero(prec);
    for m in 0..4 {
        let s0 = &Cplx::new(two.clone(), Float::new(prec))
            - &ctx.zj[m].scale(&Float::with_val(prec, 2));
        let rest = ctx.third_integrand(&s0, &coeff_plus, &coeff_minus, &k12, &k34, Some(m))?;
        res_sum = &res_sum + &rest.scale(&Float::with_val(prec, -2));
    }

    // J = integral - 2 pi i sum Res; third sum = J / (2 pi^3 i).
    let two_pi = {
        let mut t = cfg.pi();
        t *= 2;
        t
    };
    let j_total = &integral - &res_sum.mul_i().scale(&two_pi);
    let two_pi3 = {
        let mut t = cfg.pi();
        t.pow_assign(3);
        t *= 2;
        t
    };
    let third = j_total.mul_i().scale(&(-two_pi3.recip()));

    Ok(&first + &third)
}

/// Cauchy-circle average (1/2 pi i) \oint h~_z / z dz over |z| = radius,
/// trapezoidal with `nodes` points, parallel over nodes.
fn circle_average(
    p: &TestFunctionParams,
    radius: f64,
    nodes: usize,
    tc: &TransformConfig,
) -> Result<Cplx> {
    let cfg = &tc.cfg;
    let prec = cfg.prec();
    let two_pi = {
        let mut t = cfg.pi();
        t *= 2;
        t
    };
    let r = Float::with_val(prec, radius);
    let contributions: Result<Vec<Cplx>> = (0..nodes)
        .into_par_iter()
        .map(|idx| {
            let theta = (&two_pi * &Float::with_val(prec, idx as u64)).complete(prec)
                / (nodes as u32);
            let (s, c) = theta.sin_cos(Float::new(prec));
            let dir = Cplx::new(c, s);
            let z = dir.scale(&r);
            let v = h_tilde_z(&z, p, tc).map_err(|e| {
                Error::Domain(format!(
                    "main-term node {idx} failed ({e}); try a different radius"
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Domain(format!(
                    "main-term node {idx} non-finite; try a different radius"
                )));
            }
            // f(z) dz / (2 pi i) with f = h~_z / z: contributes f(z) e^{i theta} r / n,
            // and f(z) e^{i theta} = h~_z / r... keep the generic form.
            Ok(&(&v / &z) * &dir)
        })
        .collect();
    let mut acc = Cplx::zero(prec);
    for c in contributions? {
        acc = &acc + &c;
    }
    Ok(acc.scale(&(r / (nodes as u32))))
}

/// The main-term limit via the Cauchy circle, with a stability measurement
/// against the halved radius.
pub fn main_term_limit(
    p: &TestFunctionParams,
    radius: f64,
    nodes: usize,
    tc: &TransformConfig,
) -> Result<MainTermResult> {
    if !(0.002..=0.02).contains(&radius) {
        return Err(Error::Parameter(format!(
            "main-term radius must lie in [0.002, 0.02], got {radius}"
        )));
    }
    if nodes < 64 || !nodes.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "main-term nodes must be a power of two >= 64, got {nodes}"
        )));
    }
    p.validate()?;
    let primary = circle_average(p, radius, nodes, tc)?;
    let halved = circle_average(p, radius / 2.0, nodes, tc)?;
    let stability = (&primary - &halved).abs().to_f64();
    Ok(MainTermResult {
        value_re: primary.re.to_f64(),
        value_im: primary.im.to_f64(),
        radius,
        nodes,
        stability,
    })
}

use rug::ops::PowAssign;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        let cfg = PrecisionConfig::new(30).unwrap();
        let p = TestFunctionParams::new(12, 2).unwrap();
        let tc = TransformConfig::auto(&p, 0.0, &cfg, 1e-8).unwrap();
        assert!(main_term_limit(&p, 0.05, 64, &tc).is_err());
        assert!(main_term_limit(&p, 0.01, 48, &tc).is_err());
    }
}
