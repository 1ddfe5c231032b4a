//! Mellin–Barnes kernels, the dual transforms of the spectral reciprocity
//! formula, stationary-phase verification, the oscillation-cancellation
//! experiment, and the Cauchy-circle main term.

pub mod kernels;
pub mod fused;
pub mod interp;
pub mod eval;
pub mod stationary;
pub mod oscillation;
pub mod mainterm;

pub use eval::{transform_eval, TransformValue};
pub use kernels::{kernel_eval, kernel_log, SpectralArg, Variant};
pub use mainterm::{main_term_limit, MainTermResult};
pub use oscillation::{oscillation_sum, OscillationValue};
pub use stationary::{locate_stationary_point, StationaryPointResult};

use crate::error::{Error, Result};
use crate::num::PrecisionConfig;
use crate::testfn::TestFunctionParams;

/// Contour and truncation configuration for the dual transforms.
#[derive(Debug, Clone)]
pub struct TransformConfig {
    /// Contour abscissa, strictly inside (0, 1). 1/2 by default: symmetric
    /// in the Gamma-factor arguments, best conditioning.
    pub sigma: f64,
    /// Contour truncation |Im s| <= tau_max.
    pub tau_max: f64,
    /// Tail bound implied by the regime-4 envelope beyond tau_max.
    pub tail_bound: f64,
    /// Envelope mass below which interior dead regions of the contour may
    /// be skipped (their bound joins the budget).
    pub skip_target: f64,
    /// Exploit the conjugate symmetry of the integrand (real t, even k) and
    /// integrate only Im s >= 0. Off by default so the realness of the
    /// result stays a measured property rather than a structural one.
    pub symmetric: bool,
    pub cfg: PrecisionConfig,
}

impl TransformConfig {
    /// Derive tau_max from the regime-4 envelope so that the neglected tail
    /// is below `tail_target`, with the hard floor 4 max(2|t|, K).
    pub fn auto(
        p: &TestFunctionParams,
        spectral_arg: f64,
        cfg: &PrecisionConfig,
        tail_target: f64,
    ) -> Result<Self> {
        Self::with_sigma(p, spectral_arg, cfg, tail_target, 0.5)
    }

    pub fn with_sigma(
        p: &TestFunctionParams,
        spectral_arg: f64,
        cfg: &PrecisionConfig,
        tail_target: f64,
        sigma: f64,
    ) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::Parameter(format!(
                "contour abscissa must lie in (0,1), got {sigma}"
            )));
        }
        if !(tail_target > 0.0) {
            return Err(Error::Parameter("tail target must be positive".into()));
        }
        let k = p.weight_center as f64;
        let l = p.window as f64;
        let l2p1 = l * l + 1.0;
        // Integrand envelope beyond the floor: L K^{L^2+1} tau^{-L^2-2}
        // (regime 4 times the kernel's polynomial decay); its tail integral
        // is (L/(L^2+1)) K (tau/K)^{-(L^2+1)}.
        let from_regime = k * (l * k / (l2p1 * tail_target)).powf(1.0 / l2p1);
        let floor = 4.0 * (2.0 * spectral_arg.abs()).max(k);
        let tau_max = from_regime.max(floor);
        let tail_bound = (l / l2p1) * k * (tau_max / k).powf(-l2p1);
        Ok(TransformConfig {
            sigma,
            tau_max,
            tail_bound,
            skip_target: tail_target,
            symmetric: false,
            cfg: cfg.clone(),
        })
    }

    pub fn validate(&self, p: &TestFunctionParams, spectral_arg: f64) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::Parameter(format!(
                "contour abscissa must lie in (0,1), got {}",
                self.sigma
            )));
        }
        let floor = 4.0 * (2.0 * spectral_arg.abs()).max(p.weight_center as f64);
        if self.tau_max < floor * (1.0 - 1e-12) {
            return Err(Error::Parameter(format!(
                "tau_max = {} below the floor 4 max(2|t|, K) = {floor}",
                self.tau_max
            )));
        }
        Ok(())
    }

    pub fn symmetric(mut self, yes: bool) -> Self {
        self.symmetric = yes;
        self
    }

    /// Effective relative quadrature tolerance: no tighter than the skip
    /// target warrants.
    pub fn quad_rel_tol(&self) -> f64 {
        self.cfg.quad_rel_tol.max(self.skip_target * 1e-4)
    }

    /// Panel width resolving the integrand oscillation (phase derivative of
    /// order log K + log tau); wider when tolerance allows, with the
    /// adaptive bisection as backstop.
    pub fn panel_width(&self, p: &TestFunctionParams) -> f64 {
        let k = p.weight_center as f64;
        let rate = (3.0 + k).ln() + (3.0 + self.tau_max).ln() + 2.0;
        // 24-point panels resolve ~ 2 (48!)^(1/48) tol^(1/48) radians.
        let radians = 17.0 * self.quad_rel_tol().powf(1.0 / 48.0);
        (radians / rate).clamp(0.05, 2.0)
    }
}
