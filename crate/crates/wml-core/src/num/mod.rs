//! Extended-precision numerics: precision configuration, complex arithmetic,
//! special functions and quadrature.

pub mod cache;
pub mod complex;
pub mod gamma;
pub mod zeta;
pub mod bessel;
pub mod quad;

pub use complex::Cplx;
pub use gamma::log_gamma;
pub use zeta::zeta;
pub use bessel::bessel_j;
pub use quad::{quad_circle, quad_vertical, QuadResult};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision real number (MPFR-backed).
pub type Real = rug::Float;

const LOG2_10: f64 = 3.321928094887362;

/// Working-precision configuration shared by every operation.
///
/// `digits` is the number of significant decimal digits carried by all
/// intermediate arithmetic; the derived binary precision adds guard bits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Significant decimal digits (>= 30).
    pub digits: u32,
    /// Relative tolerance handed to adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Integrand magnitude below which truncation of tails is allowed.
    pub tail_threshold: f64,
}

impl PrecisionConfig {
    pub fn new(digits: u32) -> Result<Self> {
        let cfg = PrecisionConfig {
            digits,
            quad_rel_tol: 10f64.powi(-((digits as i32) - 10)),
            tail_threshold: 10f64.powi(-((digits as i32) + 10)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 30 {
            return Err(Error::Parameter(format!(
                "digits must be >= 30, got {}",
                self.digits
            )));
        }
        if self.digits > 240 {
            return Err(Error::Parameter(format!(
                "digits must be <= 240 (tolerances are carried as f64), got {}",
                self.digits
            )));
        }
        if !(self.quad_rel_tol > 0.0) {
            return Err(Error::Parameter("quad_rel_tol must be > 0".into()));
        }
        if !(self.tail_threshold > 0.0) {
            return Err(Error::Parameter("tail_threshold must be > 0".into()));
        }
        Ok(())
    }

    /// Binary working precision, including guard bits.
    pub fn prec(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 32
    }

    /// 10^(-digits) as a float at working precision (cached per precision).
    pub fn eps(&self) -> Real {
        cache::eps(self.digits, self.prec())
    }

    /// Same configuration at doubled decimal digits (for self-oracles).
    pub fn doubled(&self) -> PrecisionConfig {
        PrecisionConfig {
            digits: self.digits * 2,
            quad_rel_tol: (self.quad_rel_tol * self.quad_rel_tol).max(1e-300),
            tail_threshold: self.tail_threshold,
        }
    }

    pub fn real_from_f64(&self, x: f64) -> Real {
        Real::with_val(self.prec(), x)
    }

    pub fn real_from_u64(&self, x: u64) -> Real {
        Real::with_val(self.prec(), x)
    }

    pub fn real_from_i64(&self, x: i64) -> Real {
        Real::with_val(self.prec(), x)
    }

    pub fn pi(&self) -> Real {
        Real::with_val(self.prec(), rug::float::Constant::Pi)
    }

    pub fn cplx(&self, re: f64, im: f64) -> Cplx {
        Cplx::new(
            Real::with_val(self.prec(), re),
            Real::with_val(self.prec(), im),
        )
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::new(50).expect("default precision is valid")
    }
}


/// Convert a `Real` to `f64` for reporting (never for further arithmetic).
pub fn to_f64(x: &Real) -> f64 {
    x.to_f64()
}
