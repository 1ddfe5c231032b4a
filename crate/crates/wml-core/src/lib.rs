//! Numerical laboratory for weight-aspect moments of Hecke L-functions.
//!
//! The crate is organised around the analytic objects it computes:
//!
//! * [`num`] — extended-precision complex special functions (log-gamma,
//!   Riemann zeta, Bessel J) and adaptive quadrature on vertical lines and
//!   circles. Everything downstream is built on these primitives.
//! * [`testfn`] — the Gamma-ratio test-function pair `(h, h_hol)`, its
//!   Hankel-transform kernel `H(x)`, the Mellin transform `Ĥ(s)`, and the
//!   quadrature oracles that certify them.
//! * [`transforms`] — the Mellin–Barnes kernels and dual transforms
//!   `h̃±(t)`, `h̃_hol(k)`, stationary-phase verification, the
//!   oscillation-cancellation experiment, and the Cauchy-circle main term.
//! * [`hecke`] — level-1 holomorphic Hecke eigenforms, central L-values,
//!   adjoint L-values at 1, and moment statistics.
//! * [`harness`] — assembly of the spectral reciprocity identity term by
//!   term, with external Maass data and explicit error budgets.
//!
//! All operations are pure functions of their arguments and a
//! [`num::PrecisionConfig`]; they are safe to call from many threads.

pub mod error;
pub mod num;
pub mod oracles;
pub mod testfn;
pub mod transforms;
pub mod hecke;
pub mod harness;
pub mod checks;

pub use error::{Error, Result};
pub use num::{Cplx, PrecisionConfig, Real};
