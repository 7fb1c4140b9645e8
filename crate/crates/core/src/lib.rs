//! Gamma-family special functions, numerical certification of complete
//! monotonicity for four gamma-ratio families, and an audit registry for the
//! inequalities that follow from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: log-gamma, digamma, polygamma, log-beta and friends.
//! * [`quad`]: double-exponential quadrature on the half line.
//! * [`kernels`]: the ratio families and two independent routes to
//!   `(-1)^n (ln f)^(n)(z)`.
//! * [`certify`]: grid certification of (log-)complete monotonicity.
//! * [`inequalities`]: the inequality registry, sweeps and tightness ranking.
//! * [`cli`]: the `cmgamma` command-line driver.

pub mod certify;
pub mod cli;
mod error;
pub mod inequalities;
pub mod kernels;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
