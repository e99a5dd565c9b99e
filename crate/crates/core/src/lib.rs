//! Exact derivation and numerical verification of the large-ν expansion of the
//! Bessel kernel around the Airy kernel (the hard-to-soft edge transition).
//!
//! * [`algebra`]: rationals, Q(i, √2), polynomials, truncated Laurent series.
//! * [`engine`]: the symbolic pipeline producing the correction kernels K_j.
//! * [`specfun`]: arbitrary-precision Ai, J_ν and Γ.
//! * [`kernels`]: kernel evaluation, the Airy parametrix and residual scans.
//! * [`fredholm`]: Nyström determinants for F(t) and E₂^hard(s; ν).
//! * [`cli`]: the `hardsoft` command line.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod specfun;

pub use error::{Error, Result};
