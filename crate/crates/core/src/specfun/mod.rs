//! Ai, J_ν and Γ in arbitrary precision.
//!
//! Everything here is computed from convergent power series with a running
//! error bound; nothing depends on large-ν or large-argument asymptotics, so
//! the kernel expansion can be checked against these values without circularity.

mod airy;
mod bessel;
mod complex;
mod gamma;

pub use airy::{airy_ai, airy_ai_complex, airy_ai_f64};
pub use bessel::{bessel_j, bessel_j_f64};
pub use complex::{cmat_det, cmat_inv, cmat_max_diff, cmat_mul, BigComplex, CMat};
pub use gamma::gamma;

use rug::Float;

use crate::error::{Error, Result};

/// Working precision and absolute accuracy goal shared by every evaluation.
#[derive(Clone, Debug)]
pub struct EvalContext {
    pub precision_bits: u32,
    pub target_abs_error: Float,
    /// Ceiling for automatic precision escalation.
    pub max_precision_bits: u32,
}

impl EvalContext {
    /// Target `2^{8−bits}`; escalation capped at `max(64·bits, 2^15)` bits.
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::domain(format!("precision {bits} below 64 bits")));
        }
        let target = Float::with_val(64, Float::i_exp(1, 8 - bits as i32));
        Ok(EvalContext { precision_bits: bits, target_abs_error: target, max_precision_bits: (64 * bits).max(1 << 15) })
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_abs_error = Float::with_val(64, target);
        self
    }

    pub fn with_cap(mut self, bits: u32) -> Self {
        self.max_precision_bits = bits;
        self
    }

    /// Twice the bits, with the target tightened accordingly.
    pub fn doubled(&self) -> Self {
        let mut c = EvalContext::new(2 * self.precision_bits).expect("at least 128 bits");
        c.max_precision_bits = 2 * self.max_precision_bits;
        c
    }

    /// `⌈−log₂ target⌉`.
    pub fn target_bits(&self) -> u32 {
        match self.target_abs_error.get_exp() {
            Some(e) if e <= 0 => (1 - e) as u32,
            _ => 0,
        }
    }

    pub(crate) fn float(&self, v: f64) -> Float {
        Float::with_val(self.precision_bits, v)
    }

    pub(crate) fn escalate(&self, p: u32, err: &Float, what: &str) -> Result<u32> {
        let deficit = match (err.get_exp(), self.target_abs_error.get_exp()) {
            (Some(a), Some(b)) => (a - b).max(0) as u32,
            _ => 0,
        };
        let next = p + deficit.max(32) + 32;
        if next > self.max_precision_bits {
            return Err(Error::Precision(format!(
                "{what}: error {} above target {} at {p} bits; raise --precision-bits or the cap",
                err.to_f64(),
                self.target_abs_error.to_f64()
            )));
        }
        Ok(next)
    }
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext::new(256).expect("valid")
    }
}
