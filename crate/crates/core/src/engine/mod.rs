//! Symbolic derivation of the correction kernels K_j.
//!
//! The pipeline mirrors the steepest-descent analysis: conformal map f and the
//! E-factor about z = 1, jump coefficients J_k, the additive splitting into
//! R_k, the sandwich E⁻¹R⁻¹RE, the Airy factor and the square-root prefactor.
//! Every stage is exact; irrational constants either cancel or raise an alarm.

mod airy;
mod assemble;
mod conformal;
mod emit;
mod jumps;

pub use airy::{airy_asymp_coeffs, airy_derivative_polys, lemma_identity_check, lemma_polynomial, AiryPolyPair, AsympCoeffs};
pub use assemble::{
    a_coeffs, a_coeffs_direct, airy_coefficient_series, assemble_kernel_expansion, assemble_with_padding, numerator_series,
    prefactor_full, prefactor_series, r_hat_series, sandwich_matrix, sandwich_series, SandwichExpansion, Side,
};
pub use conformal::{e_factor_series, f_series, p_coeffs, p_table, scaled_f_series, EFactor, FSeries};
pub use emit::{emit_expansion, Format};
pub use jumps::{j_matrix_series, r_outer_inner, RPair};

use crate::algebra::{BigRational, BivarPoly};
use crate::error::{Error, Result};

/// The derived table `p_{j,κλ}` for `1 ≤ j ≤ order`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelExpansion {
    pub order: usize,
    /// `terms[j-1] = [p_{j,00}, p_{j,01}, p_{j,10}, p_{j,11}]`.
    pub terms: Vec<[BivarPoly<BigRational>; 4]>,
}

impl KernelExpansion {
    /// `p_{j,κλ}` with `κ, λ ∈ {0, 1}`.
    pub fn p(&self, j: usize, kappa: usize, lambda: usize) -> &BivarPoly<BigRational> {
        &self.terms[j - 1][2 * kappa + lambda]
    }

    /// Symmetry of `p_{j,00}`, `p_{j,11}` and `p_{j,01}(x,y) = p_{j,10}(y,x)`.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, t) in self.terms.iter().enumerate() {
            let j = i + 1;
            if !t[0].is_symmetric() || !t[3].is_symmetric() {
                return Err(Error::alarm(format!("p_{j},00 or p_{j},11 is not symmetric")));
            }
            if t[1] != t[2].swap_xy() {
                return Err(Error::alarm(format!("p_{j},01(x,y) != p_{j},10(y,x)")));
            }
        }
        Ok(())
    }

    /// Total degrees `[deg p_{j,00}, …, deg p_{j,11}]` per j.
    pub fn degrees(&self) -> Vec<[Option<u32>; 4]> {
        self.terms.iter().map(|t| [t[0].total_degree(), t[1].total_degree(), t[2].total_degree(), t[3].total_degree()]).collect()
    }
}
