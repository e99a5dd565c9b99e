use rug::ops::Pow;
use rug::Float;

use super::{gamma, EvalContext};
use crate::error::{Error, Result};

/// `log₂` of the largest ascending-series term, in double precision.
fn log2_max_term(nu: f64, t: f64) -> f64 {
    let half = t / 2.0;
    let lg = Float::with_val(64, nu + 1.0).ln_gamma().to_f64();
    let mut l = nu * half.ln() - lg;
    let mut best = l;
    let mut k = 0.0;
    loop {
        let r = half * half / ((k + 1.0) * (nu + k + 1.0));
        if r <= 1.0 {
            break;
        }
        l += r.ln();
        best = best.max(l);
        k += 1.0;
    }
    best / std::f64::consts::LN_2
}

/// `(J_ν(t), J_ν′(t))` from `Σ (−1)^k (t/2)^{ν+2k} / (k! Γ(ν+k+1))` and its
/// term-wise derivative, for `0 ≤ ν ≤ 1200`, `0 < t ≤ 2000`.
pub fn bessel_j(nu: &Float, t: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    if !(*nu >= 0) || *nu > 1200 {
        return Err(Error::domain(format!("Bessel order {} outside [0, 1200]", nu.to_f64())));
    }
    if !(*t > 0) || *t > 2000 {
        return Err(Error::domain(format!("Bessel argument {} outside (0, 2000]", t.to_f64())));
    }
    let tb = ctx.target_bits();
    let tf = t.to_f64();
    let lmax = log2_max_term(nu.to_f64(), tf).max(0.0).ceil() as u32;
    let mut p = ctx.precision_bits.max((0.45 * tf).ceil() as u32 + tb + 64).max(lmax + tb + 32);
    let tol = Float::with_val(32, &ctx.target_abs_error >> 8u32);
    loop {
        let sub = EvalContext::new(p)?;
        let t = Float::with_val(p, t);
        let half = Float::with_val(p, &t / 2u32);
        let q = Float::with_val(p, half.clone().square());
        let nu_p = Float::with_val(p, nu);
        let g = gamma(&Float::with_val(p, &nu_p + 1u32), &sub)?;
        let mut term = Float::with_val(p, half.clone().pow(&nu_p) / &g);
        let mut j = term.clone();
        let mut jd = Float::with_val(p, &term * &nu_p) / &t;
        let mut mag = Float::with_val(32, term.clone().abs());
        let mut k: u32 = 0;
        let tail = loop {
            k += 1;
            let denom = Float::with_val(p, &nu_p + k) * k;
            term = -(Float::with_val(p, &term * &q) / denom);
            j += &term;
            let factor = Float::with_val(p, &nu_p + 2 * k) / &t;
            jd += Float::with_val(p, &term * &factor);
            let size = Float::with_val(32, term.clone().abs()) * Float::with_val(32, factor.clone().max(&Float::with_val(32, 1)));
            mag += &size;
            let r = q.to_f64() / ((k as f64 + 1.0) * (nu.to_f64() + k as f64 + 1.0));
            if r < 0.5 {
                let bound = Float::with_val(32, &size * (2.0 * r));
                if bound < tol {
                    break bound;
                }
            }
        };
        let err = Float::with_val(32, tail + (Float::with_val(32, &mag * (6 * k)) >> p));
        if err <= ctx.target_abs_error {
            return Ok((Float::with_val(ctx.precision_bits, j), Float::with_val(ctx.precision_bits, jd)));
        }
        p = ctx.escalate(p, &err, "Bessel series")?;
    }
}

/// Double-precision `(J_ν(t), J_ν′(t))`, rounded from a raised-precision evaluation.
pub fn bessel_j_f64(nu: f64, t: f64) -> Result<(f64, f64)> {
    let ctx = EvalContext::new(64)?.with_target(1e-19);
    let (j, d) = bessel_j(&ctx.float(nu), &ctx.float(t), &ctx)?;
    Ok((j.to_f64(), d.to_f64()))
}
