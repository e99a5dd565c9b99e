use rug::Float;

use crate::error::{Error, Result};
use crate::specfun::{BigComplex, EvalContext};

/// Boundary value on a branch cut: the limit from above or from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    Upper,
    Lower,
}

impl CutSide {
    fn sign(self) -> i32 {
        match self {
            CutSide::Upper => 1,
            CutSide::Lower => -1,
        }
    }
}

/// `½ ln((1+s)/(1−s))`.
fn atanh(s: &BigComplex) -> BigComplex {
    let p = s.prec();
    let one = BigComplex::one(p);
    (&one + s).div(&(&one - s)).ln().scale(&Float::with_val(p, 0.5))
}

/// `g(z) = −(1−z)^{1/2} + ½ ln((1 + (1−z)^{1/2})/(1 − (1−z)^{1/2})) ± πi/2` for `±Im z > 0`.
///
/// On `(0, ∞)` a side is required and the boundary value is returned; on
/// `(−∞, 0)` g is analytic and the side is ignored.
pub fn g_eval(z: &BigComplex, side: Option<CutSide>, ctx: &EvalContext) -> Result<BigComplex> {
    let p = ctx.precision_bits + 32;
    let z = z.clone().with_prec(p);
    let half_pi = Float::with_val(p, BigComplex::pi(p) / 2u32);
    let out = if !z.im.is_zero() {
        let s = (&BigComplex::one(p) - &z).sqrt();
        let sign = if z.im > 0 { 1 } else { -1 };
        let v = &atanh(&s) - &s;
        BigComplex::new(v.re, v.im + half_pi * sign)
    } else if z.re < 0 {
        let s = Float::with_val(p, 1u32 - &z.re).sqrt();
        let l = (Float::with_val(p, &s + 1u32) / Float::with_val(p, &s - 1u32)).ln() / 2u32;
        BigComplex::real(l - s)
    } else if z.re.is_zero() {
        return Err(Error::domain("g has a logarithmic singularity at z = 0"));
    } else {
        let side = side.ok_or_else(|| Error::domain("g on the cut [0, ∞) needs a side"))?;
        let sign = side.sign();
        if z.re < 1 {
            let s = Float::with_val(p, 1u32 - &z.re).sqrt();
            let l = (Float::with_val(p, 1u32 + &s) / Float::with_val(p, 1u32 - &s)).ln() / 2u32;
            BigComplex::new(l - s, half_pi * sign)
        } else {
            let w = Float::with_val(p, &z.re - 1u32).sqrt();
            let a = w.clone().atan();
            BigComplex::new(Float::new(p), (w - a + half_pi) * sign)
        }
    };
    Ok(out.with_prec(ctx.precision_bits))
}

/// `S(s) = Σ 3 s^k/(2k+3) = 3(atanh √s − √s)/s^{3/2}`.
fn s_function(s: &BigComplex) -> BigComplex {
    let p = s.prec();
    if s.magnitude() < 0.5 {
        let mut acc = BigComplex::zero(p);
        let mut pw = BigComplex::one(p);
        let mut k: u64 = 0;
        loop {
            let term = pw.scale(&Float::with_val(p, 3)).div_u64(2 * k + 3);
            acc = &acc + &term;
            if term.magnitude().get_exp().is_some_and(|e| e < -(p as i32) - 8) || term.is_zero() {
                return acc;
            }
            pw = &pw * s;
            k += 1;
        }
    }
    let u = s.sqrt();
    let num = &atanh(&u) - &u;
    num.div(&(&u * &(&u * &u))).scale(&Float::with_val(p, 3))
}

/// Conformal map `f(z) = 2^{−2/3}(1 − z) S(1 − z)^{2/3}` on the disc `|z − 1| < 1`.
///
/// Equal to `(3g/2 ∓ 3πi/4)^{2/3}` for `±Im z > 0`, real-analytic across the
/// real axis, with `f(1) = 0` and `f′(1) = −2^{−2/3}`.
pub fn f_eval(z: &BigComplex, ctx: &EvalContext) -> Result<BigComplex> {
    let p = ctx.precision_bits + 32;
    let s = &BigComplex::one(p) - &z.clone().with_prec(p);
    if !(s.magnitude() < 1.0) {
        return Err(Error::domain("f is evaluated on the disc |z − 1| < 1"));
    }
    let two_thirds = Float::with_val(p, 2) / 3u32;
    let c = Float::with_val(p, 4).cbrt().recip();
    let v = (&s * &s_function(&s).powf(&two_thirds)).scale(&c);
    Ok(v.with_prec(ctx.precision_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32, a: f64, b: f64) -> BigComplex {
        BigComplex::from_f64(p, a, b)
    }

    #[test]
    fn g_boundary_values_are_limits() {
        let ctx = EvalContext::new(128).unwrap();
        for x in [-3.0, 0.4, 2.5] {
            for (side, eps) in [(CutSide::Upper, 1e-25), (CutSide::Lower, -1e-25)] {
                let on = g_eval(&c(128, x, 0.0), Some(side), &ctx).unwrap();
                let near = g_eval(&c(128, x, eps), None, &ctx).unwrap();
                assert!((&on - &near).abs() < 1e-20, "x = {x} {on} {near}");
            }
        }
        assert!(g_eval(&c(128, 0.4, 0.0), None, &ctx).is_err());
    }

    #[test]
    fn f_series_and_closed_form_agree() {
        let ctx = EvalContext::new(128).unwrap();
        for (a, b) in [(0.7, 0.1), (1.3, -0.2), (0.45, 0.05), (1.6, 0.3)] {
            let z = c(128, a, b);
            let f = f_eval(&z, &ctx).unwrap();
            let g = g_eval(&z, None, &ctx).unwrap();
            let quarter = Float::with_val(128, BigComplex::pi(128) * 0.75);
            let shift = BigComplex::new(Float::new(128), if b > 0.0 { -quarter } else { quarter });
            let w = &g.scale(&ctx.float(1.5)) + &shift;
            // compare cubes to stay branch-free
            let lhs = f.powi(3);
            let rhs = &w * &w;
            assert!((&lhs - &rhs).abs() < 1e-30, "z = {a}+{b}i");
        }
    }
}
