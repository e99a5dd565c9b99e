use rug::{Float, Integer};

use super::EvalContext;
use crate::error::{Error, Result};

/// Γ(a) for `0 < a ≤ 2500`: exact factorials at integers, MPFR's correctly
/// rounded gamma elsewhere.
pub fn gamma(a: &Float, ctx: &EvalContext) -> Result<Float> {
    if !(*a > 0) || *a > 2500 {
        return Err(Error::domain(format!("gamma argument {} outside (0, 2500]", a.to_f64())));
    }
    if a.is_integer() {
        let n = a.to_u32_saturating().expect("bounded") - 1;
        return Ok(Float::with_val(ctx.precision_bits, Integer::from(Integer::factorial(n))));
    }
    let g = Float::with_val(ctx.precision_bits + 32, a).gamma();
    Ok(Float::with_val(ctx.precision_bits, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn known_values() {
        let ctx = EvalContext::new(200).unwrap();
        assert_eq!(gamma(&ctx.float(5.0), &ctx).unwrap(), 24);
        let half = gamma(&ctx.float(0.5), &ctx).unwrap();
        let pi = Float::with_val(200, Constant::Pi);
        assert!(Float::with_val(200, half.square() - pi).abs() < ctx.target_abs_error);
        for a in [0.3, 1.7, 12.25, 801.5] {
            let a = ctx.float(a);
            let lhs = gamma(&Float::with_val(200, &a + 1u32), &ctx).unwrap();
            let rhs = Float::with_val(200, &a * gamma(&a, &ctx).unwrap());
            assert!((Float::with_val(200, &lhs - &rhs) / &lhs).abs() < 1e-55);
        }
        assert!(gamma(&ctx.float(0.0), &ctx).is_err());
        assert!(gamma(&ctx.float(3000.0), &ctx).is_err());
    }
}
