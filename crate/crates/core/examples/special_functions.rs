//! Arbitrary-precision Airy, Bessel and Gamma functions with controlled
//! absolute error.

use hardsoft::specfun::{airy_ai, airy_ai_complex, bessel_j, gamma, BigComplex, EvalContext};
use rug::Float;

fn main() -> hardsoft::Result<()> {
    let ctx = EvalContext::new(256)?;
    let p = ctx.precision_bits;

    for x in [-5.0, 0.0, 1.0, 10.0] {
        let (a, d) = airy_ai(&Float::with_val(p, x), &ctx)?;
        println!("Ai({x:>5}) = {:.40}   Ai'({x}) = {:.20e}", a, d);
    }
    let z = BigComplex::from_f64(p, -2.0, 3.0);
    let (a, _) = airy_ai_complex(&z, &ctx)?;
    println!("Ai(-2+3i) = {a}");

    for (nu, t) in [(0.0, 1.0), (100.0, 100.0), (400.0, 405.0)] {
        let (j, dj) = bessel_j(&Float::with_val(p, nu), &Float::with_val(p, t), &ctx)?;
        println!("J_{nu}({t}) = {:.30e}   J' = {:.30e}", j, dj);
    }

    println!("Gamma(1/3) = {:.50}", gamma(&Float::with_val(p, 1.0 / 3.0), &ctx)?);

    // the same value at twice the precision agrees to the requested target
    let wide = ctx.doubled();
    let x = Float::with_val(2 * p, 2.5);
    let (lo, _) = airy_ai(&x, &ctx)?;
    let (hi, _) = airy_ai(&x, &wide)?;
    println!("|Ai(2.5)@256 - Ai(2.5)@512| = {:e}", Float::with_val(2 * p, lo - hi).abs());
    Ok(())
}
