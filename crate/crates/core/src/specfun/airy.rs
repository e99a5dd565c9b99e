use rug::Float;

use super::{gamma, BigComplex, EvalContext};
use crate::error::{Error, Result};

/// `Ai(0)` and `−Ai′(0)` at precision `p`.
fn seeds(p: u32) -> (Float, Float) {
    let ctx = EvalContext::new(p.max(64)).expect("valid");
    let third = Float::with_val(p, 1) / 3u32;
    let two_thirds = Float::with_val(p, 2) / 3u32;
    let c = Float::with_val(p, 3).cbrt().recip();
    let c1 = Float::with_val(p, c.clone().square() / gamma(&two_thirds, &ctx).expect("in range"));
    let c2 = Float::with_val(p, c / gamma(&third, &ctx).expect("in range"));
    (c1, c2)
}

/// Maclaurin pair at precision `p`: `(Ai, Ai′, absolute error bound)`.
///
/// `Ai = c₁f − c₂g` with `f = Σ 3^k (1/3)_k z^{3k}/(3k)!`, `g = Σ 3^k (2/3)_k z^{3k+1}/(3k+1)!`.
fn maclaurin(z: &BigComplex, p: u32, tol: &Float) -> (BigComplex, BigComplex, Float) {
    let z = z.clone().with_prec(p);
    let z3 = z.powi(3);
    let zabs3 = z.magnitude().to_f64().powi(3);
    let mut a = BigComplex::one(p);
    let mut b = z.clone();
    let mut ad = (&z * &z).div_u64(2);
    let mut bd = BigComplex::one(p);
    let (mut f, mut g, mut fd, mut gd) = (a.clone(), b.clone(), ad.clone(), bd.clone());
    let mut mag = Float::with_val(32, a.magnitude() + b.magnitude());
    mag += ad.magnitude();
    mag += 1u32;
    let mut n: u64 = 0;
    let tail = loop {
        n += 3;
        a = (&a * &z3).div_u64((n - 1) * n);
        b = (&b * &z3).div_u64(n * (n + 1));
        ad = (&ad * &z3).div_u64(n * (n + 2));
        bd = (&bd * &z3).div_u64((n - 2) * n);
        f = &f + &a;
        g = &g + &b;
        fd = &fd + &ad;
        gd = &gd + &bd;
        let big = [a.magnitude(), b.magnitude(), ad.magnitude(), bd.magnitude()].into_iter().fold(Float::new(32), |m, v| m.max(&v));
        mag += Float::with_val(32, &big * 4u32);
        let r = zabs3 / ((n + 1) * (n + 3)) as f64;
        if r < 0.5 {
            let t = Float::with_val(32, &big * (2.0 * r));
            if t < *tol {
                break t;
            }
        }
    };
    let (c1, c2) = seeds(p);
    let ai = &f.scale(&c1) - &g.scale(&c2);
    let aid = &fd.scale(&c1) - &gd.scale(&c2);
    let round = Float::with_val(32, &mag * (8 * n)) >> p;
    (ai, aid, Float::with_val(32, tail + round))
}

/// `(Ai(z), Ai′(z))` for complex `|z| ≤ 80`, to the context's absolute target.
pub fn airy_ai_complex(z: &BigComplex, ctx: &EvalContext) -> Result<(BigComplex, BigComplex)> {
    let r = z.magnitude().to_f64();
    if !(r <= 80.0) {
        return Err(Error::domain(format!("Airy argument modulus {r} above 80")));
    }
    let zeta = 2.0 / 3.0 * r.powf(1.5);
    let mut p = ctx.precision_bits + (zeta / std::f64::consts::LN_2).ceil() as u32 + 32;
    let tol = Float::with_val(32, &ctx.target_abs_error >> 8u32);
    loop {
        let (ai, aid, err) = maclaurin(z, p, &tol);
        if err <= ctx.target_abs_error {
            return Ok((ai.with_prec(ctx.precision_bits), aid.with_prec(ctx.precision_bits)));
        }
        p = ctx.escalate(p, &err, "Airy series")?;
    }
}

/// `(Ai(x), Ai′(x))` for real `|x| ≤ 80`.
pub fn airy_ai(x: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    let (a, d) = airy_ai_complex(&BigComplex::real(x.clone()), ctx)?;
    Ok((a.re, d.re))
}

/// Double-precision `(Ai(x), Ai′(x))`, rounded from a 64-bit evaluation.
pub fn airy_ai_f64(x: f64) -> Result<(f64, f64)> {
    let ctx = EvalContext::new(64)?.with_target(1e-19);
    let (a, d) = airy_ai(&ctx.float(x), &ctx)?;
    Ok((a.to_f64(), d.to_f64()))
}
