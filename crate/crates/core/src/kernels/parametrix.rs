use rug::ops::Pow;
use rug::Float;

use crate::algebra::BigRational;

use super::maps::{f_eval, g_eval};
use crate::engine::airy_asymp_coeffs;
use crate::error::{Error, Result};
use crate::specfun::{airy_ai_complex, cmat_inv, cmat_max_diff, cmat_mul, BigComplex, CMat, EvalContext};

/// Arguments of the rays Σ₁..Σ₄ as multiples of π/4.
pub const RAYS: [i32; 4] = [0, 3, 4, -3];

/// Open sectors between the rays, counter-clockwise from the positive axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// `arg z ∈ (0, 3π/4)`
    I,
    /// `arg z ∈ (3π/4, π)`
    II,
    /// `arg z ∈ (−π, −3π/4)`
    III,
    /// `arg z ∈ (−3π/4, 0)`
    IV,
}

/// Side of an oriented ray: `Plus` lies to the left of the orientation.
/// Σ₁ points away from the origin, Σ₂, Σ₃, Σ₄ point towards it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaySide {
    Plus,
    Minus,
}

pub fn sector_of(z: &BigComplex, side: Option<RaySide>) -> Result<Sector> {
    let p = z.prec();
    let quarter = Float::with_val(p, BigComplex::pi(p) / 4u32);
    let theta = Float::with_val(p, z.arg() / &quarter);
    let tol = Float::with_val(32, Float::i_exp(1, -(p as i32) / 2));
    let on = |k: i32| Float::with_val(p, &theta - k).abs() < tol;
    let ray = if z.is_zero() || on(0) {
        Some(0)
    } else if on(3) {
        Some(1)
    } else if on(4) || on(-4) {
        Some(2)
    } else if on(-3) {
        Some(3)
    } else {
        None
    };
    let Some(ray) = ray else {
        return Ok(if theta > 3 {
            Sector::II
        } else if theta > 0 {
            Sector::I
        } else if theta > -3 {
            Sector::IV
        } else {
            Sector::III
        });
    };
    let side = side.ok_or_else(|| Error::domain(format!("z lies on Σ{}; request a side", ray + 1)))?;
    use RaySide::*;
    use Sector::*;
    Ok(match (ray, side) {
        (0, Plus) | (1, Plus) => I,
        (0, Minus) | (3, Minus) => IV,
        (1, Minus) | (2, Plus) => II,
        _ => III,
    })
}

/// Jump matrix on Σ_j (`j ∈ 1..=4`).
pub fn jump_matrix(j: usize, p: u32) -> CMat {
    let e = |a: f64| BigComplex::from_f64(p, a, 0.0);
    match j {
        1 => [[e(1.0), e(1.0)], [e(0.0), e(1.0)]],
        3 => [[e(0.0), e(1.0)], [e(-1.0), e(0.0)]],
        _ => [[e(1.0), e(0.0)], [e(1.0), e(1.0)]],
    }
}

/// Bits needed on top of the target so that `e^{(2/3)|z|^{3/2}}`-sized
/// cancellations leave relative accuracy.
fn growth_bits(z: &BigComplex) -> u32 {
    let r = z.magnitude().to_f64();
    (2.0 / 3.0 * r.powf(1.5) / std::f64::consts::LN_2).ceil() as u32 + 16
}

/// `Φ^Ai(z)` by its sectorwise formula in `Ai(z)`, `Ai(ωz)`, `Ai(ω²z)`, `ω = e^{2πi/3}`.
pub fn airy_parametrix(z: &BigComplex, side: Option<RaySide>, ctx: &EvalContext) -> Result<CMat> {
    let sector = sector_of(z, side)?;
    let bits = ctx.precision_bits + growth_bits(z);
    let inner = EvalContext::new(bits)?;
    let p = bits;
    let z = z.clone().with_prec(p);
    let two_pi_3 = Float::with_val(p, BigComplex::pi(p) * 2u32) / 3u32;
    let w = BigComplex::expi(&two_pi_3);
    let w2 = &w * &w;
    let ai = |c: &BigComplex| airy_ai_complex(&(c * &z), &inner);
    let i = BigComplex::i(p);
    let one = BigComplex::one(p);
    let m = |a: &BigComplex, b: &BigComplex| a * b;
    let neg = |a: BigComplex| -&a;
    let out: CMat = match sector {
        Sector::I | Sector::IV => {
            let (a0, d0) = ai(&one)?;
            let (c2, d2) = if sector == Sector::I {
                let (a2, d2) = ai(&w2)?;
                (neg(m(&w2, &a2)), m(&m(&i, &w), &d2))
            } else {
                let (a1, d1) = ai(&w)?;
                (m(&w, &a1), neg(m(&m(&i, &w2), &d1)))
            };
            [[a0, c2], [neg(m(&i, &d0)), d2]]
        }
        Sector::II => {
            let (a1, d1) = ai(&w)?;
            let (a2, d2) = ai(&w2)?;
            [[neg(m(&w, &a1)), neg(m(&w2, &a2))], [m(&m(&i, &w2), &d1), m(&m(&i, &w), &d2)]]
        }
        Sector::III => {
            let (a1, d1) = ai(&w)?;
            let (a2, d2) = ai(&w2)?;
            [[neg(m(&w2, &a2)), m(&w, &a1)], [m(&m(&i, &w), &d2), neg(m(&m(&i, &w2), &d1))]]
        }
    };
    let root = Float::with_val(p, BigComplex::pi(p) * 2u32).sqrt();
    Ok(out.map(|row| row.map(|e| e.scale(&root).with_prec(ctx.precision_bits))))
}

/// `max |Φ₊ − Φ₋ J_j|` at `z = r e^{iθ_j}` on Σ_j.
pub fn jump_residual(j: usize, r: f64, ctx: &EvalContext) -> Result<f64> {
    if !(1..=4).contains(&j) {
        return Err(Error::domain(format!("no ray Σ{j}")));
    }
    let p = ctx.precision_bits + 32;
    let theta = Float::with_val(p, BigComplex::pi(p) * RAYS[j - 1]) / 4u32;
    let z = BigComplex::expi(&theta).scale(&Float::with_val(p, r));
    let plus = airy_parametrix(&z, Some(RaySide::Plus), ctx)?;
    let minus = airy_parametrix(&z, Some(RaySide::Minus), ctx)?;
    Ok(cmat_max_diff(&plus, &cmat_mul(&minus, &jump_matrix(j, ctx.precision_bits))))
}

/// `max |M(z) − M_K(z)|` where `Φ^Ai e^{(2/3)z^{3/2}σ₃} = (2√2)^{−1} z^{−σ₃/4} [[1,i],[i,1]] M(z)`
/// and `M_K` keeps the terms `k ≤ K` of the asymptotic series.
pub fn asymptotic_residual(z: &BigComplex, k_max: usize, ctx: &EvalContext) -> Result<f64> {
    let p = ctx.precision_bits;
    let phi = airy_parametrix(z, None, ctx)?;
    let quarter = z.powf(&Float::with_val(p, 0.25));
    let quarter_inv = quarter.recip();
    let theta = z.powf(&Float::with_val(p, 1.5)).scale(&(Float::with_val(p, 2) / 3u32));
    let (et, et_inv) = (theta.exp(), (-&theta).exp());
    let i = BigComplex::i(p);
    let one = BigComplex::one(p);
    let sqrt2 = Float::with_val(p, 2).sqrt();
    let mi = (-&i).scale(&sqrt2);
    let left: CMat = [[quarter.scale(&sqrt2), &mi * &quarter_inv], [&mi * &quarter, quarter_inv.scale(&sqrt2)]];
    let scaled = cmat_mul(&left, &phi);
    let m: CMat = [[&scaled[0][0] * &et, &scaled[0][1] * &et_inv], [&scaled[1][0] * &et, &scaled[1][1] * &et_inv]];
    let uv = airy_asymp_coeffs(k_max);
    let z32 = z.powf(&Float::with_val(p, 1.5));
    let mut sums: [BigComplex; 4] = std::array::from_fn(|_| BigComplex::zero(p));
    let mut pw = one.clone();
    for c in uv.iter().take(k_max + 1) {
        let k = c.k as i32;
        let plus = Float::with_val(p, BigRational::from(&c.u + &c.v));
        let minus = Float::with_val(p, BigRational::from(&c.u - &c.v));
        let neg = Float::with_val(p, Float::with_val(p, -1.5).pow(k));
        let pos = Float::with_val(p, Float::with_val(p, 1.5).pow(k));
        sums[0] = &sums[0] + &pw.scale(&Float::with_val(p, &neg * &plus));
        sums[1] = &sums[1] + &pw.scale(&Float::with_val(p, &pos * &minus));
        sums[2] = &sums[2] + &pw.scale(&Float::with_val(p, &neg * &minus));
        sums[3] = &sums[3] + &pw.scale(&Float::with_val(p, &pos * &plus));
        pw = pw.div(&z32);
    }
    let trunc: CMat = [[sums[0].clone(), &i * &sums[1]], [-&(&i * &sums[2]), sums[3].clone()]];
    Ok(cmat_max_diff(&m, &trunc))
}

/// `J_R(z) = P(z) N(z)^{−1}` on the circle around `z = 1`, where
/// `P = E Φ^Ai(ν^{2/3} f) e^{ν(g ∓ πi/2)σ₃} σ₃` and
/// `E = N σ₃ 2^{−1/2}[[1,−i],[−i,1]] f^{σ₃/4} ν^{σ₃/6}`.
pub fn local_jump(z: &BigComplex, nu: f64, ctx: &EvalContext) -> Result<CMat> {
    if z.im.is_zero() {
        return Err(Error::domain("local jump is evaluated off the real axis"));
    }
    let p = ctx.precision_bits;
    let z = z.clone().with_prec(p);
    let nu_f = Float::with_val(p, nu);
    let one = BigComplex::one(p);
    let i = BigComplex::i(p);
    let zero = BigComplex::zero(p);
    let r2 = Float::with_val(p, 2).sqrt().recip();
    let diag = |a: BigComplex, b: BigComplex| -> CMat { [[a, zero.clone()], [zero.clone(), b]] };
    let s = &one - &z;
    let q = Float::with_val(p, 0.25);
    let sq = s.powf(&q);
    let quarter_pi = Float::with_val(p, BigComplex::pi(p) / 4u32);
    let n = cmat_mul(
        &cmat_mul(&diag(sq.recip(), sq.clone()), &[[one.scale(&r2), (-&one).scale(&r2)], [one.scale(&r2), one.scale(&r2)]]),
        &diag(BigComplex::expi(&Float::with_val(p, -&quarter_pi)), BigComplex::expi(&quarter_pi)),
    );
    let f = f_eval(&z, ctx)?;
    let fq = f.powf(&q);
    let nu6 = BigComplex::real(Float::with_val(p, nu_f.clone().ln() / 6u32).exp());
    let sigma3 = diag(one.clone(), -&one);
    let e = cmat_mul(
        &cmat_mul(&cmat_mul(&n, &sigma3), &[[one.scale(&r2), (-&i).scale(&r2)], [(-&i).scale(&r2), one.scale(&r2)]]),
        &diag(&fq * &nu6, (&fq * &nu6).recip()),
    );
    let nu23 = Float::with_val(p, nu_f.clone().square()).cbrt();
    let zeta = f.scale(&nu23);
    let phi = airy_parametrix(&zeta, None, ctx)?;
    let g = g_eval(&z, None, ctx)?;
    let half_pi = Float::with_val(p, BigComplex::pi(p) / 2u32);
    let shift = if z.im > 0 { -half_pi } else { half_pi };
    let gg = BigComplex::new(g.re, g.im + shift).scale(&nu_f);
    let tail = cmat_mul(&diag(gg.exp(), (-&gg).exp()), &sigma3);
    let pm = cmat_mul(&cmat_mul(&e, &phi), &tail);
    Ok(cmat_mul(&pm, &cmat_inv(&n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::cmat_det;

    #[test]
    fn unimodular_with_small_jumps() {
        let ctx = EvalContext::new(128).unwrap();
        for (a, b) in [(1.0, 1.0), (-2.0, 0.5), (-1.0, -1.5), (0.5, -0.2)] {
            let phi = airy_parametrix(&BigComplex::from_f64(128, a, b), None, &ctx).unwrap();
            assert!((&cmat_det(&phi) - &BigComplex::one(128)).abs() < 1e-30);
        }
        for j in 1..=4 {
            assert!(jump_residual(j, 1.7, &ctx).unwrap() < 1e-30, "Σ{j}");
        }
        assert!(airy_parametrix(&BigComplex::from_f64(128, -3.0, 0.0), None, &ctx).is_err());
    }
}
