//! Kernel evaluation and numerical checks of the expansion.
//!
//! Bessel, Airy and transformed kernels with closed-form diagonals, the
//! symbolic corrections K_j at numeric points, the maps g and f, the Airy
//! parametrix, and residual scans of the truncated expansion.

mod maps;
mod parametrix;
mod scan;

pub use maps::{f_eval, g_eval, CutSide};
pub use parametrix::{
    airy_parametrix, asymptotic_residual, jump_matrix, jump_residual, local_jump, sector_of, RaySide, Sector, RAYS,
};
pub use scan::{fit_slope, residual_scan, Grid, ResidualGrid, ResidualRow, DISC_RADIUS};

use rug::ops::Pow;
use rug::Float;

use crate::algebra::BigRational;
use crate::engine::KernelExpansion;
use crate::error::{Error, Result};
use crate::specfun::{airy_ai, airy_ai_f64, bessel_j, bessel_j_f64, EvalContext};

/// `h_ν = 2^{−1/3} ν^{−2/3}` together with ν.
#[derive(Clone, Debug)]
pub struct ScalingParams {
    pub nu: Float,
    pub h: Float,
}

impl ScalingParams {
    pub fn new(nu: f64, ctx: &EvalContext) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(Error::domain(format!("ν = {nu} must be positive")));
        }
        let nu = ctx.float(nu);
        let h = Float::with_val(ctx.precision_bits, nu.clone().square() * 2u32).cbrt().recip();
        Ok(ScalingParams { nu, h })
    }

    /// `φ_ν(t) = ν²(1 − h t)²`.
    pub fn phi(&self, t: &Float) -> Float {
        let s = self.sqrt_phi(t);
        s.square()
    }

    /// `√φ_ν(t) = ν(1 − h t)`, positive inside the chart.
    pub fn sqrt_phi(&self, t: &Float) -> Float {
        let one_minus = Float::with_val(self.h.prec(), 1u32 - Float::with_val(self.h.prec(), &self.h * t));
        one_minus * &self.nu
    }
}

/// Taylor data of a first-order system `φ′ = aψ`, `ψ′ = −bφ` at the midpoint.
struct Ode {
    a: [Float; 3],
    b: [Float; 3],
}

/// `K(c−u, c+u)` for `K = s·(φ(x)ψ(y) − ψ(x)φ(y))/(x − y)`, through `O(u²)`.
fn band_value(s: f64, u: &Float, phi: &Float, psi: &Float, ode: &Ode) -> Float {
    let p = phi.prec();
    let f = |v: Float| Float::with_val(p, v);
    let [a, a1, a2] = &ode.a;
    let [b, b1, b2] = &ode.b;
    let ab = f(Float::with_val(p, a * b));
    let ab1 = f(Float::with_val(p, a1 * b) + Float::with_val(p, a * b1));
    let phi1 = f(Float::with_val(p, a * psi));
    let psi1 = f(-Float::with_val(p, b * phi));
    let phi2 = f(Float::with_val(p, a1 * psi) - Float::with_val(p, &ab * phi));
    let psi2 = f(-Float::with_val(p, b1 * phi) - Float::with_val(p, &ab * psi));
    let phi3 = f(Float::with_val(p, a2 * psi)
        - Float::with_val(p, a1 * b) * phi
        - Float::with_val(p, &ab1 * phi)
        - Float::with_val(p, a * &ab) * psi);
    let psi3 = f(-Float::with_val(p, b2 * phi) - Float::with_val(p, a * b1) * psi - Float::with_val(p, &ab1 * psi)
        + Float::with_val(p, &ab * b) * phi);
    let n1 = f(Float::with_val(p, phi * &psi1) - Float::with_val(p, &phi1 * psi));
    let n3 = f((Float::with_val(p, phi * &psi3) - Float::with_val(p, &phi3 * psi)) / 3u32 + Float::with_val(p, &phi2 * &psi1)
        - Float::with_val(p, &phi1 * &psi2));
    let u2 = Float::with_val(p, u * u);
    f(-(n1 * s) - n3 * u2 * (s / 2.0))
}

/// Half-width of the diagonal band: `2^{−p/4}·L`.
pub fn band_threshold(ctx: &EvalContext, scale: f64) -> Float {
    Float::with_val(64, Float::i_exp(1, -(ctx.precision_bits as i32) / 4)) * scale.max(1.0)
}

/// Band half-width used by the double-precision kernels.
pub const BAND_F64: f64 = 1e-3;

fn airy_ode(c: &Float) -> Ode {
    let p = c.prec();
    let z = || Float::new(p);
    Ode { a: [Float::with_val(p, 1), z(), z()], b: [Float::with_val(p, -c), Float::with_val(p, -1), z()] }
}

fn bessel_ode(c: &Float, nu: &Float) -> Ode {
    let p = c.prec();
    let nu2 = Float::with_val(p, nu * nu);
    let inv = Float::with_val(p, c.clone().recip());
    let inv2 = Float::with_val(p, &inv * &inv);
    let inv3 = Float::with_val(p, &inv2 * &inv);
    Ode {
        a: [Float::with_val(p, &inv / 2u32), -Float::with_val(p, &inv2 / 2u32), inv3.clone()],
        b: [
            Float::with_val(p, (1u32 - Float::with_val(p, &nu2 * &inv)) / 2u32),
            Float::with_val(p, &nu2 * &inv2) / 2u32,
            -(nu2 * inv3),
        ],
    }
}

fn quotient(s: f64, x: &Float, y: &Float, px: &Float, qx: &Float, py: &Float, qy: &Float) -> Float {
    let p = px.prec();
    let num = Float::with_val(p, px * qy) - Float::with_val(p, qx * py);
    num / Float::with_val(p, x - y) * s
}

/// `K^Ai(x, y) = (Ai(x)Ai′(y) − Ai′(x)Ai(y))/(x − y)`, with `Ai′(x)² − x Ai(x)²`
/// plus a second-order correction on the diagonal band.
pub fn airy_kernel(x: &Float, y: &Float, ctx: &EvalContext) -> Result<Float> {
    let p = ctx.precision_bits;
    let u = Float::with_val(p, y - x) / 2u32;
    if u.clone().abs() < band_threshold(ctx, 1.0) {
        let c = Float::with_val(p, x + y) / 2u32;
        let (a, d) = airy_ai(&c, ctx)?;
        return Ok(band_value(1.0, &u, &a, &d, &airy_ode(&c)));
    }
    let (ax, dx) = airy_ai(x, ctx)?;
    let (ay, dy) = airy_ai(y, ctx)?;
    Ok(quotient(1.0, x, y, &ax, &dx, &ay, &dy))
}

/// `φ(x) = J_ν(√x)`, `ψ(x) = √x J_ν′(√x)`.
fn bessel_pair(x: &Float, nu: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    let r = Float::with_val(ctx.precision_bits, x.clone().sqrt());
    let (j, d) = bessel_j(nu, &r, ctx)?;
    Ok((j, d * r))
}

/// `K^Bes_ν(x, y) = (J_ν(√x)√y J_ν′(√y) − √x J_ν′(√x) J_ν(√y)) / (2(x − y))`, with
/// `¼[(1 − ν²/x)J_ν² + J_ν′²]` plus a second-order correction on the diagonal band.
pub fn bessel_kernel(x: &Float, y: &Float, nu: &Float, ctx: &EvalContext) -> Result<Float> {
    if !(*x > 0) || !(*y > 0) {
        return Err(Error::domain("Bessel kernel needs positive arguments"));
    }
    let p = ctx.precision_bits;
    let u = Float::with_val(p, y - x) / 2u32;
    let scale = x.to_f64().max(y.to_f64()).powf(2.0 / 3.0);
    if u.clone().abs() < band_threshold(ctx, scale) {
        let c = Float::with_val(p, x + y) / 2u32;
        let (phi, psi) = bessel_pair(&c, nu, ctx)?;
        return Ok(band_value(0.5, &u, &phi, &psi, &bessel_ode(&c, nu)));
    }
    let (px, qx) = bessel_pair(x, nu, ctx)?;
    let (py, qy) = bessel_pair(y, nu, ctx)?;
    Ok(quotient(0.5, x, y, &px, &qx, &py, &qy))
}

/// `K̂(x, y) = 2ν²h √((1 − hx)(1 − hy)) · K^Bes_ν(φ_ν(x), φ_ν(y))`.
pub fn transformed_kernel(x: &Float, y: &Float, params: &ScalingParams, ctx: &EvalContext) -> Result<Float> {
    let p = ctx.precision_bits;
    let one = |t: &Float| Float::with_val(p, 1u32 - Float::with_val(p, &params.h * t));
    let (ox, oy) = (one(x), one(y));
    if !(ox > 0) || !(oy > 0) {
        return Err(Error::domain("transformed kernel needs x, y < 1/h"));
    }
    let k = bessel_kernel(&params.phi(x), &params.phi(y), &params.nu, ctx)?;
    let pre = Float::with_val(p, &params.nu * &params.nu) * &params.h * 2u32 * Float::with_val(p, ox * oy).sqrt();
    Ok(pre * k)
}

/// `K_j(x, y) = Σ p_{j,κλ}(x, y) Ai^{(κ)}(x) Ai^{(λ)}(y)` from precomputed Airy values.
pub fn kernel_correction_from_values(
    k: &KernelExpansion,
    j: usize,
    x: &Float,
    y: &Float,
    ai_x: [&Float; 2],
    ai_y: [&Float; 2],
) -> Float {
    let p = x.prec();
    let eval = |poly: &crate::algebra::BivarPoly<BigRational>| {
        poly.eval_with(
            |a, b, c: &BigRational| Float::with_val(p, c) * Float::with_val(p, x.pow(a)) * Float::with_val(p, y.pow(b)),
            |s, t| s + t,
            Float::new(p),
        )
    };
    let mut acc = Float::new(p);
    for kappa in 0..2 {
        for lambda in 0..2 {
            acc += eval(k.p(j, kappa, lambda)) * ai_x[kappa] * ai_y[lambda];
        }
    }
    acc
}

/// `K_j(x, y)` for `1 ≤ j ≤ k.order`.
pub fn kernel_correction_eval(k: &KernelExpansion, j: usize, x: &Float, y: &Float, ctx: &EvalContext) -> Result<Float> {
    if j == 0 || j > k.order {
        return Err(Error::domain(format!("K_{j} not in an expansion of order {}", k.order)));
    }
    let (ax, dx) = airy_ai(x, ctx)?;
    let (ay, dy) = airy_ai(y, ctx)?;
    Ok(kernel_correction_from_values(k, j, x, y, [&ax, &dx], [&ay, &dy]))
}

/// Double-precision Airy kernel; the band uses a 64-bit Taylor evaluation.
pub fn airy_kernel_f64(x: f64, y: f64) -> Result<f64> {
    if x == y {
        let (a, d) = airy_ai_f64(x)?;
        return Ok(d * d - x * a * a);
    }
    if (x - y).abs() < 2.0 * BAND_F64 {
        let ctx = EvalContext::new(64)?.with_target(1e-19);
        let c = ctx.float((x + y) / 2.0);
        let (a, d) = airy_ai(&c, &ctx)?;
        return Ok(band_value(1.0, &ctx.float((y - x) / 2.0), &a, &d, &airy_ode(&c)).to_f64());
    }
    let (ax, dx) = airy_ai_f64(x)?;
    let (ay, dy) = airy_ai_f64(y)?;
    Ok((ax * dy - dx * ay) / (x - y))
}

/// Double-precision Bessel kernel with the same diagonal treatment.
pub fn bessel_kernel_f64(x: f64, y: f64, nu: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::domain("Bessel kernel needs positive arguments"));
    }
    let pair = |t: f64| -> Result<(f64, f64)> {
        let r = t.sqrt();
        let (j, d) = bessel_j_f64(nu, r)?;
        Ok((j, r * d))
    };
    if x == y {
        let (j, d) = bessel_j_f64(nu, x.sqrt())?;
        return Ok(0.25 * ((1.0 - nu * nu / x) * j * j + d * d));
    }
    let scale = x.max(y).powf(2.0 / 3.0).max(1.0);
    if (x - y).abs() < 2.0 * BAND_F64 * scale {
        let ctx = EvalContext::new(64)?.with_target(1e-19);
        let c = ctx.float((x + y) / 2.0);
        let (phi, psi) = bessel_pair(&c, &ctx.float(nu), &ctx)?;
        return Ok(band_value(0.5, &ctx.float((y - x) / 2.0), &phi, &psi, &bessel_ode(&c, &ctx.float(nu))).to_f64());
    }
    let (px, qx) = pair(x)?;
    let (py, qy) = pair(y)?;
    Ok(0.5 * (px * qy - qx * py) / (x - y))
}
