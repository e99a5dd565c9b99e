use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::{airy_kernel, kernel_correction_eval, transformed_kernel, ScalingParams};
use crate::engine::KernelExpansion;
use crate::error::{Error, Result};
use crate::specfun::EvalContext;

/// Radius ε of the disc around z = 1 assumed by the grid-bound check.
pub const DISC_RADIUS: f64 = 0.9;

/// Tensor grid of evaluation points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

impl Grid {
    /// `n` equispaced points per axis on `[a, b]²`, endpoints included.
    pub fn square(a: f64, b: f64, n: usize) -> Self {
        let xs = linspace(a, b, n);
        Grid { ys: xs.clone(), xs }
    }

    /// Parses `"x0:x1:n,y0:y1:n"`.
    pub fn parse(s: &str) -> Result<Self> {
        let axis = |part: &str| -> Result<Vec<f64>> {
            let f: Vec<&str> = part.split(':').collect();
            let bad = || Error::Parse(format!("grid axis `{part}` is not a:b:n"));
            if f.len() != 3 {
                return Err(bad());
            }
            let a: f64 = f[0].trim().parse().map_err(|_| bad())?;
            let b: f64 = f[1].trim().parse().map_err(|_| bad())?;
            let n: usize = f[2].trim().parse().map_err(|_| bad())?;
            if n == 0 || !(a <= b) {
                return Err(bad());
            }
            Ok(linspace(a, b, n))
        };
        let (x, y) = s.split_once(',').ok_or_else(|| Error::Parse(format!("grid `{s}` needs two axes")))?;
        Ok(Grid { xs: axis(x)?, ys: axis(y)? })
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.xs.iter().flat_map(|&x| self.ys.iter().map(move |&y| (x, y))).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualRow {
    pub nu: f64,
    pub h: f64,
    pub m: usize,
    /// `max_grid e^{x+y} |K̂ − K^Ai − Σ_{j≤m} K_j h^j|`.
    pub max_residual: f64,
    pub error_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualGrid {
    pub points: Vec<(f64, f64)>,
    pub rows: Vec<ResidualRow>,
    /// `(m, slope of log ρ_m against log h)`.
    pub slopes: Vec<(usize, f64)>,
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Weighted residuals of the truncated expansion for orders `0..=m` and their
/// decay rates in h.
pub fn residual_scan(nus: &[f64], grid: &Grid, m: usize, k: &KernelExpansion, ctx: &EvalContext) -> Result<ResidualGrid> {
    if nus.len() < 3 {
        return Err(Error::domain("residual scan needs at least three values of ν"));
    }
    if m > k.order {
        return Err(Error::domain(format!("order {m} exceeds the expansion order {}", k.order)));
    }
    if nus.iter().any(|&n| !(n > 0.0 && n <= 1200.0)) {
        return Err(Error::domain("ν outside (0, 1200]"));
    }
    let points = grid.points();
    let top = points.iter().map(|&(x, y)| x.max(y)).fold(f64::MIN, f64::max);
    if top > 6.0 {
        return Err(Error::domain(format!("grid reaches {top}, above 6")));
    }
    let nu_min = nus.iter().cloned().fold(f64::MAX, f64::min);
    let h_max = ScalingParams::new(nu_min, ctx)?.h.to_f64();
    let reach = (1.0 - (1.0 - DISC_RADIUS).sqrt()) / h_max;
    if top >= reach {
        return Err(Error::domain(format!("grid bound {top} not below (1 − √(1 − ε))/h = {reach} at ν = {nu_min}")));
    }
    let jobs: Vec<(usize, usize)> = (0..nus.len()).flat_map(|a| (0..points.len()).map(move |b| (a, b))).collect();
    let per_point: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(a, b)| -> Result<Vec<f64>> {
            let params = ScalingParams::new(nus[a], ctx)?;
            let (xf, yf) = points[b];
            let (x, y) = (ctx.float(xf), ctx.float(yf));
            let p = ctx.precision_bits;
            let mut r = Float::with_val(p, transformed_kernel(&x, &y, &params, ctx)? - airy_kernel(&x, &y, ctx)?);
            let weight = Float::with_val(p, xf + yf).exp();
            let mut out = vec![Float::with_val(p, &r * &weight).abs().to_f64()];
            let mut hj = params.h.clone();
            for j in 1..=m {
                r -= kernel_correction_eval(k, j, &x, &y, ctx)? * &hj;
                hj *= &params.h;
                out.push(Float::with_val(p, &r * &weight).abs().to_f64());
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let target = ctx.target_abs_error.to_f64();
    let wmax = points.iter().map(|&(x, y)| (x + y).exp()).fold(0.0, f64::max);
    for (a, &nu) in nus.iter().enumerate() {
        let h = ScalingParams::new(nu, ctx)?.h.to_f64();
        let error_bound = 256.0 * nu * target * wmax;
        for order in 0..=m {
            let max_residual = (0..points.len()).map(|b| per_point[a * points.len() + b][order]).fold(0.0, f64::max);
            if max_residual < 10.0 * error_bound {
                return Err(Error::Precision(format!(
                    "residual {max_residual:e} at ν = {nu}, m = {order} is within 10× the error bound {error_bound:e}"
                )));
            }
            rows.push(ResidualRow { nu, h, m: order, max_residual, error_bound });
        }
    }
    let slopes = (0..=m)
        .map(|order| {
            let sel: Vec<&ResidualRow> = rows.iter().filter(|r| r.m == order).collect();
            let lx: Vec<f64> = sel.iter().map(|r| r.h.ln()).collect();
            let ly: Vec<f64> = sel.iter().map(|r| r.max_residual.ln()).collect();
            (order, fit_slope(&lx, &ly))
        })
        .collect();
    Ok(ResidualGrid { points, rows, slopes })
}
