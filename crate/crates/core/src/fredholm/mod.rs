//! Nyström discretisation of Fredholm determinants `det(I − K)` on an interval,
//! with the two determinants of interest: the Tracy–Widom distribution
//! `F(t) = det(I − K^Ai)|_{L²(t,∞)}` and the hard-edge gap probability
//! `E₂^hard(s; ν) = det(I − K^Bes_ν)|_{L²(0,s)}`.
//!
//! Everything here runs in double precision; node values of Ai and J_ν come
//! from [`crate::specfun`] and are rounded once.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::fit_slope;
use crate::specfun::{airy_ai_f64, bessel_j_f64};

/// Gauss–Legendre nodes and weights on (−1, 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub n: usize,
}

impl QuadratureRule {
    /// Nodes and weights affinely mapped to `(a, b)`.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
        (self.nodes.iter().map(|x| c + r * x).collect(), self.weights.iter().map(|w| r * w).collect())
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (x, w) = self.mapped(a, b);
        x.iter().zip(&w).map(|(x, w)| w * f(*x)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeterminantResult {
    pub value: f64,
    pub n_nodes: usize,
    /// Integration interval actually used.
    pub truncation: (f64, f64),
    /// `|det_n − det_{2n}|`.
    pub est_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionReport {
    pub t: f64,
    pub nus: Vec<f64>,
    pub h: Vec<f64>,
    pub e2: Vec<f64>,
    pub f: f64,
    /// `|E₂^hard(φ_ν(t); ν) − F(t)|` per ν.
    pub errors: Vec<f64>,
    /// Decay rate of the errors in `h`; present only for three or more ν.
    pub slope: Option<f64>,
}

/// Default node count for [`tracy_widom_F`] and [`e2_hard`].
pub const DEFAULT_NODES: usize = 40;
/// Length of the window kept beyond the soft edge.
pub const TAIL_WINDOW: f64 = 25.0;

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Legendre rule of order `n`, 2 ≤ n ≤ 400, by Newton's method from
/// Chebyshev initial guesses.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(2..=400).contains(&n) {
        return Err(Error::domain(format!("Gauss–Legendre order {n} outside [2, 400]")));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Precision(format!("Newton iteration for Legendre root {i} of order {n} did not converge")));
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights, n })
}

fn det_from_entries(n: usize, entry: impl Fn(usize, usize) -> f64 + Sync) -> Result<f64> {
    let vals: Vec<f64> = (0..n * n).into_par_iter().map(|k| entry(k % n, k / n)).collect();
    if let Some(k) = vals.iter().position(|v| !v.is_finite()) {
        return Err(Error::domain(format!("non-finite kernel value at node pair ({}, {})", k % n, k / n)));
    }
    let m = DMatrix::from_column_slice(n, n, &vals);
    Ok(m.lu().determinant())
}

/// Gap probabilities must lie in [0, 1]; anything else is an alarm.
fn checked(value: f64, n: usize, truncation: (f64, f64), est_error: f64) -> Result<DeterminantResult> {
    let slack = 1e-12 + est_error;
    if !(value >= -slack && value <= 1.0 + slack) {
        return Err(Error::alarm(format!("determinant {value} on {truncation:?} leaves [0, 1]")));
    }
    Ok(DeterminantResult { value, n_nodes: n, truncation, est_error })
}

/// `det(δ_ij − √w_i K(x_i, x_j) √w_j)` on `n` Gauss–Legendre nodes in `(a, b)`,
/// with the error estimated against `2n` nodes.
pub fn nystrom_det<K>(kernel: K, a: f64, b: f64, n: usize) -> Result<DeterminantResult>
where
    K: Fn(f64, f64) -> Result<f64> + Sync,
{
    let once = |n: usize| -> Result<f64> {
        let (x, w) = gauss_legendre(n)?.mapped(a, b);
        let s: Vec<f64> = w.iter().map(|w| w.sqrt()).collect();
        let kv: Vec<f64> =
            (0..n * n).into_par_iter().map(|k| kernel(x[k % n], x[k / n])).collect::<Result<_>>()?;
        det_from_entries(n, |i, j| (i == j) as u8 as f64 - s[i] * kv[i + n * j] * s[j])
    };
    let (d1, d2) = (once(n)?, once(2 * n)?);
    Ok(DeterminantResult { value: d1, n_nodes: n, truncation: (a, b), est_error: (d1 - d2).abs() })
}

/// Determinant of an integrable kernel `c (f(x)g(y) − g(x)f(y))/(x − y)` with
/// the diagonal supplied separately; node values are computed once per node.
fn integrable_det<V>(values: V, c: f64, a: f64, b: f64, n: usize) -> Result<DeterminantResult>
where
    V: Fn(f64) -> Result<(f64, f64, f64)> + Sync,
{
    let once = |n: usize| -> Result<f64> {
        let (x, w) = gauss_legendre(n)?.mapped(a, b);
        let v: Vec<(f64, f64, f64)> = x.par_iter().map(|&x| values(x)).collect::<Result<_>>()?;
        let s: Vec<f64> = w.iter().map(|w| w.sqrt()).collect();
        det_from_entries(n, |i, j| {
            let k = if i == j { v[i].2 } else { c * (v[i].0 * v[j].1 - v[i].1 * v[j].0) / (x[i] - x[j]) };
            (i == j) as u8 as f64 - s[i] * k * s[j]
        })
    };
    let (d1, d2) = (once(n)?, once(2 * n)?);
    checked(d1, n, (a, b), (d1 - d2).abs())
}

fn airy_values(x: f64) -> Result<(f64, f64, f64)> {
    let (a, d) = airy_ai_f64(x)?;
    Ok((a, d, d * d - x * a * a))
}

/// Tracy–Widom distribution `F(t)`, −10 ≤ t ≤ 10, on [`DEFAULT_NODES`] nodes.
#[allow(non_snake_case)]
pub fn tracy_widom_F(t: f64) -> Result<DeterminantResult> {
    tracy_widom_F_with(t, DEFAULT_NODES, None)
}

/// [`tracy_widom_F`] with explicit node count and truncation point; the default
/// truncation is `max(t + 25, 12)`.
#[allow(non_snake_case)]
pub fn tracy_widom_F_with(t: f64, n: usize, upper: Option<f64>) -> Result<DeterminantResult> {
    if !(-10.0..=10.0).contains(&t) {
        return Err(Error::domain(format!("t = {t} outside [−10, 10]")));
    }
    let top = upper.unwrap_or((t + TAIL_WINDOW).max(12.0));
    if top <= t || top > 80.0 {
        return Err(Error::domain(format!("truncation {top} must lie in (t, 80]")));
    }
    integrable_det(airy_values, 1.0, t, top, n)
}

fn bessel_values(nu: f64) -> impl Fn(f64) -> Result<(f64, f64, f64)> + Sync {
    move |x: f64| {
        let r = x.sqrt();
        let (j, dj) = bessel_j_f64(nu, r)?;
        Ok((j, r * dj, ((1.0 - nu * nu / x) * j * j + dj * dj) / 4.0))
    }
}

/// Soft-edge coordinate `t` with `φ_ν(t) = s`.
pub fn soft_coordinate(s: f64, nu: f64) -> f64 {
    let h = (2.0 * nu * nu).powf(-1.0 / 3.0);
    (1.0 - s.sqrt() / nu) / h
}

/// `φ_ν(t) = ν²(1 − h_ν t)²`.
pub fn phi(t: f64, nu: f64) -> f64 {
    let h = (2.0 * nu * nu).powf(-1.0 / 3.0);
    nu * nu * (1.0 - h * t).powi(2)
}

/// Hard-edge gap probability `E₂^hard(s; ν)`, ν ≤ 400.
///
/// Mirrors the soft-edge truncation: the part of `(0, s)` lying more than 25
/// units beyond the edge in the variable `t` is dropped.
pub fn e2_hard(s: f64, nu: f64) -> Result<DeterminantResult> {
    e2_hard_with(s, nu, DEFAULT_NODES)
}

pub fn e2_hard_with(s: f64, nu: f64, n: usize) -> Result<DeterminantResult> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s = {s} must be positive")));
    }
    if !(nu > -1.0 && nu <= 400.0) {
        return Err(Error::domain(format!("ν = {nu} outside (−1, 400]")));
    }
    let h = (2.0 * nu * nu).powf(-1.0 / 3.0);
    let lower = soft_coordinate(s, nu) + TAIL_WINDOW;
    let a = if nu >= 1.0 && lower < 1.0 / h { phi(lower, nu) } else { 0.0 };
    integrable_det(bessel_values(nu), 0.5, a, s, n)
}

/// `|E₂^hard(φ_ν(t); ν) − F(t)|` across ν and its decay rate in `h_ν`.
pub fn transition_study(t: f64, nus: &[f64]) -> Result<TransitionReport> {
    if nus.is_empty() {
        return Err(Error::domain("transition study needs at least one ν"));
    }
    if nus.iter().any(|&nu| !(1.0..=400.0).contains(&nu)) {
        return Err(Error::domain("ν outside [1, 400]"));
    }
    let f = tracy_widom_F(t)?.value;
    let h: Vec<f64> = nus.iter().map(|nu| (2.0 * nu * nu).powf(-1.0 / 3.0)).collect();
    if h.iter().any(|h| t * h >= 1.0) {
        return Err(Error::domain(format!("t = {t} not below 1/h for every ν")));
    }
    let e2: Vec<f64> = nus.par_iter().map(|&nu| e2_hard(phi(t, nu), nu).map(|r| r.value)).collect::<Result<_>>()?;
    let errors: Vec<f64> = e2.iter().map(|e| (e - f).abs()).collect();
    let slope = (nus.len() >= 3).then(|| {
        fit_slope(&h.iter().map(|h| h.ln()).collect::<Vec<_>>(), &errors.iter().map(|e| e.ln()).collect::<Vec<_>>())
    });
    Ok(TransitionReport { t, nus: nus.to_vec(), h, e2, f, errors, slope })
}
