use hardsoft::algebra::{AlgNum, Mat2Series};
use hardsoft::engine::{f_series, j_matrix_series};
use hardsoft::kernels::{asymptotic_residual, f_eval, fit_slope, local_jump};
use hardsoft::specfun::{BigComplex, EvalContext};

type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Evaluates a Laurent matrix series in `z − 1` at `t`.
fn eval_series(m: &Mat2Series<AlgNum>, t: C) -> [[C; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let s = &m.e[i][j];
            if s.is_zero() {
                return (0.0, 0.0);
            }
            let mut acc = (0.0, 0.0);
            for (k, c) in s.terms() {
                let mut pw = (1.0, 0.0);
                let inv = {
                    let n = t.0 * t.0 + t.1 * t.1;
                    (t.0 / n, -t.1 / n)
                };
                for _ in 0..k.unsigned_abs() {
                    pw = cmul(pw, if k < 0 { inv } else { t });
                }
                let v = cmul(c.to_c64(), pw);
                acc = (acc.0 + v.0, acc.1 + v.1);
            }
            acc
        })
    })
}

#[test]
fn local_jump_expands_in_derived_coefficients() {
    let ctx = EvalContext::new(192).unwrap();
    let nu = 1000.0;
    let h: f64 = (2.0 * nu * nu as f64).powf(-1.0 / 3.0);
    let j1 = j_matrix_series(1, 40).unwrap();
    let j2 = j_matrix_series(2, 40).unwrap();
    for theta in [0.6f64, 1.9, -1.2, -2.5] {
        let t = (0.4 * theta.cos(), 0.4 * theta.sin());
        let z = BigComplex::from_f64(192, 1.0 + t.0, t.1);
        let jr = local_jump(&z, nu, &ctx).unwrap();
        let (a, b) = (eval_series(&j1, t), eval_series(&j2, t));
        let mut worst: f64 = 0.0;
        let mut flipped: f64 = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                let e = jr[i][k].to_c64();
                let id = if i == k { 1.0 } else { 0.0 };
                let lhs = ((e.0 - id - b[i][k].0 * h.powi(3)) / h.powf(1.5), (e.1 - b[i][k].1 * h.powi(3)) / h.powf(1.5));
                worst = worst.max(((lhs.0 - a[i][k].0).powi(2) + (lhs.1 - a[i][k].1).powi(2)).sqrt());
                if (i, k) == (0, 1) {
                    flipped = ((lhs.0 + a[i][k].0).powi(2) + (lhs.1 + a[i][k].1).powi(2)).sqrt();
                }
            }
        }
        println!("theta {theta}: |J_R − I − J2 h³|/h^1.5 − J1 = {worst:e}, with flipped (1,2) sign {flipped:e}");
        assert!(worst < 1e-3);
        assert!(flipped > 0.1);
    }
}

#[test]
fn parametrix_asymptotic_residual_decays_like_z_minus_nine_halves() {
    let ctx = EvalContext::new(128).unwrap();
    for arg in [0.4f64, 2.6, -1.7, -2.8] {
        let rs = [10.0f64, 20.0, 40.0];
        let res: Vec<f64> = rs
            .iter()
            .map(|r| asymptotic_residual(&BigComplex::from_f64(128, r * arg.cos(), r * arg.sin()), 2, &ctx).unwrap())
            .collect();
        let lx: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
        let ly: Vec<f64> = res.iter().map(|r| r.ln()).collect();
        let slope = fit_slope(&lx, &ly);
        println!("arg {arg}: residuals {res:?} slope {slope}");
        assert!((slope + 4.5).abs() < 0.5);
    }
}

#[test]
fn f_series_matches_f_eval_to_fourth_order() {
    let ctx = EvalContext::new(128).unwrap();
    let fs = f_series(3).unwrap();
    let c = -(4f64).cbrt().recip();
    let mut errs = vec![];
    let ds = [0.08, 0.04, 0.02, 0.01];
    for d in ds {
        let z = BigComplex::from_f64(128, 1.0 + d, 0.0);
        let exact = f_eval(&z, &ctx).unwrap().to_c64().0;
        let r: f64 = (0..3).map(|k| fs.r.coeff(k).unwrap().to_f64() * d.powi(k as i32)).sum();
        errs.push((exact - c * d * r).abs());
    }
    let slope = fit_slope(&ds.map(f64::ln), &errs.iter().map(|e| e.ln()).collect::<Vec<_>>());
    assert!((slope - 4.0).abs() < 0.1, "slope {slope}");
}

use hardsoft::engine::assemble_kernel_expansion;
use hardsoft::kernels::{
    airy_kernel, airy_kernel_f64, bessel_kernel_f64, kernel_correction_eval, residual_scan, transformed_kernel, Grid,
    ScalingParams,
};
use hardsoft::specfun::{airy_ai, bessel_j};
use rug::Float;

#[test]
fn airy_satisfies_its_differential_equation() {
    let ctx = EvalContext::new(256).unwrap();
    let eps = Float::with_val(256, 1e-20);
    for x in [-4.5, -1.0, 0.3, 2.0, 7.5] {
        let x = Float::with_val(256, x);
        let (_, dp) = airy_ai(&Float::with_val(256, &x + &eps), &ctx).unwrap();
        let (_, dm) = airy_ai(&Float::with_val(256, &x - &eps), &ctx).unwrap();
        let (a, _) = airy_ai(&x, &ctx).unwrap();
        let second = Float::with_val(256, dp - dm) / Float::with_val(256, &eps * 2u32);
        let r = Float::with_val(256, second - Float::with_val(256, &x * &a)).abs().to_f64();
        assert!(r < 1e-30, "x = {x}: {r:e}");
    }
}

#[test]
fn bessel_is_stable_under_precision_doubling() {
    let ctx = EvalContext::new(256).unwrap();
    let wide = ctx.doubled();
    for (nu, t) in [(100.0, 100.0), (400.0, 391.0), (50.0, 12.5)] {
        let (n, tt) = (Float::with_val(512, nu), Float::with_val(512, t));
        let (a, da) = bessel_j(&n, &tt, &ctx).unwrap();
        let (b, db) = bessel_j(&n, &tt, &wide).unwrap();
        let gap = |x: &Float, y: &Float| Float::with_val(512, x - y).abs().to_f64();
        assert!(gap(&a, &b) < 1e-72 && gap(&da, &db) < 1e-72, "ν = {nu}, t = {t}");
    }
}

#[test]
fn bessel_satisfies_its_differential_equation() {
    let nu = 7.5;
    for t in [0.5, 3.0, 8.0, 20.0] {
        let eps = 1e-5;
        let (j, dj) = bessel_j_f64_pair(nu, t);
        let (_, dp) = bessel_j_f64_pair(nu, t + eps);
        let (_, dm) = bessel_j_f64_pair(nu, t - eps);
        let ddj = (dp - dm) / (2.0 * eps);
        let r = t * t * ddj + t * dj + (t * t - nu * nu) * j;
        assert!(r.abs() < 1e-6 * (1.0 + t * t), "t = {t}: {r:e}");
    }
}

fn bessel_j_f64_pair(nu: f64, t: f64) -> (f64, f64) {
    hardsoft::specfun::bessel_j_f64(nu, t).unwrap()
}

#[test]
fn kernels_are_symmetric_and_positive_on_the_diagonal() {
    for (x, y) in [(-1.5, 0.7), (2.0, 3.25), (0.0, -2.0)] {
        assert!((airy_kernel_f64(x, y).unwrap() - airy_kernel_f64(y, x).unwrap()).abs() < 1e-15);
        assert!((bessel_kernel_f64(x.abs() + 1.0, y.abs() + 3.0, 2.5).unwrap() - bessel_kernel_f64(y.abs() + 3.0, x.abs() + 1.0, 2.5).unwrap()).abs() < 1e-15);
    }
    for x in [-3.0, -1.0, 0.0, 1.0, 4.0] {
        assert!(airy_kernel_f64(x, x).unwrap() >= 0.0);
    }
    for x in [0.5, 4.0, 16.0, 64.0] {
        assert!(bessel_kernel_f64(x, x, 3.0).unwrap() >= 0.0);
    }
}

#[test]
fn transformed_kernel_approaches_airy_kernel_at_the_predicted_rate() {
    let ctx = EvalContext::new(256).unwrap();
    let k = assemble_kernel_expansion(2).unwrap();
    let (x, y) = (Float::with_val(256, 0.0), Float::with_val(256, 0.0));
    let kai = airy_kernel(&x, &y, &ctx).unwrap();
    let mut last = [f64::MAX; 3];
    for nu in [50.0, 100.0, 200.0] {
        let params = ScalingParams::new(nu, &ctx).unwrap();
        let mut r = Float::with_val(256, transformed_kernel(&x, &y, &params, &ctx).unwrap() - &kai);
        let mut errs = [0.0; 3];
        errs[0] = r.to_f64().abs();
        let mut hj = params.h.clone();
        for j in 1..=2 {
            r -= kernel_correction_eval(&k, j, &x, &y, &ctx).unwrap() * &hj;
            hj *= &params.h;
            errs[j] = r.to_f64().abs();
        }
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "ν = {nu}: {errs:?}");
        for m in 0..3 {
            assert!(errs[m] < last[m]);
        }
        last = errs;
    }
}

#[test]
fn correction_kernels_match_hand_substitution() {
    let ctx = EvalContext::new(256).unwrap();
    let k = assemble_kernel_expansion(2).unwrap();
    let (a0, d0) = airy_ai_f64_pair(0.0);
    let k1 = kernel_correction_eval(&k, 1, &Float::with_val(256, 0.0), &Float::with_val(256, 0.0), &ctx).unwrap().to_f64();
    assert!((k1 - 0.4 * a0 * d0).abs() < 1e-15);
    let (a1, d1) = airy_ai_f64_pair(1.0);
    let (am, dm) = airy_ai_f64_pair(-1.0);
    let (x, y) = (1.0f64, -1.0f64);
    let p00 = (56.0 - 235.0 * (x.powi(3) + y.powi(3)) - 319.0 * x * y * (x + y)) / 1400.0;
    let p01 = (63.0 * (x.powi(4) + x.powi(3) * y - x * x * y * y - x * y.powi(3) - y.powi(4)) - 55.0 * x + 239.0 * y) / 1400.0;
    let p10 = (63.0 * (y.powi(4) + y.powi(3) * x - x * x * y * y - y * x.powi(3) - x.powi(4)) - 55.0 * y + 239.0 * x) / 1400.0;
    let p11 = (340.0 * (x * x + y * y) + 256.0 * x * y) / 1400.0;
    let hand = p00 * a1 * am + p01 * a1 * dm + p10 * d1 * am + p11 * d1 * dm;
    let k2 = kernel_correction_eval(&k, 2, &Float::with_val(256, x), &Float::with_val(256, y), &ctx).unwrap().to_f64();
    assert!((k2 - hand).abs() < 1e-14, "{k2} vs {hand}");
}

fn airy_ai_f64_pair(x: f64) -> (f64, f64) {
    hardsoft::specfun::airy_ai_f64(x).unwrap()
}

#[test]
#[ignore]
fn residual_scan_probe() {
    let ctx = EvalContext::new(256).unwrap();
    let k = assemble_kernel_expansion(3).unwrap();
    let t = std::time::Instant::now();
    let g = residual_scan(&[50.0, 100.0, 200.0, 400.0], &Grid::square(-2.0, 6.0, 9), 3, &k, &ctx).unwrap();
    println!("{:?} in {:?}", g.slopes, t.elapsed());
    for r in &g.rows {
        println!("{} {} {:e} {:e}", r.nu, r.m, r.max_residual, r.error_bound);
    }
}
