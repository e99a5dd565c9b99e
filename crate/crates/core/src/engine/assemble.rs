use super::airy::airy_derivative_polys;
use super::conformal::{e_factor_series, p_table};
use super::jumps::r_outer_inner;
use super::KernelExpansion;
use crate::algebra::{q, AlgNum, BigRational, BivarPoly, Coeff, Mat2, Mat2Series, Poly1, TruncSeries, Var};
use crate::error::{Error, Result};

type QPoly = Poly1<BigRational>;
type QXY = BivarPoly<BigRational>;
type XY = BivarPoly<AlgNum>;
type HSeries = TruncSeries<XY>;

/// Which of the two kernel arguments a series is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

fn embed(p: &QPoly, side: Side) -> XY {
    let a = p.map(|c| AlgNum::rational(c.clone()));
    match side {
        Side::X => BivarPoly::from_x(&a),
        Side::Y => BivarPoly::from_y(&a),
    }
}

fn var_of(side: Side) -> XY {
    match side {
        Side::X => XY::x(),
        Side::Y => XY::y(),
    }
}

/// `z − 1 = −2hv + h²v²` in the chosen kernel argument `v`.
fn z_minus_one(side: Side) -> HSeries {
    let v = var_of(side);
    HSeries::exact(Var::H, 1, vec![v.scaled(&q(-2, 1)), v.times(&v)])
}

fn lift_const(c: &AlgNum) -> XY {
    XY::constant(c.clone())
}

/// Power of h multiplying entry `(i, j)` of `R_k` after conjugation by `h^{σ₃/4}`.
fn r_hat_power(k: usize, i: usize, j: usize) -> i64 {
    let k = k as i64;
    match (k % 2, i, j) {
        (1, 1, 0) => (3 * k - 1) / 2,
        (1, 0, 1) => (3 * k + 1) / 2,
        _ => 3 * k / 2,
    }
}

/// `R̂ = h^{σ₃/4} R((1−hv)²) h^{−σ₃/4}` to `O(h^{h_order})`.
pub fn r_hat_series(side: Side, h_order: i64) -> Result<Mat2Series<XY>> {
    let k_max = (1..).take_while(|&k| r_hat_power(k, 1, 0).min(r_hat_power(k, 0, 0)) < h_order).last().unwrap_or(0);
    let pairs = r_outer_inner(k_max, 2 * h_order + 4)?;
    let sub = z_minus_one(side);
    let mut m = Mat2Series::identity(Var::H).truncate(h_order);
    for pair in &pairs {
        for i in 0..2 {
            for j in 0..2 {
                let s = &pair.inner.e[i][j];
                if s.is_zero() {
                    continue;
                }
                let p = r_hat_power(pair.k, i, j);
                if p >= h_order {
                    continue;
                }
                let term = s.compose(&sub, lift_const, Some(h_order - p))?.shift(p);
                m.e[i][j] = m.e[i][j].add(&term)?;
            }
        }
    }
    Ok(m)
}

/// `diag(r^{1/4}, r^{−1/4})` at `z = (1−hv)²`.
fn e_inner_series(side: Side, h_order: i64) -> Result<[HSeries; 2]> {
    let e = e_factor_series(h_order)?;
    let sub = z_minus_one(side);
    let lift = |c: &BigRational| XY::constant(AlgNum::rational(c.clone()));
    Ok([e.inner.e[0][0].compose(&sub, lift, Some(h_order))?, e.inner.e[1][1].compose(&sub, lift, Some(h_order))?])
}

fn one_minus_is_zero(s: &HSeries) -> Result<bool> {
    Ok(s.sub(&HSeries::one(Var::H))?.is_zero())
}

/// The sandwich `E(z_y)^{-1} R(z_y)^{-1} R(z_x) E(z_x)` with all scalar
/// prefactors cancelled, as an h-series with bivariate entries.
pub fn sandwich_matrix(h_order: i64) -> Result<Mat2Series<XY>> {
    let rx = r_hat_series(Side::X, h_order)?;
    let ry = r_hat_series(Side::Y, h_order)?;
    if !one_minus_is_zero(&ry.det()?.truncate(h_order))? {
        return Err(Error::alarm("det R is not 1"));
    }
    let mut mid = ry.adjugate().mul(&rx)?;
    let d = e_factor_series(1)?.d_matrix();
    let c12 = d[1].mul(&d[0].inv()?).to_algnum()?;
    let c21 = d[0].mul(&d[1].inv()?).to_algnum()?;
    mid.e[0][1] = mid.e[0][1].times_coeff(&XY::constant(c12));
    mid.e[1][0] = mid.e[1][0].times_coeff(&XY::constant(c21));
    let ex = e_inner_series(Side::X, h_order)?;
    let ey = e_inner_series(Side::Y, h_order)?;
    let ey_inv = [ey[1].clone(), ey[0].clone()];
    let mut m = mid.clone();
    for i in 0..2 {
        for j in 0..2 {
            m.e[i][j] = ey_inv[i].mul(&mid.e[i][j])?.mul(&ex[j])?.truncate(h_order);
        }
    }
    let defect = m.sub(&Mat2Series::identity(Var::H))?;
    for s in defect.e.iter().flatten() {
        if s.terms().any(|(_, c)| !c.diagonal().is_zero()) {
            return Err(Error::alarm("sandwich differs from I on the diagonal x = y"));
        }
    }
    Ok(m)
}

/// `e_j` with `sandwich = I + (x−y) Σ_j e_j h^j`.
#[derive(Clone, Debug)]
pub struct SandwichExpansion {
    pub order: usize,
    /// `e[j-1]` holds `e_j`.
    pub e: Vec<Mat2<XY>>,
}

pub fn sandwich_series(j_max: usize) -> Result<SandwichExpansion> {
    let m = sandwich_matrix(j_max as i64 + 1)?;
    let defect = m.sub(&Mat2Series::identity(Var::H))?;
    let mut e = Vec::with_capacity(j_max);
    for j in 1..=j_max as i64 {
        let entry = |i: usize, k: usize| -> Result<XY> {
            defect.e[i][k].coeff(j).ok_or_else(|| Error::alarm("sandwich order too low"))?.exact_divide_x_minus_y()
        };
        e.push([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]);
    }
    Ok(SandwichExpansion { order: j_max, e })
}

/// `√((1−hx)(1−hy)) / (1 − h(x+y)/2)` to `O(h^{h_order})`.
pub fn prefactor_full(h_order: i64) -> Result<TruncSeries<QXY>> {
    let lin = |c: QXY| TruncSeries::new(Var::H, 0, vec![QXY::one(), c], h_order);
    let sx = lin(QXY::x().negated()).pow_rational(&q(1, 2))?;
    let sy = lin(QXY::y().negated()).pow_rational(&q(1, 2))?;
    let den = lin(QXY::x().plus(&QXY::y()).scaled(&q(-1, 2))).pow_rational(&q(-1, 1))?;
    sx.mul(&sy)?.mul(&den)
}

/// `r_j` for `j = 0..=j_max` with prefactor `= 1 − (x−y)² Σ_{j≥2} r_j h^j`.
pub fn prefactor_series(j_max: usize) -> Result<Vec<QXY>> {
    let g = prefactor_full(j_max as i64 + 1)?;
    if g.coeff(0) != Some(QXY::one()) || !g.coeff(1).expect("order ≥ 2").is_zero() {
        return Err(Error::alarm("prefactor does not start 1 + O(h²)"));
    }
    let mut out = vec![QXY::zero(), QXY::zero()];
    for j in 2..=j_max as i64 {
        let c = g.coeff(j).expect("within order").negated();
        out.push(c.exact_divide_x_minus_y()?.exact_divide_x_minus_y()?);
    }
    out.truncate(j_max + 1);
    Ok(out)
}

/// Coefficients `(α₀, α₁)` of `Ai(ζ)` and `(β₀, β₁)` of `Ai'(ζ)` on the basis
/// `Ai(v), Ai'(v)`, where `ζ = ν^{2/3} f((1−hv)²)`.
pub fn airy_coefficient_series(h_order: i64) -> Result<[[TruncSeries<QPoly>; 2]; 2]> {
    let j_max = (h_order - 1).max(0) as usize;
    let p = p_table(j_max)?;
    let pq = airy_derivative_polys(j_max + 1);
    let build = |shift: usize, pick: fn(&super::AiryPolyPair) -> &QPoly| {
        let coeffs: Vec<QPoly> =
            (0..=j_max).map(|j| (0..=j).fold(QPoly::zero(), |acc, m| acc.plus(&p[m][j].times(pick(&pq[m + shift]))))).collect();
        TruncSeries::new(Var::H, 0, coeffs, h_order)
    };
    Ok([[build(0, |a| &a.p), build(0, |a| &a.q)], [build(1, |a| &a.p), build(1, |a| &a.q)]])
}

fn embed_series(s: &TruncSeries<QPoly>, side: Side) -> HSeries {
    s.map(|p| embed(p, side))
}

/// Numerator series on the basis `Ai^{(κ)}(x) Ai^{(λ)}(y)`, indexed `[κ][λ]`.
///
/// Its h⁰ part is the Airy-kernel Wronskian and every higher coefficient is
/// divisible by `(x − y)`.
pub fn numerator_series(h_order: i64) -> Result<[[HSeries; 2]; 2]> {
    let m = sandwich_matrix(h_order)?;
    let ab = airy_coefficient_series(h_order)?;
    let ax = [embed_series(&ab[0][0], Side::X), embed_series(&ab[0][1], Side::X)];
    let bx = [embed_series(&ab[1][0], Side::X), embed_series(&ab[1][1], Side::X)];
    let ay = [embed_series(&ab[0][0], Side::Y), embed_series(&ab[0][1], Side::Y)];
    let by = [embed_series(&ab[1][0], Side::Y), embed_series(&ab[1][1], Side::Y)];
    let g = prefactor_full(h_order)?.map(|p| p.map(|c| AlgNum::rational(c.clone())));
    let i = XY::constant(AlgNum::i());
    let mut out: Vec<HSeries> = Vec::with_capacity(4);
    for kappa in 0..2 {
        for lambda in 0..2 {
            let t11 = m.e[0][0].mul(&ax[kappa])?.mul(&by[lambda])?;
            let t12 = m.e[0][1].mul(&bx[kappa])?.mul(&by[lambda])?.times_coeff(&i);
            let t21 = m.e[1][0].mul(&ax[kappa])?.mul(&ay[lambda])?.times_coeff(&i);
            let t22 = m.e[1][1].mul(&bx[kappa])?.mul(&ay[lambda])?;
            let core = t11.sub(&t12)?.sub(&t21)?.sub(&t22)?;
            out.push(g.mul(&core)?.truncate(h_order));
        }
    }
    let mut it = out.into_iter();
    let mut next = || it.next().expect("four entries");
    Ok([[next(), next()], [next(), next()]])
}

/// Derive `K_1, …, K_m` with `padding` extra h-orders carried internally.
pub fn assemble_with_padding(m: usize, padding: usize) -> Result<KernelExpansion> {
    let h_order = (m + 1 + padding) as i64;
    let num = numerator_series(h_order)?;
    let wronskian = [[0, 1], [-1, 0]];
    for (kappa, row) in num.iter().enumerate() {
        for (lambda, s) in row.iter().enumerate() {
            if s.order() < m as i64 + 1 {
                return Err(Error::alarm(format!("numerator known only to O(h^{})", s.order())));
            }
            let c0 = s.coeff(0).expect("order ≥ 1");
            if c0 != XY::constant(AlgNum::int(wronskian[kappa][lambda])) {
                return Err(Error::alarm(format!("h^0 term of basis {kappa}{lambda} is {c0}")));
            }
        }
    }
    let mut terms = Vec::with_capacity(m);
    for j in 1..=m as i64 {
        let mut four = Vec::with_capacity(4);
        for (kappa, row) in num.iter().enumerate() {
            for (lambda, s) in row.iter().enumerate() {
                let c = s.coeff(j).expect("within order");
                let quotient = c.exact_divide_x_minus_y().map_err(|e| Error::alarm(format!("j={j}, {kappa}{lambda}: {e}")))?;
                let rational = quotient.try_map(|a| {
                    a.as_rational().cloned().ok_or_else(|| Error::OutsideField(format!("j={j}, {kappa}{lambda}: coefficient {a}")))
                })?;
                four.push(rational);
            }
        }
        terms.push([four[0].clone(), four[1].clone(), four[2].clone(), four[3].clone()]);
    }
    let k = KernelExpansion { order: m, terms };
    k.check_invariants()?;
    Ok(k)
}

/// The exact table `{p_{j,κλ}}_{j ≤ m}`.
pub fn assemble_kernel_expansion(m: usize) -> Result<KernelExpansion> {
    if m == 0 {
        return Ok(KernelExpansion { order: 0, terms: Vec::new() });
    }
    assemble_with_padding(m, 2)
}

/// `(a_{N,00}, a_{N,01}, a_{N,11})` evaluated from the displayed sums over
/// `p_{m,j}`, `P_m` and `Q_m`.
pub fn a_coeffs(n: usize) -> Result<(QXY, QXY, QXY)> {
    if n == 0 {
        return Err(Error::domain("a_coeffs needs N ≥ 1"));
    }
    let p = p_table(n)?;
    let pq = airy_derivative_polys(n + 2);
    let px = |m: usize, j: usize| QXY::from_x(&p[m][j]);
    let py = |m: usize, j: usize| QXY::from_y(&p[m][j]);
    let (pp, qq) = (|m: usize| &pq[m].p, |m: usize| &pq[m].q);
    let x = |f: &QPoly| QXY::from_x(f);
    let y = |f: &QPoly| QXY::from_y(f);

    let mut a00 = QXY::zero();
    let mut a01 = QXY::zero();
    let mut a11 = QXY::zero();
    for k in 1..=n {
        a00 = a00.plus(&py(k, n).times(&y(pp(k + 1))).minus(&px(k, n).times(&x(pp(k + 1)))));
        a11 = a11.plus(&px(k, n).times(&x(qq(k))).minus(&py(k, n).times(&y(qq(k)))));
        if k >= 2 {
            a01 = a01.plus(&py(k, n).times(&y(qq(k + 1))).plus(&px(k, n).times(&x(pp(k)))));
        }
    }
    for j in 1..n {
        let k = n - j;
        for mm in 1..=j {
            for nn in 1..=k {
                let w = px(mm, j).times(&py(nn, k));
                let t00 = w.times(&x(pp(mm))).times(&y(pp(nn + 1)));
                a00 = a00.plus(&t00.minus(&t00.swap_xy()));
                let t11 = w.times(&x(qq(mm))).times(&y(qq(nn + 1)));
                a11 = a11.plus(&t11.minus(&t11.swap_xy()));
                let t01 = x(pp(mm)).times(&y(qq(nn + 1))).minus(&x(pp(mm + 1)).times(&y(qq(nn))));
                a01 = a01.plus(&w.times(&t01));
            }
        }
    }
    Ok((a00, a01, a11))
}

/// The same three polynomials read off directly from the product
/// `Ai(ζ_x) Ai'(ζ_y) − Ai'(ζ_x) Ai(ζ_y)` expanded in h.
pub fn a_coeffs_direct(n: usize) -> Result<(QXY, QXY, QXY)> {
    let h_order = n as i64 + 1;
    let ab = airy_coefficient_series(h_order)?;
    let to_xy = |s: &TruncSeries<QPoly>, side: Side| -> TruncSeries<QXY> {
        s.map(|p| match side {
            Side::X => QXY::from_x(p),
            Side::Y => QXY::from_y(p),
        })
    };
    let coef = |kappa: usize, lambda: usize| -> Result<QXY> {
        let first = to_xy(&ab[0][kappa], Side::X).mul(&to_xy(&ab[1][lambda], Side::Y))?;
        let second = to_xy(&ab[1][kappa], Side::X).mul(&to_xy(&ab[0][lambda], Side::Y))?;
        Ok(first.sub(&second)?.coeff(n as i64).unwrap_or_else(QXY::zero))
    };
    Ok((coef(0, 0)?, coef(0, 1)?, coef(1, 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy(terms: &[((u32, u32), (i64, i64))]) -> QXY {
        QXY::from_terms(terms.iter().map(|&(k, (a, b))| (k, q(a, b))))
    }

    #[test]
    fn prefactor_coefficients() {
        let r = prefactor_series(8).unwrap();
        assert!(r[1].is_zero());
        assert_eq!(r[2], QXY::constant(q(1, 8)));
        for j in 2..=8 {
            assert_eq!(r[j].total_degree(), Some(j as u32 - 2), "j = {j}");
        }
    }

    #[test]
    fn sandwich_low_orders() {
        let s = sandwich_series(2).unwrap();
        let c = |a: i64, b: i64| XY::constant(AlgNum::rational(q(a, b)));
        let e1 = &s.e[0];
        assert_eq!(e1[0][0], c(1, 5));
        assert_eq!(e1[1][1], c(-1, 5));
        assert!(e1[0][1].is_zero() && e1[1][0].is_zero());
        let e2 = &s.e[1];
        let lin = |a: i64, b: i64| XY::x().scaled(&q(a, 175)).plus(&XY::y().scaled(&q(b, 175)));
        assert_eq!(e2[0][0], lin(15, 8));
        assert_eq!(e2[1][1], lin(-8, -15));
        assert_eq!(e2[1][0], XY::constant(AlgNum::i().scaled(&q(1, 25))));
        assert!(e2[0][1].is_zero());
    }

    #[test]
    fn r_hat_anchors() {
        let r = r_hat_series(Side::X, 3).unwrap();
        let s2 = |a: i64, b: i64| AlgNum::sqrt2().scaled(&q(a, b));
        let e21 = &r.e[1][0];
        assert_eq!(e21.coeff(1).unwrap(), XY::constant(s2(7, 40)));
        assert_eq!(e21.coeff(2).unwrap().get(1, 0), s2(1, 25));
        // The sign here follows the derived jump; the printed display has +√2/70.
        assert_eq!(r.e[0][1].coeff(2).unwrap(), XY::constant(s2(-1, 70)));
    }

    #[test]
    fn a1_closed_form() {
        let (a00, _, _) = a_coeffs(1).unwrap();
        assert_eq!(a00, qxy(&[((0, 3), (3, 10)), ((3, 0), (-3, 10))]));
    }

    #[test]
    fn displayed_sums_match_direct_product() {
        for n in 1..=6 {
            assert_eq!(a_coeffs(n).unwrap(), a_coeffs_direct(n).unwrap(), "N = {n}");
        }
    }
}
