use super::airy::airy_asymp_coeffs;
use super::conformal::s_series;
use crate::algebra::{q, AlgNum, BigRational, Coeff, Mat2Series, SymConst, TruncSeries, Var};
use crate::error::{Error, Result};

type ASeries = TruncSeries<AlgNum>;

/// `w^{-e}` with `w² = −(z−1)`, as a signed Laurent monomial shift.
fn w_power(e: i64) -> Result<(i64, i64)> {
    if e % 2 != 0 {
        return Err(Error::alarm(format!("half-integer exponent w^-{e} does not cancel")));
    }
    let n = e / 2;
    Ok((if n % 2 == 0 { 1 } else { -1 }, -n))
}

/// Laurent expansion of the k-th jump coefficient `J_k(z)` about `z = 1`,
/// accurate to `O((z−1)^order)`.
///
/// With `c_k = 3^k 2^{k/2}` and `S` from the conformal map,
/// odd k: `J_k = −c_k S^{−k} [[0, u_k w^{−3k−1}], [v_k w^{−3k+1}, 0]]`,
/// even k: `J_k = c_k S^{−k} w^{−3k} diag(u_k, v_k)`.
pub fn j_matrix_series(k: usize, order: i64) -> Result<Mat2Series<AlgNum>> {
    if k == 0 {
        return Err(Error::domain("jump index starts at 1"));
    }
    let uv = &airy_asymp_coeffs(k)[k];
    let ki = k as i64;
    let c = SymConst::new(AlgNum::rational(q(3i64.pow(k as u32), 1)), q(ki, 2)).to_algnum()?;
    let entry = |coef: &BigRational, e: i64, sign: i64| -> Result<ASeries> {
        let (s, shift) = w_power(e)?;
        let base = s_series(order - shift + 1).pow_rational(&q(-ki, 1))?;
        let scale = c.scaled(coef).scaled(&q(s * sign, 1));
        Ok(base.map(|b| AlgNum::rational(b.clone())).times_coeff(&scale).shift(shift).truncate(order))
    };
    let zero = || ASeries::zero(Var::Z1, crate::algebra::EXACT);
    if k % 2 == 1 {
        Ok(Mat2Series::new([
            [zero(), entry(&uv.u, 3 * ki + 1, -1)?],
            [entry(&uv.v, 3 * ki - 1, -1)?, zero()],
        ]))
    } else {
        Ok(Mat2Series::diag(entry(&uv.u, 3 * ki, 1)?, entry(&uv.v, 3 * ki, 1)?))
    }
}

/// One step of the additive splitting on the circle around `z = 1`.
#[derive(Clone, Debug)]
pub struct RPair {
    pub k: usize,
    /// Principal part, the coefficient outside the disc.
    pub outer: Mat2Series<AlgNum>,
    /// Analytic coefficient inside the disc.
    pub inner: Mat2Series<AlgNum>,
}

/// `Q_k = Σ_{l=1}^{k} R_{k−l}^{in} J_l`, `R_k^{out} = PP(Q_k)`, `R_k^{in} = R_k^{out} − Q_k`.
///
/// Jump series are expanded to `O((z−1)^order)`; orders shrink with k and are
/// tracked on every returned series.
pub fn r_outer_inner(k_max: usize, order: i64) -> Result<Vec<RPair>> {
    let jumps: Vec<_> = (1..=k_max).map(|l| j_matrix_series(l, order)).collect::<Result<_>>()?;
    let mut inner: Vec<Mat2Series<AlgNum>> = vec![Mat2Series::identity(Var::Z1)];
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = Mat2Series::zero(Var::Z1);
        for l in 1..=k {
            acc = acc.add(&inner[k - l].mul(&jumps[l - 1])?)?;
        }
        let outer = acc.principal_part();
        let r_in = outer.sub(&acc)?;
        if r_in.e.iter().flatten().any(|s| !s.principal_part().is_zero()) {
            return Err(Error::alarm(format!("R_{k} inside the disc is not analytic")));
        }
        let parity_ok = if k % 2 == 1 { r_in.is_off_diagonal() && outer.is_off_diagonal() } else { r_in.is_diagonal() && outer.is_diagonal() };
        if !parity_ok {
            return Err(Error::alarm(format!("R_{k} breaks the odd/even structure")));
        }
        inner.push(r_in.clone());
        out.push(RPair { k, outer, inner: r_in });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2(a: i64, b: i64) -> AlgNum {
        AlgNum::sqrt2().scaled(&q(a, b))
    }

    #[test]
    fn j1_laurent() {
        let j = j_matrix_series(1, 1).unwrap();
        let e12 = &j.e[0][1];
        let e21 = &j.e[1][0];
        assert_eq!(e12.valuation(), -2);
        assert_eq!(e12.coeff(-2).unwrap(), r2(-5, 24));
        assert_eq!(e12.coeff(-1).unwrap(), r2(-1, 8));
        assert_eq!(e12.coeff(0).unwrap(), r2(1, 70));
        assert_eq!(e21.coeff(-1).unwrap(), r2(-7, 24));
        assert_eq!(e21.coeff(0).unwrap(), r2(-7, 40));
        assert!(j.is_off_diagonal());
    }

    #[test]
    fn j2_is_diagonal() {
        let j = j_matrix_series(2, 2).unwrap();
        assert!(j.is_diagonal());
        let a = j.e[0][0].coeff(-3).unwrap();
        let d = j.e[1][1].coeff(-3).unwrap();
        // leading ratio is v_2/u_2
        assert_eq!(d.checked_div(&a).unwrap(), AlgNum::rational(q(-455, 385)));
    }

    #[test]
    fn r_parity_to_six() {
        let rs = r_outer_inner(6, 14).unwrap();
        assert_eq!(rs.len(), 6);
        let r1 = &rs[0].outer;
        assert_eq!(r1.e[0][1].coeff(-2).unwrap(), r2(-5, 24));
        assert_eq!(r1.e[1][0].coeff(-1).unwrap(), r2(-7, 24));
        assert!(rs[1].outer.is_diagonal());
    }
}
