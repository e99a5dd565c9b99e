use crate::algebra::{factorial, q, AlgNum, BigRational, Coeff, Mat2Series, Poly1, SymConst, TruncSeries, Var};
use crate::error::{Error, Result};

type QPoly = Poly1<BigRational>;

/// `f(z) = prefactor · (z−1) · r(z)` with `r(1) = 1`.
#[derive(Clone, Debug)]
pub struct FSeries {
    /// The constant −2^{−2/3}, kept symbolic.
    pub prefactor: SymConst,
    /// Rational Taylor series of `r` in `z − 1`.
    pub r: TruncSeries<BigRational>,
}

/// `S(s) = Σ_k 3 s^k / (2k+3)`, so that `(3/2)(atanh w − w) = (w³/2) S(w²)`.
///
/// Built from the odd w-series and returned in the variable `z − 1 = −w²`.
pub(crate) fn s_series(order: i64) -> TruncSeries<BigRational> {
    let n = (2 * order + 3).max(3);
    let odd: Vec<BigRational> = (0..n)
        .map(|k| if k >= 3 && k % 2 == 1 { q(3, 2 * k) } else { q(0, 1) })
        .collect();
    let g = TruncSeries::new(Var::W, 0, odd, n);
    let even = g.shift(-3).scale(&q(2, 1));
    let coeffs: Vec<BigRational> = (0..order)
        .map(|k| {
            let c = even.coeff(2 * k).expect("within order");
            if k % 2 == 1 {
                c.negated()
            } else {
                c
            }
        })
        .collect();
    TruncSeries::new(Var::Z1, 0, coeffs, order)
}

/// Conformal map at the turning point, to `O((z−1)^order)` in `r`.
pub fn f_series(order: i64) -> Result<FSeries> {
    let r = s_series(order).pow_rational(&q(2, 3))?;
    Ok(FSeries { prefactor: SymConst::new(AlgNum::int(-1), q(-2, 3)), r })
}

/// `z − 1 = −2hx + h²x²` as an h-series with polynomial coefficients in x.
pub(crate) fn z_minus_one() -> TruncSeries<QPoly> {
    let x = QPoly::x();
    TruncSeries::exact(Var::H, 1, vec![x.scaled(&q(-2, 1)), x.times(&x)])
}

/// `ν^{2/3} f((1−hx)²) = x + Σ_j p_{1,j}(x) h^j` to `O(h^{j_max+1})`.
pub fn scaled_f_series(j_max: i64) -> Result<TruncSeries<QPoly>> {
    let f = f_series(j_max + 1)?;
    // ν^{2/3} = 2^{−1/3} h^{−1}; the powers of two must cancel.
    let k = SymConst::pow2(q(-1, 3)).mul(&f.prefactor).to_algnum()?;
    let k = k.as_rational().cloned().ok_or_else(|| Error::OutsideField(k.to_string()))?;
    let tr = f.r.shift(1);
    let lift = |c: &BigRational| QPoly::constant(c.clone());
    let composed = tr.compose(&z_minus_one(), lift, None)?;
    let out = composed.shift(-1).scale(&k);
    if out.order() < j_max + 1 {
        return Err(Error::alarm(format!("scaled f-series only to order {}", out.order())));
    }
    Ok(out.truncate(j_max + 1))
}

/// Table `p[m][j]` of `(ν^{2/3} f − x)^m / m! = Σ_j p_{m,j} h^j` for `m, j ≤ j_max`.
pub fn p_table(j_max: usize) -> Result<Vec<Vec<QPoly>>> {
    let zeta = scaled_f_series(j_max as i64)?;
    let delta = zeta.sub(&TruncSeries::constant(Var::H, QPoly::x()))?;
    let mut table = Vec::with_capacity(j_max + 1);
    let mut power = TruncSeries::one(Var::H).truncate(j_max as i64 + 1);
    for m in 0..=j_max {
        if m > 0 {
            power = power.mul(&delta)?;
        }
        let inv = factorial(m as u32).recip();
        table.push((0..=j_max as i64).map(|j| power.coeff(j).expect("within order").scaled(&inv)).collect());
    }
    Ok(table)
}

/// `p_{m,j}` for `j = 0..=j_max` (zero below `j = m`).
pub fn p_coeffs(m: usize, j_max: usize) -> Result<Vec<QPoly>> {
    if m == 0 || m > j_max {
        return Err(Error::domain("p_coeffs needs 1 ≤ m ≤ j_max"));
    }
    Ok(p_table(j_max)?.swap_remove(m))
}

/// `E(z) = C · diag(r^{1/4}, r^{−1/4})` with `C = (2h)^{−σ₃/4} e^{−iπσ₃/4} σ₃`.
#[derive(Clone, Debug)]
pub struct EFactor {
    /// Diagonal of `C` without its h-power: `2^{∓1/4}` times a unit of Q(i, √2).
    pub constant: [SymConst; 2],
    /// Exponent of h on each diagonal entry of `C`.
    pub h_power: [BigRational; 2],
    pub inner: Mat2Series<BigRational>,
}

impl EFactor {
    /// `D = h^{σ₃/4} C`, which carries no h and is what conjugates `R`.
    pub fn d_matrix(&self) -> [SymConst; 2] {
        self.constant.clone()
    }
}

pub fn e_factor_series(order: i64) -> Result<EFactor> {
    let r = f_series(order)?.r;
    let inner = Mat2Series::diag(r.pow_rational(&q(1, 4))?, r.pow_rational(&q(-1, 4))?);
    // e^{∓iπ/4} = (√2/2)(1 ∓ i)
    let unit = |s: i64| AlgNum::new(q(0, 1), q(1, 2), q(0, 1), q(-s, 2));
    let constant = [
        SymConst::new(unit(1), q(-1, 4)),
        SymConst::new(unit(-1).negated(), q(1, 4)),
    ];
    Ok(EFactor { constant, h_power: [q(-1, 4), q(1, 4)], inner })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_coefficients() {
        let f = f_series(4).unwrap();
        let r: Vec<_> = (0..4).map(|k| f.r.coeff(k).unwrap()).collect();
        assert_eq!(r, vec![q(1, 1), q(-2, 5), q(43, 175), q(-1384, 7875)]);
        assert!(f.prefactor.to_algnum().is_err());
    }

    #[test]
    fn scaled_map() {
        let z = scaled_f_series(3).unwrap();
        let x = QPoly::x();
        assert_eq!(z.coeff(0).unwrap(), x);
        assert_eq!(z.coeff(1).unwrap(), x.times(&x).scaled(&q(3, 10)));
        assert_eq!(z.coeff(2).unwrap(), x.times(&x).times(&x).scaled(&q(32, 175)));
    }

    #[test]
    fn p_table_identities() {
        let t = p_table(8).unwrap();
        let x = QPoly::x();
        assert_eq!(t[2][2], x.times(&x).times(&x).times(&x).scaled(&q(9, 200)));
        for m in 1..=8usize {
            let lead = (0..m).fold(QPoly::one(), |a, _| a.times(&t[1][1])).scaled(&factorial(m as u32).recip());
            assert_eq!(t[m][m], lead);
            for j in 0..m {
                assert!(t[m][j].is_zero());
            }
        }
        // convolution form, sampled over 1 < n < m ≤ j ≤ 8
        for j in 3..=8usize {
            for m in 3..=j {
                for n in 2..m {
                    let w = BigRational::from(factorial((m - n) as u32) * factorial(n as u32)) / factorial(m as u32);
                    let sum = (m - n..=j - n).fold(QPoly::zero(), |a, k| a.plus(&t[m - n][k].times(&t[n][j - k])));
                    assert_eq!(t[m][j], sum.scaled(&w), "m={m} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn e_series() {
        let e = e_factor_series(3).unwrap();
        let a = &e.inner.e[0][0];
        let d = &e.inner.e[1][1];
        assert_eq!((a.coeff(0).unwrap(), a.coeff(1).unwrap(), a.coeff(2).unwrap()), (q(1, 1), q(-1, 10), q(13, 280)));
        assert_eq!((d.coeff(0).unwrap(), d.coeff(1).unwrap(), d.coeff(2).unwrap()), (q(1, 1), q(1, 10), q(-51, 1400)));
    }
}
