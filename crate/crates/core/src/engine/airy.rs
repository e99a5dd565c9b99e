use crate::algebra::{factorial, q, BigRational, Coeff, Poly1};

type QPoly = Poly1<BigRational>;

/// Polynomials with `Ai^{(m)}(x) = P_m(x) Ai(x) + Q_m(x) Ai'(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AiryPolyPair {
    pub m: usize,
    pub p: QPoly,
    pub q: QPoly,
}

/// `(P_m, Q_m)` for `m = 0..=m_max` from `P_{n+1} = P_n' + x Q_n`, `Q_{n+1} = Q_n' + P_n`.
pub fn airy_derivative_polys(m_max: usize) -> Vec<AiryPolyPair> {
    let x = QPoly::x();
    let mut out = vec![AiryPolyPair { m: 0, p: QPoly::one(), q: QPoly::zero() }];
    for m in 1..=m_max {
        let prev = &out[m - 1];
        let p = prev.p.derivative().plus(&x.times(&prev.q));
        let qq = prev.q.derivative().plus(&prev.p);
        out.push(AiryPolyPair { m, p, q: qq });
    }
    out
}

/// Coefficients of the large-z Airy expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct AsympCoeffs {
    pub k: usize,
    pub u: BigRational,
    pub v: BigRational,
}

/// `u_k = (6k−5)(6k−3)(6k−1) / (216 (2k−1) k) · u_{k−1}` and `v_k = (6k+1)/(1−6k) · u_k`.
pub fn airy_asymp_coeffs(k_max: usize) -> Vec<AsympCoeffs> {
    let mut out = vec![AsympCoeffs { k: 0, u: q(1, 1), v: q(1, 1) }];
    for k in 1..=k_max {
        let ki = k as i64;
        let ratio = q((6 * ki - 5) * (6 * ki - 3) * (6 * ki - 1), 216 * (2 * ki - 1) * ki);
        let u = BigRational::from(&out[k - 1].u * &ratio);
        let v = BigRational::from(&u * &q(6 * ki + 1, 1 - 6 * ki));
        out.push(AsympCoeffs { k, u, v });
    }
    out
}

/// `Σ_{j=0}^{N} (P_j Q_{N+1−j} − Q_j P_{N+1−j}) / (j! (N−j)!)` as an exact polynomial.
pub fn lemma_polynomial(n: usize) -> QPoly {
    let pq = airy_derivative_polys(n + 1);
    (0..=n).fold(QPoly::zero(), |acc, j| {
        let w = pq[j].p.times(&pq[n + 1 - j].q).minus(&pq[j].q.times(&pq[n + 1 - j].p));
        let c = BigRational::from(factorial(j as u32) * factorial((n - j) as u32)).recip();
        acc.plus(&w.scaled(&c))
    })
}

/// Whether the Wronskian-type lemma identity holds exactly for this `N`.
pub fn lemma_identity_check(n: usize) -> bool {
    lemma_polynomial(n).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_polys() {
        let pq = airy_derivative_polys(4);
        let x = QPoly::x();
        assert_eq!((pq[0].p.clone(), pq[0].q.clone()), (QPoly::one(), QPoly::zero()));
        assert_eq!((pq[1].p.clone(), pq[1].q.clone()), (QPoly::zero(), QPoly::one()));
        assert_eq!((pq[2].p.clone(), pq[2].q.clone()), (x.clone(), QPoly::zero()));
        assert_eq!(pq[4].p, x.times(&x));
        assert_eq!(pq[4].q, QPoly::constant(q(2, 1)));
    }

    #[test]
    fn asymptotic_coefficients() {
        let c = airy_asymp_coeffs(2);
        assert_eq!((c[0].u.clone(), c[0].v.clone()), (q(1, 1), q(1, 1)));
        assert_eq!((c[1].u.clone(), c[1].v.clone()), (q(5, 72), q(-7, 72)));
        assert_eq!((c[2].u.clone(), c[2].v.clone()), (q(385, 10368), q(-455, 10368)));
    }

    #[test]
    fn lemma_holds() {
        for n in 1..=12 {
            assert!(lemma_identity_check(n), "N = {n}");
        }
    }
}
