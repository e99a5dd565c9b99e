use std::fmt;

use super::{binomial, BigRational, Coeff, Var};
use crate::error::{Error, Result};

/// Order carried by series that are exact (finite Laurent polynomials).
pub const EXACT: i64 = 1 << 40;
const HALF: i64 = EXACT / 2;

fn oadd(a: i64, b: i64) -> i64 {
    if a >= HALF || b >= HALF {
        EXACT
    } else {
        a + b
    }
}

fn omul(a: i64, k: i64) -> i64 {
    if a >= HALF {
        EXACT
    } else {
        a * k
    }
}

/// Truncated Laurent series `Σ c_k t^k + O(t^order)` in one formal variable.
///
/// Coefficients are kept normalised: no leading or trailing zeros, nothing at
/// or beyond `order`. The zero series has `low == order`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C> {
    var: Var,
    low: i64,
    coeffs: Vec<C>,
    order: i64,
    lossy: bool,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(var: Var, low: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut s = TruncSeries { var, low, coeffs, order: order.min(EXACT), lossy: false };
        s.normalize();
        s
    }

    /// A finite Laurent polynomial with no truncation.
    pub fn exact(var: Var, low: i64, coeffs: Vec<C>) -> Self {
        Self::new(var, low, coeffs, EXACT)
    }

    pub fn zero(var: Var, order: i64) -> Self {
        Self::new(var, 0, Vec::new(), order)
    }

    pub fn one(var: Var) -> Self {
        Self::exact(var, 0, vec![C::one()])
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::exact(var, 0, vec![c])
    }

    pub fn monomial(var: Var, c: C, k: i64) -> Self {
        Self::exact(var, k, vec![c])
    }

    fn normalize(&mut self) {
        if self.low < self.order {
            let keep = (self.order - self.low).min(self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        } else {
            self.coeffs.clear();
        }
        while self.coeffs.last().is_some_and(Coeff::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = self.order;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Lowest exponent with a nonzero coefficient (`order` for zero).
    pub fn valuation(&self) -> i64 {
        self.low
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= HALF
    }

    /// Set when operands of different finite orders were combined.
    pub fn is_lossy(&self) -> bool {
        self.lossy
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `t^k`, or `None` when `k` lies beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<C> {
        if k >= self.order {
            return None;
        }
        if k < self.low {
            return Some(C::zero());
        }
        Some(self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(C::zero))
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let low = self.low;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (low + k as i64, c))
    }

    fn check_var(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(Error::VariableMismatch(self.var, o.var));
        }
        Ok(())
    }

    fn combine(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.check_var(o)?;
        let order = self.order.min(o.order);
        let low = self.low.min(o.low).min(order);
        let top = self.top().into_iter().chain(o.top()).max().unwrap_or(low).min(order - 1);
        let n = (top - low + 1).max(0) as usize;
        let coeffs = (0..n)
            .map(|k| {
                let e = low + k as i64;
                f(&self.coeff(e).unwrap_or_else(C::zero), &o.coeff(e).unwrap_or_else(C::zero))
            })
            .collect();
        let mut s = Self::new(self.var, low, coeffs, order);
        s.lossy = self.lossy || o.lossy || (!self.is_exact() && !o.is_exact() && self.order != o.order);
        Ok(s)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, Coeff::plus)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, Coeff::minus)
    }

    /// Cauchy product; the result order is `min(o_u + v(v), o_v + v(u))`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_var(o)?;
        let order = oadd(self.order, o.low).min(oadd(o.order, self.low));
        let lossy = self.lossy || o.lossy;
        if self.is_zero() || o.is_zero() {
            let mut z = Self::zero(self.var, order);
            z.lossy = lossy;
            return Ok(z);
        }
        let low = self.low + o.low;
        let n = ((self.coeffs.len() + o.coeffs.len() - 1) as i64).min(order - low).max(0) as usize;
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        let mut s = Self::new(self.var, low, out, order);
        s.lossy = lossy;
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::negated)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.map(|c| c.scaled(k))
    }

    /// Multiply every coefficient by a fixed ring element.
    pub fn times_coeff(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    /// Multiply by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        let mut s = Self::new(self.var, self.low + n, self.coeffs.clone(), oadd(self.order, n));
        s.lossy = self.lossy;
        s
    }

    /// Lower the truncation order to at most `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let mut s = Self::new(self.var, self.low, self.coeffs.clone(), self.order.min(order));
        s.lossy = self.lossy;
        s
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        let mut s = TruncSeries::new(self.var, self.low, self.coeffs.iter().map(f).collect(), self.order);
        s.lossy = self.lossy;
        s
    }

    pub fn with_var(&self, var: Var) -> Self {
        let mut s = self.clone();
        s.var = var;
        s
    }

    pub fn pow_int(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `(1 + ũ)^α` by the generalised binomial series.
    pub fn pow_rational(&self, alpha: &BigRational) -> Result<Self> {
        if self.low != 0 || !self.coeffs.first().is_some_and(Coeff::is_one) {
            return Err(Error::NotUnitSeries);
        }
        if self.is_exact() && !(alpha.is_integer() && alpha.cmp0() != std::cmp::Ordering::Less) {
            return Err(Error::Unbounded("a non-polynomial power"));
        }
        let u = self.sub(&Self::one(self.var))?;
        let kmax = if self.is_exact() {
            alpha.to_f64() as i64
        } else if u.is_zero() {
            0
        } else {
            (self.order - 1) / u.low.max(1)
        };
        let mut acc = Self::one(self.var).truncate(self.order);
        let mut power = Self::one(self.var);
        for k in 1..=kmax.max(0) {
            power = power.mul(&u)?.truncate(self.order);
            acc = acc.add(&power.scale(&binomial(alpha, k as u32)))?;
        }
        acc.lossy = self.lossy;
        Ok(acc)
    }

    /// Substitute `t = sub(s)`, lifting coefficients into the ring of `sub`.
    ///
    /// `cap`, when given, bounds the result order to save work.
    pub fn compose<D: Coeff>(&self, sub: &TruncSeries<D>, lift: impl Fn(&C) -> D, cap: Option<i64>) -> Result<TruncSeries<D>> {
        if !self.is_zero() && self.low < 0 {
            return Err(Error::LaurentCompose(self.low));
        }
        if sub.low < 1 {
            return Err(Error::NonzeroConstantTerm);
        }
        let v = sub.low;
        let kmin = self.terms().map(|(k, _)| k).find(|&k| k >= 1);
        let mut order = omul(self.order, v);
        if let Some(k) = kmin {
            order = order.min(oadd(sub.order, (k - 1) * v));
        }
        if let Some(c) = cap {
            order = order.min(c);
        }
        let mut acc = TruncSeries::<D>::zero(sub.var, order);
        let mut power = TruncSeries::<D>::one(sub.var);
        let mut k = 0;
        let last = self.top().unwrap_or(-1);
        while k <= last {
            if k >= 1 {
                power = power.mul(sub)?.truncate(order);
            }
            if power.low >= order {
                break;
            }
            let c = self.coeff(k).expect("below order");
            if !c.is_zero() {
                acc = acc.add(&power.times_coeff(&lift(&c)))?;
            }
            k += 1;
        }
        let mut out = acc.truncate(order);
        out.lossy = self.lossy || sub.lossy;
        Ok(out)
    }

    /// Strictly negative-exponent part; exact whenever the order is nonnegative.
    pub fn principal_part(&self) -> Self {
        let order = if self.order >= 0 { EXACT } else { self.order };
        let mut s = Self::new(self.var, self.low, self.terms_upto(0), order);
        s.lossy = self.lossy;
        s
    }

    /// Nonnegative-exponent part.
    pub fn analytic_part(&self) -> Self {
        let start = self.low.max(0);
        let coeffs: Vec<C> = (start..=self.top().unwrap_or(start - 1)).map(|k| self.coeff(k).unwrap()).collect();
        let mut s = Self::new(self.var, start, coeffs, self.order);
        s.lossy = self.lossy;
        s
    }

    fn terms_upto(&self, end: i64) -> Vec<C> {
        let hi = end.min(self.low + self.coeffs.len() as i64);
        (self.low..hi).map(|k| self.coeff(k).unwrap()).collect()
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms().map(|(k, c)| format!("({c})*{}^{k}", self.var)).collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.is_exact() {
            parts.push(format!("O({}^{})", self.var, self.order));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, BivarPoly, Poly1};

    type S = TruncSeries<BigRational>;

    fn s(low: i64, c: &[(i64, i64)], order: i64) -> S {
        S::new(Var::S, low, c.iter().map(|&(a, b)| q(a, b)).collect(), order)
    }

    #[test]
    fn products() {
        let a = s(0, &[(1, 1), (1, 1)], EXACT);
        let b = s(0, &[(1, 1), (-1, 1)], EXACT);
        assert_eq!(a.mul(&b).unwrap(), s(0, &[(1, 1), (0, 1), (-1, 1)], EXACT));
        let w = s(3, &[(1, 3), (0, 1), (1, 5)], 7);
        let sq = w.mul(&w).unwrap();
        assert_eq!(sq.order(), 10);
        assert_eq!(sq.truncate(9), s(6, &[(1, 9), (0, 1), (2, 15)], 9));
        let lm = S::monomial(Var::S, q(1, 1), -2).mul(&S::monomial(Var::S, q(1, 1), 3)).unwrap();
        assert_eq!(lm, S::monomial(Var::S, q(1, 1), 1));
        assert!(a.mul(&a.with_var(Var::H)).is_err());
    }

    #[test]
    fn rational_powers() {
        let r = s(0, &[(1, 1), (-2, 5), (43, 175)], 3);
        assert_eq!(r.pow_rational(&q(1, 4)).unwrap(), s(0, &[(1, 1), (-1, 10), (13, 280)], 3));
        assert_eq!(r.pow_rational(&q(-1, 4)).unwrap(), s(0, &[(1, 1), (1, 10), (-51, 1400)], 3));
        let geo = s(0, &[(1, 1), (1, 1)], 4).pow_rational(&q(-1, 1)).unwrap();
        assert_eq!(geo, s(0, &[(1, 1), (-1, 1), (1, 1), (-1, 1)], 4));
        assert!(s(0, &[(2, 1)], 3).pow_rational(&q(1, 2)).is_err());
    }

    #[test]
    fn composition_in_x() {
        // s ↦ −h(2x − h x²)
        let x = Poly1::<BigRational>::x();
        let sub = TruncSeries::exact(Var::H, 1, vec![x.scaled(&q(-2, 1)), x.times(&x)]);
        let lift = |c: &BigRational| Poly1::constant(c.clone());
        let id = S::monomial(Var::S, q(1, 1), 1);
        assert_eq!(id.compose(&sub, lift, None).unwrap(), sub);
        let sq = S::monomial(Var::S, q(1, 1), 2).compose(&sub, lift, None).unwrap();
        let x2 = x.times(&x);
        let expect = TruncSeries::exact(Var::H, 2, vec![x2.scaled(&q(4, 1)), x2.times(&x).scaled(&q(-4, 1)), x2.times(&x2)]);
        assert_eq!(sq, expect);
        let one_plus = s(0, &[(1, 1), (1, 1)], EXACT);
        let zero_sub = TruncSeries::<Poly1<BigRational>>::zero(Var::H, 5);
        let r = one_plus.compose(&zero_sub, lift, None).unwrap();
        assert_eq!(r.coeff(0), Some(Poly1::one()));
        assert!(one_plus.compose(&one_plus.map(lift), lift, None).is_err());
        let _ = BivarPoly::<BigRational>::zero();
    }

    #[test]
    fn parts() {
        let u = s(-2, &[(3, 1), (5, 1), (7, 1), (11, 1)], 4);
        assert_eq!(u.principal_part(), s(-2, &[(3, 1), (5, 1)], EXACT));
        assert_eq!(u.analytic_part(), s(0, &[(7, 1), (11, 1)], 4));
        assert!(s(0, &[(1, 1), (2, 1)], 5).principal_part().is_zero());
    }

    #[test]
    fn mixed_orders_flag_loss() {
        let a = s(0, &[(1, 1)], 3);
        let b = s(0, &[(1, 1)], 5);
        let c = a.add(&b).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.is_lossy());
        assert!(!a.add(&S::one(Var::S)).unwrap().is_lossy());
    }
}
