use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use super::{BigRational, Coeff};
use crate::error::{Error, Result};

/// Dense univariate polynomial, trailing zeros trimmed.
///
/// The zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly1<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly1<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scaled(&BigRational::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly1<D> {
        Poly1::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Coeff for Poly1<C> {
    fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect())
    }
    fn minus(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }
    fn negated(&self) -> Self {
        self.map(Coeff::negated)
    }
    fn scaled(&self, k: &BigRational) -> Self {
        self.map(|c| c.scaled(k))
    }
}

impl<C: Coeff> fmt::Display for Poly1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Sparse bivariate polynomial in x, y keyed by `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BivarPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> BivarPoly<C> {
    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), C)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn constant(c: C) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), C::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), C::one())])
    }

    /// Embed a univariate polynomial as a polynomial in x alone.
    pub fn from_x(p: &Poly1<C>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())))
    }

    /// Embed a univariate polynomial as a polynomial in y alone.
    pub fn from_y(p: &Poly1<C>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| ((0, k as u32), c.clone())))
    }

    fn add_term(&mut self, k: (u32, u32), c: &C) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.get(&k) {
            Some(old) => old.plus(c),
            None => c.clone(),
        };
        if merged.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, merged);
        }
    }

    pub fn get(&self, dx: u32, dy: u32) -> C {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Terms in graded order: total degree descending, then x-degree descending.
    pub fn graded_terms(&self) -> Vec<((u32, u32), C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|((a, b), _)| (Reverse(a + b), Reverse(*a)));
        v
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_xy()
    }

    /// Restriction to the diagonal y = x.
    pub fn diagonal(&self) -> Poly1<C> {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut v = vec![C::zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            let k = (a + b) as usize;
            v[k] = v[k].plus(c);
        }
        Poly1::new(v)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BivarPoly<D> {
        BivarPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Fallible coefficient map, e.g. to project onto the rationals.
    pub fn try_map<D: Coeff, E>(&self, f: impl Fn(&C) -> std::result::Result<D, E>) -> std::result::Result<BivarPoly<D>, E> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            out.push((*k, f(c)?));
        }
        Ok(BivarPoly::from_terms(out))
    }

    /// Evaluate with caller-supplied arithmetic on the monomials.
    pub fn eval_with<T>(&self, mut term: impl FnMut(u32, u32, &C) -> T, mut sum: impl FnMut(T, T) -> T, zero: T) -> T {
        let mut acc = zero;
        for (&(a, b), c) in &self.terms {
            acc = sum(acc, term(a, b, c));
        }
        acc
    }

    /// Exact quotient by (x − y).
    ///
    /// Synthetic division in x over C[y]; a nonzero remainder is an error
    /// that carries the remainder, a polynomial in y.
    pub fn exact_divide_x_minus_y(&self) -> Result<Self> {
        let Some(dx_max) = self.terms.keys().map(|k| k.0).max() else {
            return Ok(Self::zero());
        };
        let mut rows: Vec<Poly1<C>> = vec![Poly1::zero(); dx_max as usize + 1];
        for (&(a, b), c) in &self.terms {
            let r = &mut rows[a as usize];
            *r = r.plus(&Poly1::monomial(c.clone(), b as usize));
        }
        let y = Poly1::<C>::x();
        let mut quotient: Vec<Poly1<C>> = vec![Poly1::zero(); dx_max as usize];
        let mut carry = Poly1::zero();
        for i in (1..=dx_max as usize).rev() {
            carry = rows[i].plus(&y.times(&carry));
            quotient[i - 1] = carry.clone();
        }
        let remainder = rows[0].plus(&y.times(&carry));
        if !remainder.is_zero() {
            return Err(Error::NotDivisible(remainder.to_string().replace('x', "y")));
        }
        let mut out = Self::zero();
        for (i, row) in quotient.iter().enumerate() {
            for (k, c) in row.coeffs().iter().enumerate() {
                out.add_term((i as u32, k as u32), c);
            }
        }
        Ok(out)
    }
}

impl<C: Coeff> Coeff for BivarPoly<C> {
    fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, &c.negated());
        }
        out
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), &c1.times(c2));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        self.map(Coeff::negated)
    }
    fn scaled(&self, k: &BigRational) -> Self {
        self.map(|c| c.scaled(k))
    }
}

impl<C: Coeff> fmt::Display for BivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .graded_terms()
            .into_iter()
            .map(|((a, b), c)| {
                let mut s = format!("({c})");
                match a {
                    0 => {}
                    1 => s.push_str("*x"),
                    _ => s.push_str(&format!("*x^{a}")),
                }
                match b {
                    0 => {}
                    1 => s.push_str("*y"),
                    _ => s.push_str(&format!("*y^{b}")),
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    type P = BivarPoly<BigRational>;

    fn xy(a: u32, b: u32, c: i64) -> P {
        P::from_terms([((a, b), BigRational::from(c))])
    }

    #[test]
    fn divide_cubes() {
        let p = xy(0, 3, 1).minus(&xy(3, 0, 1));
        let expected = xy(2, 0, -1).plus(&xy(1, 1, -1)).plus(&xy(0, 2, -1));
        assert_eq!(p.exact_divide_x_minus_y().unwrap(), expected);
        assert_eq!(xy(1, 0, 1).minus(&xy(0, 1, 1)).exact_divide_x_minus_y().unwrap(), P::one());
        assert!(matches!(xy(2, 0, 1).plus(&xy(0, 2, 1)).exact_divide_x_minus_y(), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn poly1_basics() {
        let x = Poly1::<BigRational>::x();
        let p = x.times(&x).plus(&Poly1::constant(q(2, 1)));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&q(3, 1)), q(11, 1));
        assert_eq!(p.derivative(), x.scaled(&q(2, 1)));
        assert_eq!(Poly1::<BigRational>::zero().degree(), None);
        assert_eq!(p.minus(&p), Poly1::zero());
    }

    #[test]
    fn graded_order_and_diagonal() {
        let p = xy(0, 2, 1).plus(&xy(2, 0, 1)).plus(&xy(1, 1, 1)).plus(&xy(0, 0, 5));
        let keys: Vec<_> = p.graded_terms().into_iter().map(|(k, _)| k).collect();
        assert_eq!(keys, vec![(2, 0), (1, 1), (0, 2), (0, 0)]);
        assert_eq!(p.diagonal(), Poly1::new(vec![q(5, 1), q(0, 1), q(3, 1)]));
        assert!(p.is_symmetric());
    }
}
