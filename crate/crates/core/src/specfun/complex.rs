use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

/// A complex number as a pair of MPFR floats sharing one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    /// `e^{iθ}`.
    pub fn expi(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        BigComplex { re: c, im: s }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex { re: Float::with_val(self.im.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn div_u64(&self, d: u64) -> Self {
        BigComplex { re: Float::with_val(self.re.prec(), &self.re / d), im: Float::with_val(self.im.prec(), &self.im / d) }
    }

    /// `|z|` to a few significant bits, for error bookkeeping.
    pub fn magnitude(&self) -> Float {
        Float::with_val(32, &self.re).hypot(&Float::with_val(32, &self.im))
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().square() + self.im.clone().square())
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re / &n), im: Float::with_val(p, -(&self.im / n)) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.recip()
    }

    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        BigComplex::expi(&self.im).scale(&r)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        BigComplex { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal square root, cut along the negative reals (upper side by default).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let negative_im = self.im.is_sign_negative() && !self.im.is_zero();
        if self.re >= 0 {
            let re = (Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / &re) / 2u32;
            BigComplex { re, im }
        } else {
            let mut im = (Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            let re = Float::with_val(p, self.im.clone().abs() / &im) / 2u32;
            if negative_im {
                im = -im;
            }
            BigComplex { re, im }
        }
    }

    /// Principal power `exp(a · ln z)`.
    pub fn powf(&self, a: &Float) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.ln().scale(a).exp()
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(BigComplex::one(self.prec()), |acc, _| &acc * self)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_c64();
        write!(f, "{a:e}{}{:e}i", if b < 0.0 { "-" } else { "+" }, b.abs())
    }
}

/// 2×2 complex matrices.
pub type CMat = [[BigComplex; 2]; 2];

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

pub fn cmat_det(a: &CMat) -> BigComplex {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

pub fn cmat_inv(a: &CMat) -> CMat {
    let d = cmat_det(a).recip();
    [[&a[1][1] * &d, -&(&a[0][1] * &d)], [-&(&a[1][0] * &d), &a[0][0] * &d]]
}

/// Largest entrywise modulus of `a − b`.
pub fn cmat_max_diff(a: &CMat, b: &CMat) -> f64 {
    (0..4).map(|k| (&a[k / 2][k % 2] - &b[k / 2][k % 2]).abs().to_f64()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_identities() {
        let p = 128;
        let z = BigComplex::from_f64(p, -3.0, 4.0);
        let s = z.sqrt();
        assert!((&(&s * &s) - &z).abs().to_f64() < 1e-35);
        assert_eq!(s.to_c64(), (1.0, 2.0));
        let e = z.ln().exp();
        assert!((&e - &z).abs().to_f64() < 1e-35);
        let w = z.div(&BigComplex::from_f64(p, 0.0, 2.0));
        assert_eq!(w.to_c64(), (2.0, 1.5));
        let neg = BigComplex::from_f64(p, -4.0, 0.0);
        assert_eq!(neg.sqrt().to_c64(), (0.0, 2.0));
        let below = BigComplex::new(Float::with_val(p, -4.0), Float::with_val(p, -1e-30));
        assert!(below.sqrt().im < 0.0);
    }
}
