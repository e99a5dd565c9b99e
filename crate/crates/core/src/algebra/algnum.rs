use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{BigRational, Coeff};
use crate::error::{Error, Result};

/// An element `a + b√2 + c·i + d·i√2` of the field Q(i, √2).
///
/// Internally this is a complex number whose real and imaginary parts live in
/// Q(√2); the basis {1, √2, i, i√2} makes the representation unique.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgNum {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

// (p, q) stands for p + q√2.
fn r2_mul(p1: &BigRational, q1: &BigRational, p2: &BigRational, q2: &BigRational) -> (BigRational, BigRational) {
    let p = BigRational::from(p1 * p2) + BigRational::from(q1 * q2) * 2u32;
    let q = BigRational::from(p1 * q2) + BigRational::from(q1 * p2);
    (p, q)
}

impl AlgNum {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        AlgNum { a, b, c, d }
    }

    pub fn rational(a: BigRational) -> Self {
        AlgNum { a, ..Default::default() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from(n))
    }

    /// √2.
    pub fn sqrt2() -> Self {
        AlgNum { b: BigRational::from(1), ..Default::default() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        AlgNum { c: BigRational::from(1), ..Default::default() }
    }

    /// Complex conjugate (i ↦ −i).
    pub fn conj(&self) -> Self {
        AlgNum {
            a: self.a.clone(),
            b: self.b.clone(),
            c: BigRational::from(-&self.c),
            d: BigRational::from(-&self.d),
        }
    }

    /// `z · z̄`, an element of Q(√2) returned embedded in the field.
    pub fn norm(&self) -> Self {
        let (p1, q1) = r2_mul(&self.a, &self.b, &self.a, &self.b);
        let (p2, q2) = r2_mul(&self.c, &self.d, &self.c, &self.d);
        AlgNum { a: p1 + p2, b: q1 + q2, ..Default::default() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/z = z̄ / N with N = p + q√2, and 1/N = (p − q√2)/(p² − 2q²).
        let n = self.norm();
        let den = BigRational::from(&n.a * &n.a) - BigRational::from(&n.b * &n.b) * 2u32;
        let inv_n = AlgNum {
            a: BigRational::from(&n.a / &den),
            b: BigRational::from(-&n.b) / &den,
            ..Default::default()
        };
        Ok(self.conj().times(&inv_n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.inv()?))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Floating embedding with √2 ≈ 1.41421356… and i the complex unit.
    pub fn to_c64(&self) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2;
        (self.a.to_f64() + s * self.b.to_f64(), self.c.to_f64() + s * self.d.to_f64())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
}

impl Coeff for AlgNum {
    fn zero() -> Self {
        AlgNum::default()
    }
    fn one() -> Self {
        AlgNum::int(1)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        AlgNum {
            a: BigRational::from(&self.a + &o.a),
            b: BigRational::from(&self.b + &o.b),
            c: BigRational::from(&self.c + &o.c),
            d: BigRational::from(&self.d + &o.d),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        AlgNum {
            a: BigRational::from(&self.a - &o.a),
            b: BigRational::from(&self.b - &o.b),
            c: BigRational::from(&self.c - &o.c),
            d: BigRational::from(&self.d - &o.d),
        }
    }
    fn times(&self, o: &Self) -> Self {
        let (pp, pq) = r2_mul(&self.a, &self.b, &o.a, &o.b);
        let (qq, qq2) = r2_mul(&self.c, &self.d, &o.c, &o.d);
        let (x1, y1) = r2_mul(&self.a, &self.b, &o.c, &o.d);
        let (x2, y2) = r2_mul(&self.c, &self.d, &o.a, &o.b);
        AlgNum { a: pp - qq, b: pq - qq2, c: x1 + x2, d: y1 + y2 }
    }
    fn negated(&self) -> Self {
        AlgNum {
            a: BigRational::from(-&self.a),
            b: BigRational::from(-&self.b),
            c: BigRational::from(-&self.c),
            d: BigRational::from(-&self.d),
        }
    }
    fn scaled(&self, k: &BigRational) -> Self {
        AlgNum {
            a: BigRational::from(&self.a * k),
            b: BigRational::from(&self.b * k),
            c: BigRational::from(&self.c * k),
            d: BigRational::from(&self.d * k),
        }
    }
}

impl From<BigRational> for AlgNum {
    fn from(a: BigRational) -> Self {
        AlgNum::rational(a)
    }
}

impl From<i64> for AlgNum {
    fn from(n: i64) -> Self {
        AlgNum::int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&AlgNum> for &AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: &AlgNum) -> AlgNum {
                self.$f(rhs)
            }
        }
        impl $tr for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum {
                (&self).$f(&rhs)
            }
        }
    };
}
binop!(Add, add, plus);
binop!(Sub, sub, minus);
binop!(Mul, mul, times);

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.negated()
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.negated()
    }
}

impl AlgNum {
    /// Human-readable form listing only the nonzero parts, e.g. `-5/24√2`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = [(&self.a, ""), (&self.b, "√2"), (&self.c, "i"), (&self.d, "i√2")]
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, unit)| match (unit.is_empty(), c.to_string().as_str()) {
                (false, "1") => unit.to_string(),
                (false, "-1") => format!("-{unit}"),
                (_, v) => format!("{v}{unit}"),
            })
            .collect();
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Canonical text form `a + b*r2 + c*i + d*i*r2` with reduced fractions.
impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*r2 + {}*i + {}*i*r2", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgNum({self})")
    }
}

impl FromStr for AlgNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed AlgNum {s:?}"));
        let parts: Vec<&str> = s.split(" + ").map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let strip = |p: &str, suffix: &str| -> Result<BigRational> {
            let body = p.strip_suffix(suffix).ok_or_else(bad)?;
            body.trim().parse::<BigRational>().map_err(|_| bad())
        };
        Ok(AlgNum {
            a: strip(parts[0], "")?,
            b: strip(parts[1], "*r2")?,
            c: strip(parts[2], "*i")?,
            d: strip(parts[3], "*i*r2")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn defining_relations() {
        let s = AlgNum::sqrt2();
        assert_eq!(s.times(&s), AlgNum::int(2));
        let one_plus_i = AlgNum::int(1).plus(&AlgNum::i());
        assert_eq!(one_plus_i.times(&one_plus_i.conj()), AlgNum::int(2));
        assert_eq!(s.inv().unwrap(), AlgNum::sqrt2().scaled(&q(1, 2)));
        assert!(AlgNum::zero().inv().is_err());
    }

    #[test]
    fn inverse_of_mixed_element() {
        let z = AlgNum::new(q(1, 3), q(-2, 5), q(7, 2), q(1, 1));
        assert_eq!(z.times(&z.inv().unwrap()), AlgNum::one());
    }

    #[test]
    fn text_round_trip() {
        let z = AlgNum::new(q(1, 2), q(0, 1), q(-3, 1), q(5, 24));
        let s = z.to_string();
        assert_eq!(s, "1/2 + 0*r2 + -3*i + 5/24*i*r2");
        assert_eq!(z.compact(), "1/2 - 3i + 5/24i√2");
        assert_eq!(AlgNum::sqrt2().negated().compact(), "-√2");
        assert_eq!(s.parse::<AlgNum>().unwrap(), z);
        assert!("1 + 2".parse::<AlgNum>().is_err());
    }
}
