//! Exact arithmetic substrate.
//!
//! Rationals come from GMP through `rug`; everything above them (the field
//! Q(i, √2), dense and sparse polynomials, truncated Laurent series and 2×2
//! matrices of series) is generic over the [`Coeff`] ring trait.

mod algnum;
mod mat2;
mod poly;
mod series;
mod symconst;

use std::fmt;

pub use algnum::AlgNum;
pub use mat2::{Mat2, Mat2Series};
pub use poly::{BivarPoly, Poly1};
pub use series::{TruncSeries, EXACT};
pub use symconst::SymConst;

/// Arbitrary-size rational, always reduced with positive denominator.
pub type BigRational = rug::Rational;

/// Build a rational from a numerator/denominator pair of machine integers.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::from((num, den))
}

/// A commutative Q-algebra usable as a polynomial or series coefficient.
///
/// Method names avoid `add`/`mul` so they never collide with `std::ops`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, k: &BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_rational(k: &BigRational) -> Self {
        Self::one().scaled(k)
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        BigRational::new()
    }
    fn one() -> Self {
        BigRational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn plus(&self, other: &Self) -> Self {
        BigRational::from(self + other)
    }
    fn minus(&self, other: &Self) -> Self {
        BigRational::from(self - other)
    }
    fn times(&self, other: &Self) -> Self {
        BigRational::from(self * other)
    }
    fn negated(&self) -> Self {
        BigRational::from(-self)
    }
    fn scaled(&self, k: &BigRational) -> Self {
        BigRational::from(self * k)
    }
}

/// Formal variable carried by a [`TruncSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The local variable `z - 1` at the turning point.
    Z1,
    /// `w = (1 - z)^{1/2}`.
    W,
    /// The scaling parameter `h = 2^{-1/3} ν^{-2/3}`.
    H,
    /// A generic variable, used in tests and examples.
    S,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Z1 => "(z-1)",
            Var::W => "w",
            Var::H => "h",
            Var::S => "s",
        })
    }
}

/// Generalised binomial coefficient C(α, k) over the rationals.
pub fn binomial(alpha: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::from(1);
    for i in 0..k {
        let num = BigRational::from(alpha - BigRational::from(i));
        acc *= num;
        acc /= BigRational::from(i + 1);
    }
    acc
}

/// n! as a rational.
pub fn factorial(n: u32) -> BigRational {
    BigRational::from(rug::Integer::from(rug::Integer::factorial(n)))
}
