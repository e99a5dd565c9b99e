use std::fmt;

use super::{AlgNum, BigRational, Coeff};
use crate::error::{Error, Result};

/// A constant `c · 2^p` with `c ∈ Q(i, √2)` and rational `p`.
///
/// Fractional powers of two such as 2^{-2/3} stay symbolic until they cancel;
/// converting to [`AlgNum`] demands `p ∈ ½ℤ`.
#[derive(Clone, PartialEq, Debug)]
pub struct SymConst {
    pub coeff: AlgNum,
    pub pow2: BigRational,
}

impl SymConst {
    pub fn new(coeff: AlgNum, pow2: BigRational) -> Self {
        SymConst { coeff, pow2 }
    }

    pub fn pow2(p: BigRational) -> Self {
        SymConst { coeff: AlgNum::one(), pow2: p }
    }

    pub fn from_alg(coeff: AlgNum) -> Self {
        SymConst { coeff, pow2: BigRational::new() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SymConst { coeff: self.coeff.times(&o.coeff), pow2: BigRational::from(&self.pow2 + &o.pow2) }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(SymConst { coeff: self.coeff.inv()?, pow2: BigRational::from(-&self.pow2) })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok(SymConst { coeff: base.coeff.pow(n.unsigned_abs() as u32), pow2: BigRational::from(&self.pow2 * n) })
    }

    /// Collapse into Q(i, √2); fails when a cube or fourth root of two survives.
    pub fn to_algnum(&self) -> Result<AlgNum> {
        let twice = BigRational::from(&self.pow2 * 2u32);
        if !twice.is_integer() {
            return Err(Error::OutsideField(format!("2^({}) remains", self.pow2)));
        }
        let n = twice.numer().to_i64().ok_or_else(|| Error::OutsideField("huge power of two".into()))?;
        let whole = n.div_euclid(2);
        let mut out = self.coeff.scaled(&pow2_rational(whole));
        if n.rem_euclid(2) == 1 {
            out = out.times(&AlgNum::sqrt2());
        }
        Ok(out)
    }
}

fn pow2_rational(k: i64) -> BigRational {
    let p = rug::Integer::from(1) << (k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from(p)
    } else {
        BigRational::from((rug::Integer::from(1), p))
    }
}

impl fmt::Display for SymConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * 2^({})", self.coeff, self.pow2)
    }
}
