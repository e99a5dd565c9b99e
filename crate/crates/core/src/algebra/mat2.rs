use super::{BigRational, Coeff, TruncSeries, Var};
use crate::error::Result;

/// Plain 2×2 matrix, row-major.
pub type Mat2<T> = [[T; 2]; 2];

/// 2×2 matrix of truncated series sharing one formal variable.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2Series<C> {
    pub e: Mat2<TruncSeries<C>>,
}

impl<C: Coeff> Mat2Series<C> {
    pub fn new(e: Mat2<TruncSeries<C>>) -> Self {
        Mat2Series { e }
    }

    pub fn diag(a: TruncSeries<C>, d: TruncSeries<C>) -> Self {
        let var = a.var();
        Self::new([[a, TruncSeries::zero(var, super::EXACT)], [TruncSeries::zero(var, super::EXACT), d]])
    }

    pub fn identity(var: Var) -> Self {
        Self::diag(TruncSeries::one(var), TruncSeries::one(var))
    }

    pub fn zero(var: Var) -> Self {
        let z = || TruncSeries::zero(var, super::EXACT);
        Self::new([[z(), z()], [z(), z()]])
    }

    /// Constant σ₃ = diag(1, −1).
    pub fn sigma3(var: Var) -> Self {
        Self::diag(TruncSeries::one(var), TruncSeries::one(var).neg())
    }

    pub fn var(&self) -> Var {
        self.e[0][0].var()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let entry = |i: usize, j: usize| -> Result<TruncSeries<C>> { self.e[i][0].mul(&o.e[0][j])?.add(&self.e[i][1].mul(&o.e[1][j])?) };
        Ok(Self::new([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]]))
    }

    fn zip(&self, o: &Self, f: impl Fn(&TruncSeries<C>, &TruncSeries<C>) -> Result<TruncSeries<C>>) -> Result<Self> {
        Ok(Self::new([
            [f(&self.e[0][0], &o.e[0][0])?, f(&self.e[0][1], &o.e[0][1])?],
            [f(&self.e[1][0], &o.e[1][0])?, f(&self.e[1][1], &o.e[1][1])?],
        ]))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, TruncSeries::add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, TruncSeries::sub)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&TruncSeries<C>) -> TruncSeries<D>) -> Mat2Series<D> {
        Mat2Series::new([[f(&self.e[0][0]), f(&self.e[0][1])], [f(&self.e[1][0]), f(&self.e[1][1])]])
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&TruncSeries<C>) -> Result<TruncSeries<D>>) -> Result<Mat2Series<D>> {
        Ok(Mat2Series::new([[f(&self.e[0][0])?, f(&self.e[0][1])?], [f(&self.e[1][0])?, f(&self.e[1][1])?]]))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.map(|s| s.scale(k))
    }

    pub fn neg(&self) -> Self {
        self.map(TruncSeries::neg)
    }

    pub fn truncate(&self, order: i64) -> Self {
        self.map(|s| s.truncate(order))
    }

    pub fn principal_part(&self) -> Self {
        self.map(TruncSeries::principal_part)
    }

    pub fn analytic_part(&self) -> Self {
        self.map(TruncSeries::analytic_part)
    }

    /// Minimum truncation order over the four entries.
    pub fn order(&self) -> i64 {
        self.e.iter().flatten().map(TruncSeries::order).min().unwrap()
    }

    pub fn det(&self) -> Result<TruncSeries<C>> {
        self.e[0][0].mul(&self.e[1][1])?.sub(&self.e[0][1].mul(&self.e[1][0])?)
    }

    /// Adjugate; equals the inverse when the determinant is one.
    pub fn adjugate(&self) -> Self {
        Self::new([[self.e[1][1].clone(), self.e[0][1].neg()], [self.e[1][0].neg(), self.e[0][0].clone()]])
    }

    pub fn is_diagonal(&self) -> bool {
        self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    pub fn is_off_diagonal(&self) -> bool {
        self.e[0][0].is_zero() && self.e[1][1].is_zero()
    }
}
