//! Exact scalars: rationals, affine linear forms, and truncated series over
//! either.

mod linform;
mod rational;
mod series;

use std::fmt::{Debug, Display};

pub use linform::{LinForm, UnknownId};
pub use rational::Rational;
pub use series::TruncSeries;

use crate::error::Result;

/// Coefficient type of series and ring elements.
///
/// `Rational` is used once a degree is solved, `LinForm` while its
/// invariants are still unknowns.
pub trait Scalar: Clone + Debug + Display + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, rhs: &Self);
    fn neg(&self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    /// The value, when no unknowns are involved.
    fn as_constant(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn as_constant(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for LinForm {
    fn zero() -> Self {
        LinForm::zero()
    }
    fn one() -> Self {
        LinForm::constant(Rational::one())
    }
    fn from_rational(r: Rational) -> Self {
        LinForm::constant(r)
    }
    fn is_zero(&self) -> bool {
        LinForm::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self) {
        LinForm::add_assign(self, rhs);
    }
    fn neg(&self) -> Self {
        LinForm::neg(self)
    }
    fn scale(&self, k: &Rational) -> Self {
        LinForm::scale(self, k)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        LinForm::try_mul(self, rhs)
    }
    fn as_constant(&self) -> Option<Rational> {
        LinForm::as_constant(self).cloned()
    }
}
