use std::fmt;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Polynomial in `t` truncated above degree `bound` (inclusive).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncSeries<S> {
    pub fn zero(bound: usize) -> Self {
        TruncSeries {
            coeffs: vec![S::zero(); bound + 1],
        }
    }

    pub fn one(bound: usize) -> Self {
        Self::monomial(0, S::one(), bound)
    }

    /// `c * t^k`, or zero when `k > bound`.
    pub fn monomial(k: usize, c: S, bound: usize) -> Self {
        let mut s = Self::zero(bound);
        if k <= bound {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from coefficients of `t^0, t^1, ...`, dropping those
    /// above `bound`.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = S>, bound: usize) -> Self {
        let mut s = Self::zero(bound);
        for (k, c) in coeffs.into_iter().enumerate().take(bound + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Option<&S> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Adds `c * t^k`; ignored when `k > bound`.
    pub fn add_monomial(&mut self, k: usize, c: &S) {
        if let Some(slot) = self.coeffs.get_mut(k) {
            slot.add_assign(c);
        }
    }

    fn check_bound(&self, rhs: &Self) -> Result<()> {
        if self.bound() != rhs.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound(),
                right: rhs.bound(),
            });
        }
        Ok(())
    }

    pub fn try_add_assign(&mut self, rhs: &Self) -> Result<()> {
        self.check_bound(rhs)?;
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign(b);
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.try_add_assign(rhs)?;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(S::neg).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Cauchy product truncated at the shared bound. Only pairs with
    /// `i + j <= bound` are ever multiplied.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_bound(rhs)?;
        let bound = self.bound();
        let mut out = Self::zero(bound);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=bound - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j].add_assign(&a.try_mul(b)?);
            }
        }
        Ok(out)
    }

    /// Nonzero `(k, coeff)` pairs in increasing `k`.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl<S: Scalar> fmt::Display for TruncSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.nonzero_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}) t")?,
                _ => write!(f, "({c}) t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
