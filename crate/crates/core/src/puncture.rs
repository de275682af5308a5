//! Punctured invariants `N_{pqr}^d`: contact orders `p`, `q` at two marked
//! points and `-r` at a point-constrained puncture, in degree `d`.

use std::fmt;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::table::{degree_zero_three_point, InvariantTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PuncturedQuery {
    pub p: u32,
    pub q: u32,
    /// Negated contact order at the puncture.
    pub r: u32,
    pub d: u32,
}

impl PuncturedQuery {
    pub fn new(p: u32, q: u32, r: u32, d: u32) -> Self {
        PuncturedQuery { p, q, r, d }
    }

    /// `p + q - r = 3d`.
    pub fn is_graded(&self) -> bool {
        self.p as i64 + self.q as i64 - self.r as i64 == 3 * self.d as i64
    }

    pub fn swapped(&self) -> Self {
        PuncturedQuery {
            p: self.q,
            q: self.p,
            ..*self
        }
    }
}

impl fmt::Display for PuncturedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N_{{{},{},{}}}^{}", self.p, self.q, self.r, self.d)
    }
}

/// Evaluates `N_{pqr}^d`:
/// degree 0 is 1 exactly when `r = p + q`; `r = 0` is the ordinary
/// three-point invariant; otherwise
/// `(q - r) N_{p,q-r} + (p - r) N_{q,p-r}`.
pub fn punctured_invariant(query: PuncturedQuery, table: &InvariantTable) -> Result<Rational> {
    let PuncturedQuery { p, q, r, d } = query;
    if !query.is_graded() {
        return Err(Error::GradingViolation { p, q, r, d });
    }
    let (p, q, r) = (p as i64, q as i64, r as i64);
    if d == 0 {
        return Ok(degree_zero_three_point(p, q, r));
    }
    if r == 0 {
        return table.three_point_r0(p, q);
    }
    let left = table.two_point(p, q - r)? * Rational::from_integer(q - r);
    let right = table.two_point(q, p - r)? * Rational::from_integer(p - r);
    Ok(left + right)
}

/// Like [`punctured_invariant`], but off-grade queries evaluate to 0.
pub fn punctured_invariant_lenient(query: PuncturedQuery, table: &InvariantTable) -> Result<Rational> {
    if !query.is_graded() {
        return Ok(Rational::zero());
    }
    punctured_invariant(query, table)
}

/// Every graded query of degree `d` with `0 <= p, q <= cap`, evaluated.
pub fn punctured_table(d: u32, table: &InvariantTable, cap: u32) -> Result<Vec<(PuncturedQuery, Rational)>> {
    let mut out = Vec::new();
    for p in 0..=cap {
        for q in 0..=cap {
            let Some(r) = (p + q).checked_sub(3 * d) else { continue };
            let query = PuncturedQuery::new(p, q, r, d);
            out.push((query, punctured_invariant(query, table)?));
        }
    }
    Ok(out)
}
