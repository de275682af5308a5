use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// An unknown invariant of the degree-by-degree system.
///
/// Three-point keys are stored with `a <= b`; two-point keys are ordered
/// because `N_{a,b}` and `N_{b,a}` count different curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnknownId {
    TwoPoint { a: i64, b: i64 },
    ThreePointR0 { a: i64, b: i64, d: i64 },
}

impl UnknownId {
    pub fn two_point(a: i64, b: i64) -> Self {
        UnknownId::TwoPoint { a, b }
    }

    /// Canonicalizes the key to `a <= b`; the degree is `(a + b) / 3`.
    pub fn three_point_r0(a: i64, b: i64) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        UnknownId::ThreePointR0 { a, b, d: (a + b) / 3 }
    }

    pub fn degree(&self) -> i64 {
        match *self {
            UnknownId::TwoPoint { a, b } => (a + b) / 3,
            UnknownId::ThreePointR0 { d, .. } => d,
        }
    }

    /// Machine-friendly key, e.g. `N_2_4` or `N_1_5_0^2`.
    pub fn key(&self) -> String {
        match *self {
            UnknownId::TwoPoint { a, b } => format!("N_{a}_{b}"),
            UnknownId::ThreePointR0 { a, b, d } => format!("N_{a}_{b}_0^{d}"),
        }
    }
}

impl fmt::Display for UnknownId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            UnknownId::TwoPoint { a, b } => write!(f, "N_{{{a},{b}}}"),
            UnknownId::ThreePointR0 { a, b, d } if (0..10).contains(&a) && (0..10).contains(&b) => {
                write!(f, "N_{{{a}{b}0}}^{d}")
            }
            UnknownId::ThreePointR0 { a, b, d } => write!(f, "N_{{{a},{b},0}}^{d}"),
        }
    }
}

/// Affine linear form `constant + sum(coeff * unknown)` over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    constant: Rational,
    terms: BTreeMap<UnknownId, Rational>,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinForm {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn unknown(id: UnknownId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, Rational::one());
        LinForm {
            constant: Rational::zero(),
            terms,
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<UnknownId, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, id: &UnknownId) -> Rational {
        self.terms.get(id).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// The constant value, if the form has no unknowns.
    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.constant)
    }

    pub fn add_term(&mut self, id: UnknownId, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(id).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn add(&self, rhs: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &LinForm) {
        self.constant += &rhs.constant;
        for (id, c) in &rhs.terms {
            self.add_term(*id, c);
        }
    }

    pub fn sub(&self, rhs: &LinForm) -> LinForm {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LinForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> LinForm {
        if k.is_zero() {
            return LinForm::zero();
        }
        LinForm {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(id, c)| (*id, c * k)).collect(),
        }
    }

    /// Product of two forms, at least one of which must be constant.
    pub fn try_mul(&self, rhs: &LinForm) -> Result<LinForm> {
        match (self.as_constant(), rhs.as_constant()) {
            (Some(c), _) => Ok(rhs.scale(c)),
            (_, Some(c)) => Ok(self.scale(c)),
            (None, None) => Err(Error::NonlinearTerm {
                left: self.to_string(),
                right: rhs.to_string(),
            }),
        }
    }

    /// Replaces the given unknowns by values; the others are kept.
    pub fn substitute(&self, values: &BTreeMap<UnknownId, Rational>) -> LinForm {
        let mut out = LinForm::constant(self.constant.clone());
        for (id, c) in &self.terms {
            match values.get(id) {
                Some(v) => out.constant += &(c * v),
                None => out.add_term(*id, c),
            }
        }
        out
    }

    /// Evaluates under a full assignment.
    pub fn evaluate(&self, values: &BTreeMap<UnknownId, Rational>) -> Result<Rational> {
        let mut acc = self.constant.clone();
        for (id, c) in &self.terms {
            let v = values.get(id).ok_or(Error::MissingUnknown(*id))?;
            acc += &(c * v);
        }
        Ok(acc)
    }

    /// Scales so the first unknown (or, failing that, the constant) has
    /// coefficient 1.
    pub fn normalized(&self) -> LinForm {
        let lead = self.terms.values().next().unwrap_or(&self.constant);
        match lead.recip() {
            Ok(inv) => self.scale(&inv),
            Err(_) => LinForm::zero(),
        }
    }
}

impl From<Rational> for LinForm {
    fn from(c: Rational) -> Self {
        LinForm::constant(c)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (id, c) in &self.terms {
            let neg = !c.is_positive();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag != Rational::one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{id}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_positive() {
            write!(f, " + {}", self.constant)
        } else if !self.constant.is_zero() {
            write!(f, " - {}", -&self.constant)
        } else {
            Ok(())
        }
    }
}
