//! The ring `R = ⊕ θ_p Q[t]` and its multiplication law.
//!
//! The product of two generators is
//!
//! ```text
//! θ_p·θ_q = θ_{p+q} + N_{pq0}^{(p+q)/3} t^{(p+q)/3} θ_0
//!         + Σ_{r=1}^{max(p,q)} [(q-r) N_{p,q-r} + (p-r) N_{q,p-r}] t^{(p+q-r)/3} θ_r
//! ```
//!
//! where terms with a non-integral `t` exponent, or an exponent above the
//! truncation bound, are never generated.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::arith::{LinForm, Rational, Scalar, TruncSeries, UnknownId};
use crate::error::{Error, Result};
use crate::table::{InvariantTable, Lookup};

static GRADING_VIOLATIONS: AtomicU64 = AtomicU64::new(0);
static TERMS_EMITTED: AtomicU64 = AtomicU64::new(0);

/// Number of basis-product terms ever emitted with `p + q - r != 3k`.
pub fn grading_violations() -> u64 {
    GRADING_VIOLATIONS.load(Ordering::Relaxed)
}

/// Number of basis-product terms emitted so far by this process.
pub fn terms_emitted() -> u64 {
    TERMS_EMITTED.load(Ordering::Relaxed)
}

/// Source of the structure constants `N_{a,b}` and `N_{ab0}^d`.
pub trait StructureConstants {
    type Scalar: Scalar;
    fn two_point(&self, a: i64, b: i64) -> Result<Self::Scalar>;
    fn three_point_r0(&self, a: i64, b: i64) -> Result<Self::Scalar>;
}

impl StructureConstants for InvariantTable {
    type Scalar = Rational;

    fn two_point(&self, a: i64, b: i64) -> Result<Rational> {
        InvariantTable::two_point(self, a, b)
    }

    fn three_point_r0(&self, a: i64, b: i64) -> Result<Rational> {
        InvariantTable::three_point_r0(self, a, b)
    }
}

/// Solved lower degrees plus unknowns at one working degree, some of which
/// may be pinned to known values.
#[derive(Clone, Debug)]
pub struct SymbolicTable<'a> {
    table: &'a InvariantTable,
    degree: u32,
    pinned: BTreeMap<UnknownId, Rational>,
}

impl<'a> SymbolicTable<'a> {
    pub fn new(table: &'a InvariantTable, degree: u32) -> Self {
        SymbolicTable {
            table,
            degree,
            pinned: BTreeMap::new(),
        }
    }

    pub fn with_pins(table: &'a InvariantTable, degree: u32, pinned: BTreeMap<UnknownId, Rational>) -> Self {
        SymbolicTable { table, degree, pinned }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn pinned(&self) -> &BTreeMap<UnknownId, Rational> {
        &self.pinned
    }

    fn mode(&self) -> Lookup {
        Lookup::Symbolic { degree: self.degree }
    }

    fn resolve(&self, form: LinForm) -> LinForm {
        if self.pinned.is_empty() || form.is_constant() {
            form
        } else {
            form.substitute(&self.pinned)
        }
    }
}

impl StructureConstants for SymbolicTable<'_> {
    type Scalar = LinForm;

    fn two_point(&self, a: i64, b: i64) -> Result<LinForm> {
        Ok(self.resolve(self.table.get_two_point(a, b, self.mode())?))
    }

    fn three_point_r0(&self, a: i64, b: i64) -> Result<LinForm> {
        Ok(self.resolve(self.table.get_three_point_r0(a, b, self.mode())?))
    }
}

/// A finite sum `Σ θ_p f_p(t)` with every `f_p` truncated at one bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaElement<S> {
    bound: usize,
    terms: BTreeMap<u32, TruncSeries<S>>,
}

impl<S: Scalar> ThetaElement<S> {
    pub fn zero(bound: usize) -> Self {
        ThetaElement {
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// The generator `θ_p`.
    pub fn theta(p: u32, bound: usize) -> Self {
        let mut x = Self::zero(bound);
        x.terms.insert(p, TruncSeries::one(bound));
        x
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Generator indices with a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> &BTreeMap<u32, TruncSeries<S>> {
        &self.terms
    }

    pub fn series(&self, p: u32) -> Option<&TruncSeries<S>> {
        self.terms.get(&p)
    }

    /// Coefficient of `t^k θ_p`.
    pub fn coeff(&self, p: u32, k: usize) -> S {
        self.terms
            .get(&p)
            .and_then(|s| s.coeff(k))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c t^k θ_p`.
    pub fn add_monomial(&mut self, p: u32, k: usize, c: &S) {
        if c.is_zero() || k > self.bound {
            return;
        }
        let bound = self.bound;
        let s = self.terms.entry(p).or_insert_with(|| TruncSeries::zero(bound));
        s.add_monomial(k, c);
        if s.is_zero() {
            self.terms.remove(&p);
        }
    }

    /// Adds `f(t) θ_p`.
    pub fn add_series(&mut self, p: u32, f: &TruncSeries<S>) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&p) {
            Some(s) => {
                s.try_add_assign(f)?;
                if s.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                if f.bound() != self.bound {
                    return Err(Error::BoundMismatch {
                        left: self.bound,
                        right: f.bound(),
                    });
                }
                self.terms.insert(p, f.clone());
            }
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_bound(rhs)?;
        let mut out = self.clone();
        for (p, s) in &rhs.terms {
            out.add_series(*p, s)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_bound(rhs)?;
        let mut out = self.clone();
        for (p, s) in &rhs.terms {
            out.add_series(*p, &s.neg())?;
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `f(t)`.
    pub fn mul_series(&self, f: &TruncSeries<S>) -> Result<Self> {
        let mut out = Self::zero(self.bound);
        for (p, s) in &self.terms {
            out.add_series(*p, &s.try_mul(f)?)?;
        }
        Ok(out)
    }

    fn check_bound(&self, rhs: &Self) -> Result<()> {
        if self.bound != rhs.bound {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: rhs.bound,
            });
        }
        Ok(())
    }

    /// Human-readable form, highest generator first, e.g.
    /// `θ_6 + 2 t θ_3 + 30 t^2 θ_0`. With `ascii`, generators print as
    /// `theta_p`.
    pub fn render(&self, ascii: bool) -> String {
        let theta = if ascii { "theta_" } else { "θ_" };
        let mut out = String::new();
        for (p, s) in self.terms.iter().rev() {
            for (k, c) in s.nonzero_terms() {
                let tpow = match k {
                    0 => String::new(),
                    1 => "t ".to_string(),
                    _ => format!("t^{k} "),
                };
                let (neg, coef) = match c.as_constant() {
                    Some(r) if r.is_positive() => (false, r),
                    Some(r) => (true, -r),
                    None => (false, Rational::zero()),
                };
                let coef = match c.as_constant() {
                    None => format!("({c}) "),
                    Some(_) if coef == Rational::one() => String::new(),
                    Some(_) => format!("{coef} "),
                };
                match (out.is_empty(), neg) {
                    (true, true) => out.push('-'),
                    (true, false) => {}
                    (false, true) => out.push_str(" - "),
                    (false, false) => out.push_str(" + "),
                }
                out.push_str(&format!("{coef}{tpow}{theta}{p}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl ThetaElement<Rational> {
    pub fn to_doc(&self) -> ElementDoc {
        ElementDoc {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(p, s)| GeneratorTerm {
                    p: *p,
                    series: s
                        .nonzero_terms()
                        .map(|(k, c)| SeriesTerm { k, value: c.clone() })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for ThetaElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// JSON form of a concrete ring element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub terms: Vec<GeneratorTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTerm {
    pub p: u32,
    pub series: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub k: usize,
    pub value: Rational,
}

fn emit<S: Scalar>(out: &mut ThetaElement<S>, (p, q): (u32, u32), r: u32, k: usize, c: &S) {
    TERMS_EMITTED.fetch_add(1, Ordering::Relaxed);
    if p as usize + q as usize != r as usize + 3 * k {
        GRADING_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        debug_assert!(false, "grading violation: θ_{p}·θ_{q} -> t^{k} θ_{r}");
    }
    out.add_monomial(r, k, c);
}

/// `θ_p · θ_q` truncated at `bound`.
pub fn mul_basis<C: StructureConstants>(p: u32, q: u32, bound: usize, consts: &C) -> Result<ThetaElement<C::Scalar>> {
    let mut out = ThetaElement::zero(bound);
    let pair = (p, q);
    emit(&mut out, pair, p + q, 0, &C::Scalar::one());

    let (pi, qi) = (p as i64, q as i64);
    let total = pi + qi;
    // The t^0 contribution of this term is already θ_{p+q}.
    if total > 0 && total % 3 == 0 && (total / 3) as usize <= bound {
        let c = consts.three_point_r0(pi, qi)?;
        emit(&mut out, pair, 0, (total / 3) as usize, &c);
    }
    for r in 1..=p.max(q) {
        let ri = r as i64;
        let rest = total - ri;
        if rest % 3 != 0 || (rest / 3) as usize > bound {
            continue;
        }
        let mut c = consts.two_point(pi, qi - ri)?.scale(&Rational::from_integer(qi - ri));
        c.add_assign(&consts.two_point(qi, pi - ri)?.scale(&Rational::from_integer(pi - ri)));
        emit(&mut out, pair, r, (rest / 3) as usize, &c);
    }
    Ok(out)
}

/// Bilinear extension of [`mul_basis`].
pub fn mul<C: StructureConstants>(
    x: &ThetaElement<C::Scalar>,
    y: &ThetaElement<C::Scalar>,
    consts: &C,
) -> Result<ThetaElement<C::Scalar>> {
    ThetaRing::new(consts, x.bound()).mul(x, y)
}

type Element<C> = ThetaElement<<C as StructureConstants>::Scalar>;
type ProductCache<C> = HashMap<(u32, u32), Rc<Element<C>>>;

/// A ring at a fixed truncation bound, caching generator products.
pub struct ThetaRing<'a, C: StructureConstants> {
    consts: &'a C,
    bound: usize,
    cache: RefCell<ProductCache<C>>,
}

impl<'a, C: StructureConstants> ThetaRing<'a, C> {
    pub fn new(consts: &'a C, bound: usize) -> Self {
        ThetaRing {
            consts,
            bound,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn theta(&self, p: u32) -> ThetaElement<C::Scalar> {
        ThetaElement::theta(p, self.bound)
    }

    pub fn mul_basis(&self, p: u32, q: u32) -> Result<Rc<ThetaElement<C::Scalar>>> {
        let key = (p.min(q), p.max(q));
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(Rc::clone(hit));
        }
        let prod = Rc::new(mul_basis(p, q, self.bound, self.consts)?);
        self.cache.borrow_mut().insert(key, Rc::clone(&prod));
        Ok(prod)
    }

    pub fn mul(&self, x: &ThetaElement<C::Scalar>, y: &ThetaElement<C::Scalar>) -> Result<ThetaElement<C::Scalar>> {
        x.check_bound(y)?;
        if x.bound() != self.bound {
            return Err(Error::BoundMismatch {
                left: x.bound(),
                right: self.bound,
            });
        }
        let mut out = ThetaElement::zero(self.bound);
        for (p, xs) in x.terms() {
            for (q, ys) in y.terms() {
                let c = xs.try_mul(ys)?;
                if c.is_zero() {
                    continue;
                }
                for (r, s) in self.mul_basis(*p, *q)?.terms() {
                    out.add_series(*r, &s.try_mul(&c)?)?;
                }
            }
        }
        Ok(out)
    }

    /// `(θ_p θ_q) θ_r` and `θ_p (θ_q θ_r)`.
    pub fn associate(&self, p: u32, q: u32, r: u32) -> Result<(Element<C>, Element<C>)> {
        let left = self.mul(&*self.mul_basis(p, q)?, &self.theta(r))?;
        let right = self.mul(&self.theta(p), &*self.mul_basis(q, r)?)?;
        Ok((left, right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::fixtures::*;

    fn degree_one_table() -> InvariantTable {
        let mut t = InvariantTable::new();
        t.commit_degree(1, &degree_one()).unwrap();
        t
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn generators() {
        let t0: ThetaElement<Rational> = ThetaElement::theta(0, 2);
        assert_eq!(t0.support().collect::<Vec<_>>(), vec![0]);
        let t5: ThetaElement<Rational> = ThetaElement::theta(5, 2);
        assert_eq!(t5.support().collect::<Vec<_>>(), vec![5]);
        let two = t5.try_add(&ThetaElement::theta(5, 2)).unwrap();
        assert_eq!(two.coeff(5, 0), r(2));
        assert!(t5.try_sub(&t5).unwrap().is_zero());
    }

    #[test]
    fn one_times_two_at_degree_one() {
        let t = degree_one_table();
        let x = mul_basis(1, 2, 1, &t).unwrap();
        let mut want = ThetaElement::theta(3, 1);
        want.add_monomial(0, 1, &r(6));
        assert_eq!(x, want);
        assert_eq!(x.to_string(), "θ_3 + 6 t θ_0");
        assert_eq!(mul_basis(2, 1, 1, &t).unwrap(), x);
    }

    #[test]
    fn one_times_five_at_degree_two() {
        let t = through_degree_two();
        let x = mul_basis(1, 5, 2, &t).unwrap();
        let mut want = ThetaElement::theta(6, 2);
        want.add_monomial(0, 2, &r(30));
        want.add_monomial(3, 1, &r(2));
        assert_eq!(x, want);
        assert_eq!(x.to_string(), "θ_6 + 2 t θ_3 + 30 t^2 θ_0");
        assert_eq!(x.render(true), "theta_6 + 2 t theta_3 + 30 t^2 theta_0");
    }

    #[test]
    fn identity() {
        let t = through_degree_two();
        for q in 0..12 {
            assert_eq!(mul_basis(0, q, 2, &t).unwrap(), ThetaElement::theta(q, 2));
        }
        assert_eq!(mul_basis(0, 7, 2, &t).unwrap().to_string(), "θ_7");
    }

    #[test]
    fn commutative_and_finite() {
        let t = through_degree_two();
        for p in 0..=12 {
            for q in 0..=12 {
                let x = mul_basis(p, q, 2, &t).unwrap();
                assert_eq!(x, mul_basis(q, p, 2, &t).unwrap());
                assert!(x.support().all(|s| s <= p + q));
                for (s, series) in x.terms() {
                    for (k, _) in series.nonzero_terms() {
                        assert_eq!((p + q) as usize, *s as usize + 3 * k);
                    }
                }
            }
        }
        assert_eq!(grading_violations(), 0);
    }

    #[test]
    fn associativity_through_degree_two() {
        let t = through_degree_two();
        let ring = ThetaRing::new(&t, 2);
        let (l, rr) = ring.associate(1, 2, 1).unwrap();
        assert_eq!(l, rr);
        for p in 1..=6 {
            for q in 1..=6 {
                for s in 1..=6 {
                    let (l, rr) = ring.associate(p, q, s).unwrap();
                    assert_eq!(l, rr, "({p}, {q}, {s})");
                }
            }
        }
    }

    #[test]
    fn needs_solved_degrees() {
        let t = degree_one_table();
        assert!(matches!(mul_basis(1, 5, 2, &t), Err(Error::UnsolvedDegree { .. })));
        // Truncating below degree 2 never touches those values.
        assert!(mul_basis(1, 5, 1, &t).is_ok());
    }

    #[test]
    fn symbolic_products() {
        let t = InvariantTable::new();
        let sym = SymbolicTable::new(&t, 1);
        let x = mul_basis(1, 2, 1, &sym).unwrap();
        assert_eq!(x.coeff(0, 1), LinForm::unknown(UnknownId::three_point_r0(1, 2)));
        let pins = [(UnknownId::three_point_r0(1, 2), r(6))].into_iter().collect();
        let pinned = SymbolicTable::with_pins(&t, 1, pins);
        assert_eq!(
            mul_basis(1, 2, 1, &pinned).unwrap().coeff(0, 1),
            LinForm::constant(r(6))
        );
        assert_eq!(x.render(false), "θ_3 + (N_{120}^1) t θ_0");
    }

    #[test]
    fn bound_mismatch() {
        let t = through_degree_two();
        let a: ThetaElement<Rational> = ThetaElement::theta(1, 1);
        let b: ThetaElement<Rational> = ThetaElement::theta(1, 2);
        assert!(matches!(mul(&a, &b, &t), Err(Error::BoundMismatch { .. })));
    }

    #[test]
    fn element_json() {
        let t = through_degree_two();
        let x = mul_basis(1, 5, 2, &t).unwrap();
        let json = serde_json::to_string(&x.to_doc()).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"p":6,"series":[{"k":0,"value":"1"}]},{"p":3,"series":[{"k":1,"value":"2"}]},{"p":0,"series":[{"k":2,"value":"30"}]}]}"#
        );
    }
}
