//! Solved values of `N_{a,b}` and `N_{ab0}^d`, with vanishing and symmetry
//! rules applied on lookup.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::arith::{LinForm, Rational, UnknownId};
use crate::error::{Error, Result};

/// How lookups at not-yet-solved degrees behave.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    /// Every requested degree must already be solved.
    Concrete,
    /// Invariants of exactly this degree come back as unknowns.
    Symbolic { degree: u32 },
}

/// True when `(a, b)` indexes a stored invariant: both contact orders are
/// positive and `3 | a + b`. Every other key is zero by rule.
pub fn is_legal_pair(a: i64, b: i64) -> bool {
    a >= 1 && b >= 1 && (a + b) % 3 == 0
}

/// Degree-zero three-point invariant: 1 on the diagonal `r = p + q`, else 0.
pub fn degree_zero_three_point(p: i64, q: i64, r: i64) -> Rational {
    if r == p + q {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// All legal unknowns of degree `d`, two-point first.
pub fn unknowns_at_degree(d: u32) -> Vec<UnknownId> {
    let e = 3 * d as i64;
    let mut out: Vec<_> = (1..e).map(|a| UnknownId::two_point(a, e - a)).collect();
    out.extend((1..=e / 2).map(|a| UnknownId::three_point_r0(a, e - a)));
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantTable {
    two_point: BTreeMap<(i64, i64), Rational>,
    /// Keyed by `(a, b)` with `a <= b`; the degree is `(a + b) / 3`.
    three_point_r0: BTreeMap<(i64, i64), Rational>,
    solved_through_degree: u32,
}

impl InvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solved_through_degree(&self) -> u32 {
        self.solved_through_degree
    }

    fn check_solved(&self, a: i64, b: i64) -> Result<()> {
        let deg = (a + b) / 3;
        if deg > self.solved_through_degree as i64 {
            return Err(Error::UnsolvedDegree {
                requested: deg,
                solved: self.solved_through_degree,
            });
        }
        Ok(())
    }

    /// `N_{a,b}` from solved degrees.
    pub fn two_point(&self, a: i64, b: i64) -> Result<Rational> {
        if !is_legal_pair(a, b) {
            return Ok(Rational::zero());
        }
        self.check_solved(a, b)?;
        Ok(self.two_point[&(a, b)].clone())
    }

    /// `N_{ab0}^{(a+b)/3}` from solved degrees.
    pub fn three_point_r0(&self, a: i64, b: i64) -> Result<Rational> {
        if !is_legal_pair(a, b) {
            return Ok(Rational::zero());
        }
        self.check_solved(a, b)?;
        Ok(self.three_point_r0[&(a.min(b), a.max(b))].clone())
    }

    fn lookup(&self, a: i64, b: i64, mode: Lookup, id: UnknownId, concrete: Result<Rational>) -> Result<LinForm> {
        if !is_legal_pair(a, b) {
            return Ok(LinForm::zero());
        }
        match mode {
            Lookup::Symbolic { degree } if (a + b) / 3 == degree as i64 => Ok(LinForm::unknown(id)),
            _ => concrete.map(LinForm::constant),
        }
    }

    pub fn get_two_point(&self, a: i64, b: i64, mode: Lookup) -> Result<LinForm> {
        self.lookup(a, b, mode, UnknownId::two_point(a, b), self.two_point(a, b))
    }

    pub fn get_three_point_r0(&self, a: i64, b: i64, mode: Lookup) -> Result<LinForm> {
        self.lookup(a, b, mode, UnknownId::three_point_r0(a, b), self.three_point_r0(a, b))
    }

    /// Value of a legal unknown, if its degree is solved.
    pub fn value(&self, id: &UnknownId) -> Result<Rational> {
        match *id {
            UnknownId::TwoPoint { a, b } => self.two_point(a, b),
            UnknownId::ThreePointR0 { a, b, .. } => self.three_point_r0(a, b),
        }
    }

    /// Appends degree `d`. `solution` must hold exactly the legal unknowns
    /// of that degree.
    pub fn commit_degree(&mut self, d: u32, solution: &BTreeMap<UnknownId, Rational>) -> Result<()> {
        let expected = self.solved_through_degree + 1;
        if d != expected {
            return Err(Error::DegreeGap { expected, got: d });
        }
        let wanted = unknowns_at_degree(d);
        if let Some(extra) = solution.keys().find(|id| !wanted.contains(id)) {
            return Err(Error::UnexpectedUnknown {
                unknown: *extra,
                degree: d,
            });
        }
        if let Some(missing) = wanted.iter().find(|id| !solution.contains_key(id)) {
            return Err(Error::MissingUnknown(*missing));
        }
        for (id, v) in solution {
            match *id {
                UnknownId::TwoPoint { a, b } => self.two_point.insert((a, b), v.clone()),
                UnknownId::ThreePointR0 { a, b, .. } => self.three_point_r0.insert((a, b), v.clone()),
            };
        }
        self.solved_through_degree = d;
        Ok(())
    }

    /// Solved values of degree `d`, keyed by unknown.
    pub fn degree_values(&self, d: u32) -> BTreeMap<UnknownId, Rational> {
        if d == 0 || d > self.solved_through_degree {
            return BTreeMap::new();
        }
        unknowns_at_degree(d)
            .into_iter()
            .map(|id| {
                let v = self.value(&id).expect("solved degree");
                (id, v)
            })
            .collect()
    }

    pub fn two_point_entries(&self) -> impl Iterator<Item = (i64, i64, &Rational)> {
        self.two_point.iter().map(|(&(a, b), v)| (a, b, v))
    }

    pub fn three_point_r0_entries(&self) -> impl Iterator<Item = (i64, i64, &Rational)> {
        self.three_point_r0.iter().map(|(&(a, b), v)| (a, b, v))
    }

    pub fn len(&self) -> usize {
        self.two_point.len() + self.three_point_r0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_doc(&self) -> TableDoc {
        TableDoc {
            solved_through_degree: self.solved_through_degree,
            two_point: self
                .two_point_entries()
                .map(|(a, b, v)| TwoPointRow { a, b, value: v.clone() })
                .collect(),
            three_point_r0: self
                .three_point_r0_entries()
                .map(|(a, b, v)| ThreePointRow {
                    a,
                    b,
                    d: (a + b) / 3,
                    value: v.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds a table degree by degree, so every commit check applies.
    pub fn from_doc(doc: &TableDoc) -> Result<Self> {
        let mut per_degree: BTreeMap<u32, BTreeMap<UnknownId, Rational>> = BTreeMap::new();
        let degree_of = |a: i64, b: i64| -> Result<u32> {
            if !is_legal_pair(a, b) {
                return Err(Error::Parse(format!("illegal invariant key ({a}, {b})")));
            }
            Ok(((a + b) / 3) as u32)
        };
        for row in &doc.two_point {
            let d = degree_of(row.a, row.b)?;
            per_degree
                .entry(d)
                .or_default()
                .insert(UnknownId::two_point(row.a, row.b), row.value.clone());
        }
        for row in &doc.three_point_r0 {
            let d = degree_of(row.a, row.b)?;
            if row.d != d as i64 {
                return Err(Error::Parse(format!(
                    "three-point row ({}, {}) has degree {} but a + b = 3 * {d}",
                    row.a, row.b, row.d
                )));
            }
            per_degree
                .entry(d)
                .or_default()
                .insert(UnknownId::three_point_r0(row.a, row.b), row.value.clone());
        }
        let mut table = InvariantTable::new();
        for d in 1..=doc.solved_through_degree {
            let sol = per_degree.remove(&d).unwrap_or_default();
            table.commit_degree(d, &sol)?;
        }
        if let Some((&d, _)) = per_degree.iter().next() {
            return Err(Error::Parse(format!(
                "rows at degree {d} beyond solved_through_degree {}",
                doc.solved_through_degree
            )));
        }
        Ok(table)
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, &self.to_doc())?;
        Ok(())
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        let doc: TableDoc = serde_json::from_reader(r)?;
        Self::from_doc(&doc)
    }

    /// CSV with columns `kind,a,b,d,value`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["kind", "a", "b", "d", "value"])?;
        for (a, b, v) in self.two_point_entries() {
            wtr.write_record([
                "two_point",
                &a.to_string(),
                &b.to_string(),
                &((a + b) / 3).to_string(),
                &v.to_string(),
            ])?;
        }
        for (a, b, v) in self.three_point_r0_entries() {
            wtr.write_record([
                "three_point_r0",
                &a.to_string(),
                &b.to_string(),
                &((a + b) / 3).to_string(),
                &v.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// JSON form of an [`InvariantTable`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub solved_through_degree: u32,
    pub two_point: Vec<TwoPointRow>,
    pub three_point_r0: Vec<ThreePointRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPointRow {
    pub a: i64,
    pub b: i64,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreePointRow {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub value: Rational,
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    pub fn degree_one() -> BTreeMap<UnknownId, Rational> {
        [
            (UnknownId::two_point(1, 2), q(1, 1)),
            (UnknownId::two_point(2, 1), q(4, 1)),
            (UnknownId::three_point_r0(1, 2), q(6, 1)),
        ]
        .into_iter()
        .collect()
    }

    pub fn degree_two() -> BTreeMap<UnknownId, Rational> {
        [
            (UnknownId::two_point(1, 5), q(1, 1)),
            (UnknownId::two_point(5, 1), q(25, 1)),
            (UnknownId::two_point(2, 4), q(7, 2)),
            (UnknownId::two_point(4, 2), q(14, 1)),
            (UnknownId::two_point(3, 3), q(9, 1)),
            (UnknownId::three_point_r0(1, 5), q(30, 1)),
            (UnknownId::three_point_r0(2, 4), q(42, 1)),
            (UnknownId::three_point_r0(3, 3), q(54, 1)),
        ]
        .into_iter()
        .collect()
    }

    pub fn through_degree_two() -> InvariantTable {
        let mut t = InvariantTable::new();
        t.commit_degree(1, &degree_one()).unwrap();
        t.commit_degree(2, &degree_two()).unwrap();
        t
    }
}
