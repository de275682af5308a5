//! Degree-by-degree determination of the invariants from associativity of
//! the theta ring.
//!
//! At degree `d` every invariant of degree `d` is an unknown, all lower
//! degrees are known, and the two seeds `N_{3d-1,1}`, `N_{1,3d-1}` are
//! pinned. Comparing the `t^d` coefficients of `(θ_p θ_q) θ_r` and
//! `θ_p (θ_q θ_r)` gives linear equations, which are solved exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use log::{debug, warn};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{LinForm, Rational, UnknownId};
use crate::error::{Error, Result};
use crate::ring::{SymbolicTable, ThetaRing};
use crate::seed::{seed_bottom, seed_top, SlabCoefficients};
use crate::table::{unknowns_at_degree, InvariantTable};

/// Where an equation came from: the triple, the generator and the power of
/// `t` whose coefficients were compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Provenance {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub theta_index: u32,
    pub t_power: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p,q,r)=({},{},{}) theta_{} t^{}",
            self.p, self.q, self.r, self.theta_index, self.t_power
        )
    }
}

/// The constraint `form = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub form: LinForm,
    pub provenance: Provenance,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0    {}", self.form, self.provenance)
    }
}

/// The seed pins of degree `d`.
pub fn seed_pins(d: u32, top: &Rational, bottom: &Rational) -> BTreeMap<UnknownId, Rational> {
    let e = 3 * d as i64;
    [
        (UnknownId::two_point(e - 1, 1), top.clone()),
        (UnknownId::two_point(1, e - 1), bottom.clone()),
    ]
    .into_iter()
    .collect()
}

/// Associativity equations at degree `d` over all triples
/// `1 <= p, q, r <= triple_bound`.
///
/// `pins` fixes some degree-`d` unknowns before expansion. Coefficients
/// below `t^d` must cancel identically; a nonzero one is reported as
/// [`Error::LowerDegreeResidual`]. Equations are deduplicated up to scaling
/// and returned in order of first appearance.
pub fn generate_equations(
    d: u32,
    table: &InvariantTable,
    triple_bound: u32,
    pins: &BTreeMap<UnknownId, Rational>,
) -> Result<Vec<Equation>> {
    if d == 0 {
        return Err(Error::InvalidArgument("working degree must be at least 1".into()));
    }
    if table.solved_through_degree() + 1 < d {
        return Err(Error::UnsolvedDegree {
            requested: d as i64 - 1,
            solved: table.solved_through_degree(),
        });
    }
    let sym = SymbolicTable::with_pins(table, d, pins.clone());
    let ring = ThetaRing::new(&sym, d as usize);

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in 1..=triple_bound {
        for q in 1..=triple_bound {
            for r in 1..=triple_bound {
                for eq in triple_equations(&ring, p, q, r)? {
                    if seen.insert(eq.form.normalized()) {
                        out.push(eq);
                    }
                }
            }
        }
    }
    debug!(
        "degree {d}: {} distinct equations from triple bound {triple_bound}",
        out.len()
    );
    Ok(out)
}

/// Coefficients of `t^d` in `(θ_p θ_q) θ_r - θ_p (θ_q θ_r)`, one per
/// generator with a nonzero difference, where `d` is the bound of `ring`.
/// No deduplication is done.
pub fn triple_equations(ring: &ThetaRing<'_, SymbolicTable<'_>>, p: u32, q: u32, r: u32) -> Result<Vec<Equation>> {
    let target = ring.bound();
    let (left, right) = ring.associate(p, q, r)?;
    let diff = left.try_sub(&right)?;
    let mut out = Vec::new();
    for (s, series) in diff.terms() {
        for (k, c) in series.nonzero_terms() {
            let provenance = Provenance {
                p,
                q,
                r,
                theta_index: *s,
                t_power: k,
            };
            if k < target {
                return Err(Error::LowerDegreeResidual {
                    degree: target as u32,
                    provenance,
                    residual: c.to_string(),
                });
            }
            out.push(Equation {
                form: c.clone(),
                provenance,
            });
        }
    }
    Ok(out)
}

/// Outcome of exact elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub rank: usize,
    pub solution: BTreeMap<UnknownId, Rational>,
}

/// Gauss-Jordan elimination over Q. Pivot rows are chosen with the fewest
/// nonzero entries to keep intermediate fractions small.
pub fn eliminate(degree: u32, equations: &[Equation], unknowns: &[UnknownId]) -> Result<Elimination> {
    let index: BTreeMap<UnknownId, usize> = unknowns.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    let n = unknowns.len();

    struct Row {
        coeffs: Vec<Rational>,
        rhs: Rational,
        provenance: Provenance,
    }

    let mut rows = Vec::with_capacity(equations.len());
    for eq in equations {
        let mut coeffs = vec![Rational::zero(); n];
        for (id, c) in eq.form.terms() {
            let col = *index.get(id).ok_or_else(|| {
                Error::InvalidArgument(format!("equation {eq} involves {id}, which is not a free unknown"))
            })?;
            coeffs[col] = c.clone();
        }
        rows.push(Row {
            coeffs,
            rhs: -eq.form.constant_term(),
            provenance: eq.provenance,
        });
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let support = |row: &Row| row.coeffs.iter().filter(|c| !c.is_zero()).count();
        let pick = (next..rows.len())
            .filter(|&i| !rows[i].coeffs[col].is_zero())
            .min_by_key(|&i| (support(&rows[i]), i));
        let Some(pi) = pick else { continue };
        rows.swap(next, pi);
        let inv = rows[next].coeffs[col].recip()?;
        for c in rows[next].coeffs.iter_mut() {
            *c = &*c * &inv;
        }
        rows[next].rhs = &rows[next].rhs * &inv;
        let (pivot_coeffs, pivot_rhs) = (rows[next].coeffs.clone(), rows[next].rhs.clone());
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row.coeffs[col].is_zero() {
                continue;
            }
            let f = row.coeffs[col].clone();
            for (c, pc) in row.coeffs.iter_mut().zip(&pivot_coeffs) {
                if !pc.is_zero() {
                    *c -= &(&f * pc);
                }
            }
            row.rhs -= &(&f * &pivot_rhs);
        }
        pivots.push((next, col));
        next += 1;
    }

    if let Some(bad) = rows[next..].iter().find(|r| !r.rhs.is_zero()) {
        return Err(Error::Inconsistent {
            degree,
            provenance: bad.provenance,
        });
    }
    if pivots.len() < n {
        let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free = (0..n)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| unknowns[c])
            .collect();
        return Err(Error::Underdetermined { degree, free });
    }
    let solution = pivots
        .iter()
        .map(|&(row, col)| (unknowns[col], rows[row].rhs.clone()))
        .collect();
    Ok(Elimination {
        rank: pivots.len(),
        solution,
    })
}

fn serialize_solution<S: Serializer>(
    sol: &BTreeMap<UnknownId, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(sol.len()))?;
    for (id, v) in sol {
        map.serialize_entry(&id.to_string(), v)?;
    }
    map.end()
}

/// Diagnostics and solution for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub degree: u32,
    pub triple_bound: u32,
    /// Unknowns left after pinning the seeds.
    pub num_unknowns: usize,
    pub num_equations: usize,
    pub rank: usize,
    /// Every invariant of this degree, seeds included.
    #[serde(serialize_with = "serialize_solution")]
    pub solution: BTreeMap<UnknownId, Rational>,
    /// Every equation vanishes under `solution`.
    pub consistent: bool,
    #[serde(skip)]
    pub equations: Vec<Equation>,
}

/// Solves degree `d` given the seeds `(N_{3d-1,1}, N_{1,3d-1})`.
pub fn solve_degree(
    d: u32,
    table: &InvariantTable,
    seeds: (&Rational, &Rational),
    triple_bound: u32,
) -> Result<SolveReport> {
    if table.solved_through_degree() + 1 != d {
        return Err(Error::DegreeGap {
            expected: table.solved_through_degree() + 1,
            got: d,
        });
    }
    let pins = seed_pins(d, seeds.0, seeds.1);
    let equations = generate_equations(d, table, triple_bound, &pins)?;
    let unknowns: Vec<UnknownId> = unknowns_at_degree(d)
        .into_iter()
        .filter(|u| !pins.contains_key(u))
        .collect();
    let elim = eliminate(d, &equations, &unknowns)?;

    let mut solution = elim.solution;
    solution.extend(pins);
    let consistent = equations
        .iter()
        .all(|eq| eq.form.evaluate(&solution).map(|v| v.is_zero()).unwrap_or(false));
    Ok(SolveReport {
        degree: d,
        triple_bound,
        num_unknowns: unknowns.len(),
        num_equations: equations.len(),
        rank: elim.rank,
        solution,
        consistent,
        equations,
    })
}

/// Knobs for [`compute_with_options`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Fixed triple bound for every degree; `3d` when absent.
    pub triple_bound: Option<u32>,
    /// How many times the default bound may grow by 3 when a degree comes
    /// out under-determined.
    pub max_bound_raises: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            triple_bound: None,
            max_bound_raises: 2,
        }
    }
}

/// A solved table together with the per-degree reports.
#[derive(Clone, Debug)]
pub struct Computation {
    pub table: InvariantTable,
    pub reports: Vec<SolveReport>,
}

/// Solves the next unsolved degree of `table` and commits it.
pub fn extend_table(table: &mut InvariantTable, slab: &SlabCoefficients, opts: &SolveOptions) -> Result<SolveReport> {
    let d = table.solved_through_degree() + 1;
    let at = |e: Error| Error::AtDegree {
        degree: d,
        source: Box::new(e),
    };
    let top = seed_top(d, slab).map_err(at)?;
    let bottom = seed_bottom(d, &top);
    let mut bound = opts.triple_bound.unwrap_or(3 * d);
    let mut raises = 0;
    let report = loop {
        match solve_degree(d, table, (&top, &bottom), bound) {
            Err(Error::Underdetermined { free, .. })
                if opts.triple_bound.is_none() && raises < opts.max_bound_raises =>
            {
                warn!(
                    "degree {d}: rank deficient at triple bound {bound} (free: {}); raising to {}",
                    free.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(", "),
                    bound + 3
                );
                bound += 3;
                raises += 1;
            }
            other => break other.map_err(at)?,
        }
    };
    if !report.consistent {
        return Err(at(Error::Inconsistent {
            degree: d,
            provenance: report
                .equations
                .iter()
                .find(|eq| !eq.form.evaluate(&report.solution).map(|v| v.is_zero()).unwrap_or(false))
                .map(|eq| eq.provenance)
                .expect("an equation fails"),
        }));
    }
    table.commit_degree(d, &report.solution).map_err(at)?;
    Ok(report)
}

pub fn compute_with_options(max_degree: u32, slab: &SlabCoefficients, opts: &SolveOptions) -> Result<Computation> {
    let mut table = InvariantTable::new();
    let mut reports = Vec::new();
    for _ in 1..=max_degree {
        reports.push(extend_table(&mut table, slab, opts)?);
    }
    Ok(Computation { table, reports })
}

/// All invariants of degree `1..=max_degree`.
pub fn compute_up_to(max_degree: u32, slab: &SlabCoefficients) -> Result<InvariantTable> {
    Ok(compute_with_options(max_degree, slab, &SolveOptions::default())?.table)
}

/// Checks `25 N_{1,5} = N_{5,1}`, `2 N_{2,4} = 5 N_{1,5} + 2`,
/// `N_{3,3} = 5 N_{1,5} + 4` and `N_{4,2} = 10 N_{1,5} + 4`.
pub fn verify_prop52_relations(table: &InvariantTable) -> bool {
    let get = |a, b| table.two_point(a, b);
    let (Ok(n15), Ok(n51), Ok(n24), Ok(n33), Ok(n42)) = (get(1, 5), get(5, 1), get(2, 4), get(3, 3), get(4, 2)) else {
        return false;
    };
    let k = |n: i64| Rational::from_integer(n);
    &k(25) * &n15 == n51
        && &k(2) * &n24 == &k(5) * &n15 + k(2)
        && n33 == &k(5) * &n15 + k(4)
        && n42 == &k(10) * &n15 + k(4)
}
