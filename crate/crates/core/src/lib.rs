//! Exact computation of relative and punctured Gromov-Witten invariants of
//! the projective plane relative to a smooth cubic.
//!
//! Degree by degree, the two-point invariants `N_{a,b}` (one contact point
//! fixed on the cubic) and the three-point invariants `N_{ab0}^d` (through a
//! fixed point off the cubic) are the structure constants of a commutative
//! ring `R = ⊕ θ_p Q[t]`. Associativity of `R`, plus one seed per degree
//! coming from the local P^2 slab function, determines all of them.
//!
//! ```
//! use thetagw_core::{compute_up_to, default_slab_table, Rational};
//!
//! let table = compute_up_to(2, &default_slab_table()).unwrap();
//! assert_eq!(table.two_point(2, 4).unwrap(), Rational::new(7, 2).unwrap());
//! ```

pub mod arith;
pub mod error;
pub mod puncture;
pub mod ring;
pub mod seed;
pub mod solver;
pub mod table;

pub use arith::{LinForm, Rational, Scalar, TruncSeries, UnknownId};
pub use error::{Error, Result};
pub use puncture::{punctured_invariant, punctured_invariant_lenient, punctured_table, PuncturedQuery};
pub use ring::{grading_violations, mul, mul_basis, StructureConstants, SymbolicTable, ThetaElement, ThetaRing};
pub use seed::{default_slab_table, seed_bottom, seed_top, SlabCoefficients};
pub use solver::{
    compute_up_to, compute_with_options, extend_table, generate_equations, solve_degree, verify_prop52_relations,
    Computation, Equation, Provenance, SolveOptions, SolveReport,
};
pub use table::{degree_zero_three_point, is_legal_pair, unknowns_at_degree, InvariantTable, Lookup};
