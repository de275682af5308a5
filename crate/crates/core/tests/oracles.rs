//! Checks of solved tables against routes that do not go through the ring
//! implementation.

use thetagw_core::{compute_up_to, default_slab_table, InvariantTable, Rational, UnknownId};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn k(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn delta(a: i64, b: i64) -> Rational {
    if a == b {
        k(1)
    } else {
        k(0)
    }
}

struct Lookup<'a>(&'a InvariantTable);

impl Lookup<'_> {
    fn two(&self, a: i64, b: i64) -> Rational {
        self.0.two_point(a, b).unwrap()
    }
    fn three(&self, a: i64, b: i64) -> Rational {
        self.0.three_point_r0(a, b).unwrap()
    }
    /// `(q - s) N_{p,q-s} + (p - s) N_{q,p-s}`
    fn bracket(&self, p: i64, q: i64, s: i64) -> Rational {
        k(q - s) * self.two(p, q - s) + k(p - s) * self.two(q, p - s)
    }
}

/// Top-degree `θ_0` coefficient of both associations when `3 | p+q+r`.
fn theta0_sides(n: &Lookup, p: i64, q: i64, r: i64) -> (Rational, Rational) {
    let mut left = n.three(p + q, r);
    for s in 1..=p.max(q) {
        left += &(n.bracket(p, q, s) * n.three(s, r));
    }
    let mut right = n.three(p, q + r);
    for s in 1..=q.max(r) {
        right += &(n.bracket(q, r, s) * n.three(p, s));
    }
    (left, right)
}

/// Top-degree `θ_i` coefficient, `i = (p+q+r) mod 3 != 0`.
fn theta_i_sides(n: &Lookup, p: i64, q: i64, r: i64) -> (Rational, Rational) {
    let i = (p + q + r) % 3;
    let mut left = n.bracket(p + q, r, i) + n.three(p, q) * delta(r, i);
    for s in 1..=p.max(q) {
        let inner = delta(s, i - r) + n.bracket(s, r, i);
        left += &(n.bracket(p, q, s) * inner);
    }
    let mut right = n.bracket(p, q + r, i) + n.three(q, r) * delta(p, i);
    for s in 1..=q.max(r) {
        let inner = delta(s, i - p) + n.bracket(p, s, i);
        right += &(n.bracket(q, r, s) * inner);
    }
    (left, right)
}

#[test]
fn top_degree_coefficient_identities_hold() {
    let table = compute_up_to(3, &default_slab_table()).unwrap();
    let n = Lookup(&table);
    let mut checked = 0;
    for p in 1..=9i64 {
        for q in 1..=9i64 {
            for r in 1..=9i64 {
                // Only triples whose top power stays within the solved range.
                if (p + q + r) / 3 > 3 {
                    continue;
                }
                let (l, rr) = if (p + q + r) % 3 == 0 {
                    theta0_sides(&n, p, q, r)
                } else {
                    theta_i_sides(&n, p, q, r)
                };
                assert_eq!(l, rr, "({p},{q},{r})");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn hand_picked_degree_one_relations() {
    let t = compute_up_to(1, &default_slab_table()).unwrap();
    let n = Lookup(&t);
    assert_eq!(k(2) * n.two(1, 2) + n.three(1, 2), k(2) * n.two(2, 1));
    assert_eq!(k(4) * n.two(1, 2), n.two(2, 1));
}

/// Degree-3 values frozen from a separate symbolic expansion of the same
/// associativity system (sympy, all triples up to 9).
#[test]
fn degree_three_frozen() {
    let t = compute_up_to(3, &default_slab_table()).unwrap();
    let n = UnknownId::two_point;
    let m = UnknownId::three_point_r0;
    let want = [
        (n(1, 8), q(4, 1)),
        (n(2, 7), q(12, 1)),
        (n(3, 6), q(82, 3)),
        (n(4, 5), q(48, 1)),
        (n(5, 4), q(75, 1)),
        (n(6, 3), q(328, 3)),
        (n(7, 2), q(147, 1)),
        (n(8, 1), q(256, 1)),
        (m(1, 8), q(288, 1)),
        (m(2, 7), q(378, 1)),
        (m(3, 6), q(492, 1)),
        (m(4, 5), q(540, 1)),
    ];
    assert_eq!(t.degree_values(3), want.into_iter().collect());
}

#[test]
fn json_round_trip_of_solved_table() {
    let t = compute_up_to(3, &default_slab_table()).unwrap();
    let mut buf = Vec::new();
    t.write_json(&mut buf).unwrap();
    assert_eq!(InvariantTable::read_json(&buf[..]).unwrap(), t);
}
