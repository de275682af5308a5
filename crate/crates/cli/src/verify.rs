//! Golden values and internal-consistency checks behind `thetagw verify`.

use std::io::Write;

use serde_json::json;
use thetagw_core::{
    grading_violations, mul_basis, punctured_invariant, seed_top, verify_prop52_relations, InvariantTable,
    PuncturedQuery, Rational, SlabCoefficients, ThetaRing, UnknownId,
};

use crate::commands::{load_slab, solve};
use crate::{Failure, Format, RunConfig};

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

fn compare(table: &InvariantTable, want: &[(UnknownId, Rational)]) -> (bool, String) {
    let mut bad = Vec::new();
    for (id, v) in want {
        match table.value(id) {
            Ok(got) if &got == v => {}
            Ok(got) => bad.push(format!("{id} = {got}, expected {v}")),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    if bad.is_empty() {
        (true, format!("{} values", want.len()))
    } else {
        (false, bad.join("; "))
    }
}

fn degree_one_golden() -> Vec<(UnknownId, Rational)> {
    vec![
        (UnknownId::two_point(1, 2), q(1, 1)),
        (UnknownId::two_point(2, 1), q(4, 1)),
        (UnknownId::three_point_r0(1, 2), q(6, 1)),
    ]
}

fn degree_two_golden() -> Vec<(UnknownId, Rational)> {
    vec![
        (UnknownId::two_point(1, 5), q(1, 1)),
        (UnknownId::two_point(5, 1), q(25, 1)),
        (UnknownId::two_point(2, 4), q(7, 2)),
        (UnknownId::two_point(4, 2), q(14, 1)),
        (UnknownId::two_point(3, 3), q(9, 1)),
        (UnknownId::three_point_r0(1, 5), q(30, 1)),
        (UnknownId::three_point_r0(2, 4), q(42, 1)),
        (UnknownId::three_point_r0(3, 3), q(54, 1)),
    ]
}

fn associativity(table: &InvariantTable) -> (bool, String) {
    let d = table.solved_through_degree();
    let ring = ThetaRing::new(table, d as usize);
    let n = 3 * d;
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                match ring.associate(a, b, c) {
                    Ok((l, r)) if l == r => {}
                    Ok((l, r)) => return (false, format!("({a},{b},{c}): {l} != {r}")),
                    Err(e) => return (false, format!("({a},{b},{c}): {e}")),
                }
            }
        }
    }
    (true, format!("all triples up to {n} at truncation {d}"))
}

fn coherence(table: &InvariantTable) -> (bool, String) {
    let top = table.solved_through_degree();
    let mut count = 0;
    for d in 1..=top {
        for p in 0..=3 * d {
            for qq in 0..=3 * d {
                let Some(r) = (p + qq).checked_sub(3 * d).filter(|&r| r > 0) else {
                    continue;
                };
                let query = PuncturedQuery::new(p, qq, r, d);
                let direct = punctured_invariant(query, table);
                let ring = mul_basis(p, qq, top as usize, table).map(|x| x.coeff(r, d as usize));
                match (direct, ring) {
                    (Ok(a), Ok(b)) if a == b => count += 1,
                    (a, b) => return (false, format!("{query}: {a:?} vs {b:?}")),
                }
            }
        }
    }
    (true, format!("{count} queries"))
}

fn seeds(table: &InvariantTable, slab: &SlabCoefficients) -> (bool, String) {
    for d in 1..=table.solved_through_degree() {
        let e = 3 * d as i64;
        let (Ok(top), Ok(solved), Ok(bottom)) =
            (seed_top(d, slab), table.two_point(e - 1, 1), table.two_point(1, e - 1))
        else {
            return (false, format!("d={d}: missing value"));
        };
        let m = Rational::from_integer(e - 1);
        if top != solved || solved != &(&m * &m) * &bottom {
            return (
                false,
                format!(
                    "d={d}: seed {top}, N_{{{},1}} = {solved}, N_{{1,{}}} = {bottom}",
                    e - 1,
                    e - 1
                ),
            );
        }
    }
    (true, format!("d=1..{}", table.solved_through_degree()))
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let max_degree = cfg.max_degree.max(2);
    let slab = load_slab(cfg)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, (passed, detail): (bool, String)| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    match solve(cfg, max_degree) {
        Err(Failure::Config(msg)) => return Err(Failure::Config(msg)),
        Err(Failure::Solver(msg)) => push("solve", (false, msg)),
        Ok(comp) => {
            let table = &comp.table;
            let health = comp
                .reports
                .iter()
                .map(|r| format!("d={}: rank {}/{}", r.degree, r.rank, r.num_unknowns))
                .collect::<Vec<_>>()
                .join(", ");
            let healthy = comp.reports.iter().all(|r| r.consistent && r.rank == r.num_unknowns);
            push("system rank and consistency", (healthy, health));
            push("degree-1 values", compare(table, &degree_one_golden()));
            push("degree-2 table", compare(table, &degree_two_golden()));
            let rel = verify_prop52_relations(table);
            push(
                "degree-2 relations",
                (rel, "25N15=N51, 2N24=5N15+2, N33=5N15+4, N42=10N15+4".into()),
            );
            push("seed formula and lemma relation", seeds(table, &slab));
            push("associativity sweep", associativity(table));
            push("punctured/ring coherence", coherence(table));
            let v = grading_violations();
            push("grading sweep", (v == 0, format!("{v} violations")));
            if max_degree >= 3 {
                for d in 3..=max_degree {
                    let vals = table
                        .degree_values(d)
                        .iter()
                        .map(|(id, v)| format!("{id} = {v}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    push(&format!("derived degree-{d} table"), (true, vals));
                }
            }
        }
    }

    let all = checks.iter().all(|c| c.passed);
    match cfg.output_format {
        Format::Json => {
            let doc: Vec<_> = checks
                .iter()
                .map(|c| json!({ "check": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &json!({ "passed": all, "checks": doc }))
                .map_err(|e| Failure::Config(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Table | Format::Csv => {
            for c in &checks {
                writeln!(
                    out,
                    "{}  {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )?;
            }
        }
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Solver("verification failed".into()))
    }
}
