use std::io::Write;

use serde::Serialize;
use serde_json::json;
use thetagw_core::solver::Computation;
use thetagw_core::table::TableDoc;
use thetagw_core::{
    compute_with_options, default_slab_table, mul_basis, punctured_invariant, punctured_invariant_lenient,
    punctured_table, PuncturedQuery, SlabCoefficients, SolveOptions, SolveReport,
};

use crate::{Failure, Format, RunConfig};

#[derive(Serialize)]
struct ComputeDoc<'a> {
    table: TableDoc,
    reports: &'a [SolveReport],
}

pub fn load_slab(cfg: &RunConfig) -> Result<SlabCoefficients, Failure> {
    match &cfg.slab_file {
        Some(path) => {
            SlabCoefficients::from_file(path).map_err(|e| Failure::Config(format!("slab file {}: {e}", path.display())))
        }
        None => Ok(default_slab_table()),
    }
}

pub fn solve(cfg: &RunConfig, max_degree: u32) -> Result<Computation, Failure> {
    let slab = load_slab(cfg)?;
    let opts = SolveOptions {
        triple_bound: cfg.triple_bound_override,
        ..SolveOptions::default()
    };
    let comp = compute_with_options(max_degree, &slab, &opts)?;
    if cfg.dump_equations {
        for rep in &comp.reports {
            eprintln!("# degree {} (triple bound {})", rep.degree, rep.triple_bound);
            for eq in &rep.equations {
                eprintln!("{eq}");
            }
        }
    }
    Ok(comp)
}

pub fn compute(cfg: &RunConfig, out: &mut dyn Write, with_reports: bool) -> Result<(), Failure> {
    let comp = solve(cfg, cfg.max_degree)?;
    match cfg.output_format {
        Format::Json if with_reports => {
            let doc = ComputeDoc {
                table: comp.table.to_doc(),
                reports: &comp.reports,
            };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| Failure::Config(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Json => {
            comp.table.write_json(&mut *out)?;
            writeln!(out)?;
        }
        Format::Csv => comp.table.write_csv(&mut *out)?,
        Format::Table => {
            for rep in &comp.reports {
                if with_reports {
                    writeln!(
                        out,
                        "# degree {}: {} unknowns, {} equations, rank {}, {}",
                        rep.degree,
                        rep.num_unknowns,
                        rep.num_equations,
                        rep.rank,
                        if rep.consistent { "consistent" } else { "INCONSISTENT" }
                    )?;
                }
                for (id, v) in &rep.solution {
                    writeln!(out, "{id} = {v}")?;
                }
            }
        }
    }
    Ok(())
}

pub fn product(cfg: &RunConfig, out: &mut dyn Write, p: u32, q: u32) -> Result<(), Failure> {
    let comp = solve(cfg, cfg.max_degree)?;
    let x = mul_basis(p, q, cfg.max_degree as usize, &comp.table)?;
    match cfg.output_format {
        Format::Table => writeln!(out, "{x}")?,
        Format::Json => {
            serde_json::to_writer(&mut *out, &x.to_doc()).map_err(|e| Failure::Config(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "generator,k,value")?;
            for term in x.to_doc().terms {
                for s in term.series {
                    writeln!(out, "theta_{},{},{}", term.p, s.k, s.value)?;
                }
            }
        }
    }
    Ok(())
}

fn write_rows(
    cfg: &RunConfig,
    out: &mut dyn Write,
    rows: &[(PuncturedQuery, String)],
    single: bool,
) -> Result<(), Failure> {
    match cfg.output_format {
        Format::Table if single => writeln!(out, "{}", rows[0].1)?,
        Format::Table => {
            for (query, v) in rows {
                writeln!(out, "{query} = {v}")?;
            }
        }
        Format::Json => {
            let docs: Vec<_> = rows
                .iter()
                .map(|(qr, v)| json!({ "p": qr.p, "q": qr.q, "r": qr.r, "d": qr.d, "value": v }))
                .collect();
            let doc = if single { docs[0].clone() } else { json!(docs) };
            serde_json::to_writer(&mut *out, &doc).map_err(|e| Failure::Config(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "p,q,r,d,value")?;
            for (qr, v) in rows {
                writeln!(out, "{},{},{},{},{v}", qr.p, qr.q, qr.r, qr.d)?;
            }
        }
    }
    Ok(())
}

pub fn punctured(cfg: &RunConfig, out: &mut dyn Write, p: u32, q: u32, r: u32, d: u32) -> Result<(), Failure> {
    let query = PuncturedQuery::new(p, q, r, d);
    let comp = solve(cfg, d)?;
    let value = if cfg.allow_offgrade {
        punctured_invariant_lenient(query, &comp.table)?
    } else {
        punctured_invariant(query, &comp.table)?
    };
    write_rows(cfg, out, &[(query, value.to_string())], true)
}

pub fn punctured_batch(cfg: &RunConfig, out: &mut dyn Write, d: u32, cap: u32) -> Result<(), Failure> {
    let comp = solve(cfg, d)?;
    let rows: Vec<_> = punctured_table(d, &comp.table, cap)?
        .into_iter()
        .map(|(q, v)| (q, v.to_string()))
        .collect();
    write_rows(cfg, out, &rows, false)
}
