use std::io::Write;

use clap::Args;
use rldg::group_order::{verify_conjecture, ConjectureReport, KN_CAP};
use rldg::jn::{generators, jn_order_exponent};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::render::{json_line, table, yes_no, Summary};

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Largest depth to compute, at most 14
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
}

#[derive(Serialize)]
struct OrderJson<'a> {
    schema: &'static str,
    n_max: u32,
    all_agree: bool,
    /// Portraits of the two generators at depth `n_max`.
    generators: [String; 2],
    #[serde(flatten)]
    report: &'a ConjectureReport,
}

/// Work estimate: every element of the polycyclic sequence touches every
/// point once per closure round.
fn cost(n_max: u32) -> u64 {
    (1..=n_max.min(KN_CAP)).map(|n| (1u64 << n).saturating_mul(jn_order_exponent(n) + 1)).sum()
}

pub fn run(cfg: &RunConfig, args: &OrderArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cfg.require_format("order", &[Format::Text, Format::Json, Format::Csv])?;
    if args.n_max == 0 {
        return Err(Failure::usage("--n-max must be at least 1"));
    }
    let a = &cfg.alphabet;
    if args.n_max <= KN_CAP {
        cfg.budget.charge(cost(args.n_max))?;
    }
    let report = verify_conjecture(a, args.n_max)?;
    let agree = report.all_agree();
    match format {
        Format::Json => {
            let (gp, gq) = generators(a, args.n_max);
            json_line(
                out,
                &OrderJson {
                    schema: "rldg/order/v1",
                    n_max: args.n_max,
                    all_agree: agree,
                    generators: [gp.to_hex(), gq.to_hex()],
                    report: &report,
                },
            )?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &report.rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        _ => {
            let mut rows =
                vec![vec!["n".into(), "log2|K_n|".into(), "g(n)".into(), "equal".into(), "J_n inside K_n".into()]];
            for r in &report.rows {
                rows.push(vec![
                    r.n.to_string(),
                    r.k_exponent.to_string(),
                    r.j_formula_exponent.to_string(),
                    yes_no(r.equal),
                    if r.containment_checked { yes_no(r.containment_ok) } else { "-".into() },
                ]);
            }
            out.write_all(table(&rows, &[true, true, true, false, false]).as_bytes())?;
            if agree {
                writeln!(out, "log2 |K_n| = g(n) for n = 1..{} over {a}", args.n_max)?;
            } else {
                writeln!(out, "MISMATCH: see the rows marked no (n <= {} over {a})", args.n_max)?;
            }
        }
    }
    let failures = report.rows.iter().filter(|r| !r.equal || (r.containment_checked && !r.containment_ok)).count();
    Summary {
        schema: Summary::SCHEMA,
        command: "order",
        p: a.p(),
        q: a.q(),
        n: args.n_max,
        checked: report.rows.len() as u64,
        failures: failures as u64,
        asserted: true,
        status: if agree { "pass" } else { "fail" },
    }
    .write(out, format)?;
    if !agree {
        return Err(Failure::violation(format!("group orders differ from g(n) in {failures} rows")));
    }
    Ok(())
}
