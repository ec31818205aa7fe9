use std::io::Write;

use clap::Args;
use rldg::orbits::cycle_structure;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::render::{json_line, table, yes_no};

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    /// Input word, e.g. `1` or `1,2,2`
    #[arg(long)]
    pub word: String,
}

#[derive(Serialize)]
struct CycleCount {
    length: usize,
    count: usize,
}

#[derive(Serialize)]
struct OrbitsJson {
    schema: &'static str,
    p: u32,
    q: u32,
    n: u32,
    word: Vec<u32>,
    cycle_type: Vec<CycleCount>,
    max_len: u64,
    max_count: usize,
    predicate: bool,
    agrees: Option<bool>,
    powers_of_two: bool,
    within_bound: bool,
}

pub fn run(cfg: &RunConfig, args: &OrbitsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cfg.require_format("orbits", &[Format::Text, Format::Json])?;
    let a = &cfg.alphabet;
    let word = a.parse_word(&args.word)?;
    let n = cfg.n();
    let report = cycle_structure(a, n, &word)?;
    let agrees = report.agrees();
    match format {
        Format::Json => json_line(
            out,
            &OrbitsJson {
                schema: "rldg/orbits/v1",
                p: a.p(),
                q: a.q(),
                n,
                word: report.word.clone(),
                cycle_type: report
                    .cycle_type
                    .iter()
                    .rev()
                    .map(|(&length, &count)| CycleCount { length, count })
                    .collect(),
                max_len: report.max_len,
                max_count: report.max_count,
                predicate: report.predicate,
                agrees,
                powers_of_two: report.lengths_are_powers_of_two(),
                within_bound: report.within_bound(),
            },
        )?,
        _ => {
            let criterion = match agrees {
                Some(true) => "holds".to_string(),
                Some(false) => "FAILS".to_string(),
                None => "not asserted for even n (descriptive only)".to_string(),
            };
            let rows = vec![
                vec!["word".into(), a.format_word(&word)],
                vec!["n".into(), n.to_string()],
                vec!["cycle type".into(), report.cycle_type_string()],
                vec!["max length".into(), report.max_len.to_string()],
                vec!["max count".into(), report.max_count.to_string()],
                vec!["predicate".into(), format!("{} (odd length and odd sum)", yes_no(report.predicate))],
                vec!["criterion".into(), criterion],
            ];
            out.write_all(table(&rows, &[]).as_bytes())?;
        }
    }
    if !report.lengths_are_powers_of_two() || !report.within_bound() {
        return Err(Failure::violation(format!(
            "cycle type {} breaks the power-of-two orbit law",
            report.cycle_type_string()
        )));
    }
    if agrees == Some(false) {
        return Err(Failure::violation(format!(
            "counterexample: word {} at n = {n} has {} maximal orbits, predicate {}",
            a.format_word(&word),
            report.max_count,
            report.predicate
        )));
    }
    Ok(())
}
