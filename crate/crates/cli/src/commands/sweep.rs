use std::io::Write;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rldg::orbits::{check_words, tabulate_orbits, verify_theorem3, SweepReport, SweepRow};
use rldg::Digit;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::render::{json_line, table, yes_no, Summary};

/// Longest word a random sample may draw.
pub const SAMPLE_WORD_CAP: usize = 1 << 16;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Longest word length; every word up to this length is checked
    /// unless `--sample` is given
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,

    /// Check this many random words (seeded by --seed) instead of all of
    /// them
    #[arg(long)]
    pub sample: Option<u64>,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    schema: &'static str,
    mode: &'static str,
    seed: Option<u64>,
    #[serde(flatten)]
    report: &'a SweepReport,
}

fn sample_words(seed: u64, count: u64, max_len: usize) -> Vec<Vec<Digit>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| Digit::from_bit(rng.gen())).collect()
        })
        .collect()
}

fn cell(agree: Option<bool>) -> String {
    agree.map_or_else(|| "-".to_string(), yes_no)
}

pub fn run(cfg: &RunConfig, args: &SweepArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cfg.require_format("sweep", &[Format::Text, Format::Json, Format::Csv])?;
    let a = &cfg.alphabet;
    let n = cfg.n();
    if args.max_len == 0 {
        return Err(Failure::usage("--max-len must be at least 1"));
    }
    let (mode, report) = match args.sample {
        Some(count) => {
            if args.max_len > SAMPLE_WORD_CAP {
                return Err(rldg::Error::CapExceeded {
                    what: "sampled word length",
                    value: args.max_len as u64,
                    cap: SAMPLE_WORD_CAP as u64,
                }
                .into());
            }
            // charge before drawing so a huge count fails fast
            cfg.budget.charge(count)?;
            let words = sample_words(cfg.seed, count, args.max_len);
            ("sample", check_words(a, n, &words, &cfg.budget)?)
        }
        None if n % 2 == 1 => ("exhaustive", verify_theorem3(a, n, args.max_len, &cfg.budget)?),
        None => ("tabulate", tabulate_orbits(a, n, args.max_len, &cfg.budget)?),
    };

    match format {
        Format::Json => json_line(
            out,
            &SweepJson { schema: "rldg/sweep/v1", mode, seed: args.sample.map(|_| cfg.seed), report: &report },
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &report.rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        _ => {
            let mut rows = vec![vec![
                "word".to_string(),
                "len".into(),
                "sum odd".into(),
                "max count".into(),
                "predicate".into(),
                "agrees".into(),
            ]];
            rows.extend(report.rows.iter().map(|r: &SweepRow| {
                vec![
                    r.word.clone(),
                    r.length.to_string(),
                    yes_no(r.sum_odd),
                    r.max_count.to_string(),
                    yes_no(r.predicate),
                    cell(r.agree),
                ]
            }));
            out.write_all(table(&rows, &[false, true, false, true, false, false]).as_bytes())?;
            if !report.asserted {
                writeln!(out, "n = {n} is even: maximal-orbit counts are tabulated, nothing is asserted")?;
            }
            for r in &report.counterexamples {
                writeln!(out, "COUNTEREXAMPLE {}", r.word)?;
            }
        }
    }
    let failures = report.counterexamples.len() as u64;
    Summary {
        schema: Summary::SCHEMA,
        command: "sweep",
        p: a.p(),
        q: a.q(),
        n,
        checked: report.words_checked,
        failures,
        asserted: report.asserted,
        status: if failures == 0 { "pass" } else { "fail" },
    }
    .write(out, format)?;
    if failures > 0 {
        return Err(Failure::violation(format!(
            "{failures} counterexamples found; first is {}",
            report.counterexamples[0].word
        )));
    }
    Ok(())
}
