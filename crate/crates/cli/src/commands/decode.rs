use std::io::Write;

use clap::Args;
use rldg::rld::rld_levels;
use rldg::{Alphabet, Digit, LenSeq};
use serde::Serialize;

use crate::config::{parse_numbers, Format, RunConfig};
use crate::failure::Failure;
use crate::render::json_line;

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Start letters, one per level, e.g. `2,3,2`
    #[arg(long)]
    pub starts: String,

    /// Run lengths of the first level, e.g. `1,2`; may be empty
    #[arg(long, default_value = "")]
    pub lengths: String,
}

#[derive(Serialize)]
struct DecodeJson<'a> {
    schema: &'static str,
    p: u32,
    q: u32,
    starts: Vec<u32>,
    lengths: &'a [u64],
    levels: Vec<Vec<u32>>,
}

pub fn run(cfg: &RunConfig, args: &DecodeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cfg.require_format("decode", &[Format::Text, Format::Json])?;
    let a = &cfg.alphabet;
    let starts = a.parse_word(&args.starts)?;
    if starts.is_empty() {
        return Err(Failure::usage("--starts needs at least one letter"));
    }
    if let Some(n) = cfg.explicit_n() {
        if n as usize != starts.len() {
            return Err(Failure::usage(format!("--starts has {} letters but n = {n}", starts.len())));
        }
    }
    let lengths = LenSeq::new(parse_numbers("--lengths", &args.lengths)?)?;
    let levels = rld_levels(a, &starts, &lengths);
    match format {
        Format::Json => json_line(
            out,
            &DecodeJson {
                schema: "rldg/decode/v1",
                p: a.p(),
                q: a.q(),
                starts: a.values(&starts),
                lengths: lengths.as_slice(),
                levels: levels.iter().map(|l| a.values(l)).collect(),
            },
        ),
        _ => {
            out.write_all(layered(a, &starts, &lengths, &levels).as_bytes())?;
            Ok(())
        }
    }
}

/// The decoding as stacked rows. Each letter sits above the first letter of
/// the run it produces on the row below; the start letter of each level is
/// the first entry of its row.
fn layered(a: &Alphabet, starts: &[Digit], lengths: &LenSeq, levels: &[Vec<Digit>]) -> String {
    let bottom = levels.last().map_or(0, Vec::len);
    // column of every letter, filled from the bottom row up
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); levels.len()];
    if let Some(last) = cols.last_mut() {
        *last = (0..bottom).collect();
    }
    for k in (0..levels.len().saturating_sub(1)).rev() {
        let below = &cols[k + 1];
        let mut pos = 0usize;
        let mut row = Vec::with_capacity(levels[k].len());
        for &d in &levels[k] {
            row.push(below[pos]);
            pos += a.value(d) as usize;
        }
        cols[k] = row;
    }
    let mut input_cols = Vec::with_capacity(lengths.len());
    let mut pos = 0usize;
    for &r in lengths.as_slice() {
        input_cols.push(cols.first().map_or(0, |c| c[pos]));
        pos += r as usize;
    }

    let width = lengths
        .as_slice()
        .iter()
        .map(|r| r.to_string().len())
        .chain([a.p().to_string().len(), a.q().to_string().len()])
        .max()
        .unwrap_or(1);
    let labels: Vec<String> = std::iter::once("input".to_string())
        .chain((1..=levels.len()).map(|k| format!("level {k} ({})", a.value(starts[k - 1]))))
        .collect();
    let label_width = labels.iter().map(String::len).max().unwrap_or(0);

    let render = |cells: Vec<(usize, String)>| {
        let mut line = vec![" ".repeat(width); bottom];
        for (c, s) in cells {
            line[c] = format!("{s:>width$}");
        }
        line.join(" ").trim_end().to_string()
    };
    let mut out = String::new();
    let rows =
        std::iter::once(render(input_cols.iter().zip(lengths.as_slice()).map(|(&c, r)| (c, r.to_string())).collect()))
            .chain(
                levels.iter().zip(&cols).map(|(level, c)| {
                    render(c.iter().zip(level).map(|(&c, &d)| (c, a.value(d).to_string())).collect())
                }),
            );
    for (label, row) in labels.iter().zip(rows) {
        let line = format!("{label:<label_width$}  {row}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
