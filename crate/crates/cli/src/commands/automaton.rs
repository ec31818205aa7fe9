use std::io::Write;

use rldg::automaton::build_table;
use rldg::{Digit, State};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::failure::Failure;
use crate::render::{json_line, table};

#[derive(Serialize)]
struct Transition {
    state: String,
    symbol: u32,
    next: String,
}

#[derive(Serialize)]
struct AutomatonJson {
    schema: &'static str,
    p: u32,
    q: u32,
    n: u32,
    transitions: Vec<Transition>,
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let a = &cfg.alphabet;
    let n = cfg.n();
    let table_ = build_table(a, n)?;
    let name = |leaf: u32| a.format_word(State::from_leaf(n, u64::from(leaf)).digits());
    let states = table_.states() as u32;
    let transitions = (0..states).flat_map(|leaf| {
        [Digit::P, Digit::Q].map(|s| Transition {
            state: name(leaf),
            symbol: a.value(s),
            next: name(table_.next_leaf(leaf, s)),
        })
    });
    match cfg.format {
        Format::Dot => out.write_all(table_.to_dot().as_bytes())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for t in transitions {
                w.serialize(t)?;
            }
            w.flush()?;
        }
        Format::Json => json_line(
            out,
            &AutomatonJson { schema: "rldg/automaton/v1", p: a.p(), q: a.q(), n, transitions: transitions.collect() },
        )?,
        Format::Text => {
            let mut rows = vec![vec!["state".to_string(), format!("on {}", a.p()), format!("on {}", a.q())]];
            rows.extend((0..states).map(|leaf| {
                vec![name(leaf), name(table_.next_leaf(leaf, Digit::P)), name(table_.next_leaf(leaf, Digit::Q))]
            }));
            out.write_all(table(&rows, &[]).as_bytes())?;
        }
    }
    Ok(())
}
