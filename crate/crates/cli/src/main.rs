//! `rldg`: iterated run-length decoding, its automaton, and the automaton's
//! group, from the command line.
//!
//! Exit codes: 0 success, 2 usage, 3 budget or size cap, 4 a checked law
//! failed.

mod commands;
mod config;
mod failure;
mod render;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{decode, member, orbits, order, sweep};
use config::{ConfigArgs, RunConfig};
use failure::{Failure, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "rldg", version, about = "Iterated run-length decoding and its automaton groups")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decode a run-length sequence through n levels
    Decode(decode::DecodeArgs),
    /// Print the transition table of the automaton on n digits
    Automaton,
    /// Cycle structure of the permutation a word induces on the states
    Orbits(orbits::OrbitsArgs),
    /// Compare automaton group orders with the predicted formula
    Order(order::OrderArgs),
    /// Test a tree automorphism for membership and report its invariants
    Member(member::MemberArgs),
    /// Check maximal-orbit counts over many words
    Sweep(sweep::SweepArgs),
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = RunConfig::from_args(&cli.config)?;
    match &cli.command {
        Command::Decode(args) => decode::run(&cfg, args, out),
        Command::Automaton => commands::automaton::run(&cfg, out),
        Command::Orbits(args) => orbits::run(&cfg, args, out),
        Command::Order(args) => order::run(&cfg, args, out),
        Command::Member(args) => member::run(&cfg, args, out),
        Command::Sweep(args) => sweep::run(&cfg, args, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result.and_then(|()| flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rldg: {f}");
            ExitCode::from(f.code)
        }
    }
}
