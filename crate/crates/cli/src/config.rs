use clap::{Args, ValueEnum};
use rldg::{Alphabet, WorkBudget};

use crate::failure::Failure;

/// Depth used when neither `--n` nor `RLDG_N` is given.
pub const DEFAULT_N: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

/// Options shared by every subcommand. Flags override `RLDG_*` variables,
/// which override the defaults.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// First letter of the alphabet
    #[arg(long, global = true, env = "RLDG_P", default_value_t = 1)]
    pub p: u32,

    /// Second letter of the alphabet; p + q must be odd
    #[arg(long, global = true, env = "RLDG_Q", default_value_t = 2)]
    pub q: u32,

    /// Number of digits in an automaton state (tree depth)
    #[arg(long, global = true, env = "RLDG_N")]
    pub n: Option<u32>,

    /// Output format
    #[arg(long, global = true, env = "RLDG_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cap on work units for sweeps and order computations
    #[arg(long, global = true, env = "RLDG_BUDGET")]
    pub budget: Option<u64>,

    /// Seed for randomized sweeps
    #[arg(long, global = true, env = "RLDG_SEED", default_value_t = 0)]
    pub seed: u64,
}

pub struct RunConfig {
    pub alphabet: Alphabet,
    n: Option<u32>,
    pub format: Format,
    pub budget: WorkBudget,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_args(args: &ConfigArgs) -> Result<Self, Failure> {
        let alphabet = Alphabet::new(args.p, args.q).map_err(|e| {
            if args.p != 0 && args.q != 0 && args.p != args.q && (args.p + args.q).is_multiple_of(2) {
                Failure::usage(format!(
                    "alphabet {{{}, {}}} is not supported: p + q must be odd, since for two odd letters every \
                     digit of the state flips on every input and for two even letters only the top digit moves",
                    args.p, args.q
                ))
            } else {
                Failure::from(e)
            }
        })?;
        let budget = args.budget.map_or_else(WorkBudget::unlimited, WorkBudget::new);
        Ok(RunConfig { alphabet, n: args.n, format: args.format, budget, seed: args.seed })
    }

    pub fn n(&self) -> u32 {
        self.n.unwrap_or(DEFAULT_N)
    }

    /// The depth if one was given explicitly.
    pub fn explicit_n(&self) -> Option<u32> {
        self.n
    }

    pub fn require_format(&self, command: &str, allowed: &[Format]) -> Result<Format, Failure> {
        if allowed.contains(&self.format) {
            return Ok(self.format);
        }
        let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
        Err(Failure::usage(format!(
            "`{command}` does not support --format {}; use one of {}",
            self.format.name(),
            names.join(", ")
        )))
    }
}

/// Parses a list of non-negative integers separated by commas or
/// whitespace.
pub fn parse_numbers(what: &str, text: &str) -> Result<Vec<u64>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Failure::usage(format!("{what}: `{t}` is not a non-negative integer"))))
        .collect()
}
