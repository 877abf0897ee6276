//! `hkmon`: normal forms, automata and growth of Hecke-Kiselman monoids.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Exit status for input and domain errors.
pub const EXIT_ERROR: u8 = 1;
/// Exit status when a verification finds violations.
pub const EXIT_VERIFY: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hkmon",
    version,
    about = "Normal forms, automata and growth of Hecke-Kiselman monoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Cap on the number of words any enumeration may touch.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub budget: u128,

    /// Print words with letters a, b, c, ... instead of indices.
    #[arg(long, global = true)]
    pub letters: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Graph file: `n=<count>` followed by `i->j` lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Built-in oriented cycle 1 -> 2 -> ... -> N -> 1.
    #[arg(long, global = true, value_name = "N")]
    pub cycle: Option<usize>,

    /// Built-in four-vertex graph: triangle a -> b -> c -> a with a tail a -> d.
    #[arg(long = "example-s4", global = true)]
    pub example_s4: bool,

    /// Generator order as a comma-separated permutation, least first.
    #[arg(long, global = true, value_name = "PERM")]
    pub order: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SystemArg {
    /// General system for any graph.
    #[default]
    #[value(name = "T")]
    T,
    /// Special system for oriented cycles.
    #[value(name = "S")]
    S,
    /// Finite special system for oriented cycles.
    #[value(name = "Sprime", alias = "S'")]
    SPrime,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce words to normal form.
    Normalize {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long, value_enum, default_value_t = SystemArg::T)]
        system: SystemArg,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
        /// Pick among available reductions at random (seeded) instead of
        /// leftmost-shortest.
        #[arg(long)]
        random_choices: bool,
    },
    /// Decide whether two words are equal in the monoid.
    Eq { u: String, v: String },
    /// Print the reduction rules.
    Basis {
        #[arg(long, value_enum, default_value_t = SystemArg::T)]
        system: SystemArg,
        /// Largest cycle length for which explicit rules are listed.
        #[arg(long, default_value_t = hkmon::cycle::DEFAULT_RULE_CAP)]
        cap: usize,
    },
    /// Export the normal-word automaton as DOT.
    Automaton {
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Normal-word counts per length and the growth class.
    Growth {
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Growth class and the graph criterion.
    Classify,
    /// Minimal forbidden words up to a length.
    Obstructions {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Check that every word's one-step reducts share a normal form.
    Confluence {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = SystemArg::T)]
        system: SystemArg,
    },
    /// Compare against brute-force congruence closure.
    OracleCheck {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = hkmon::oracle::DEFAULT_SLACK)]
        slack: usize,
    },
    /// List the normal words up to a length.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
