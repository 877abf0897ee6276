//! Hecke-Kiselman monoids of oriented graphs.
//!
//! The monoid of an oriented simple graph has one idempotent generator per
//! vertex; non-adjacent generators commute, and an arrow `i -> j` imposes
//! `x_i x_j x_i = x_j x_i x_j = x_i x_j`. This crate provides
//!
//! * graph input and the two-connected-cycles criterion ([`digraph`]),
//! * words, generator orders and deg-lex comparison ([`word`]),
//! * the general reduction system and its normal forms ([`rewrite`]),
//! * the special systems for oriented cycles ([`cycle`]),
//! * the normal-word automaton, word counts and growth ([`automaton`]),
//! * a brute-force congruence closure for cross-checks ([`oracle`]).

pub mod automaton;
pub mod cycle;
pub mod digraph;
pub mod error;
pub mod oracle;
pub mod parallel;
pub mod rewrite;
mod scc;
pub mod word;

pub use automaton::{
    leading_term_language, minimal_forbidden_words, ForbiddenPatternSet, Growth, GrowthReport,
    NormalWordDfa, Pattern, PatternFamily,
};
pub use cycle::{block_decompose, enumerate_sprime_rules, is_formp, Block, ListedRule};
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use oracle::{congruence_closure, crosscheck, CongruenceTable, CrosscheckReport};
pub use rewrite::{equal_in_monoid, ConfluenceReport, Match, RuleKind, RuleSystem, SystemName};
pub use word::{GenOrder, Letter, Word};
