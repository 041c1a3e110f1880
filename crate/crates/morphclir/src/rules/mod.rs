//! Transformation-rule mining.
//!
//! A rule is the list of single-character insertions and deletions on an
//! optimal substitution-free alignment between a word and one of its
//! variants, with each action's location coarsened to begin/middle/end and
//! the source word's part-of-speech tag attached. Rules are counted over all
//! close pairs of a vocabulary and scored by relative frequency.

mod action;
mod alignment;
mod mining;
mod neighborhood;
mod table;

pub use action::{Action, EditOp, Position, TransformationRule};
pub use alignment::{bounded_indel_distance, extract_rule, indel_distance};
pub use mining::{mine_counts, mine_rules, MedConfig, DEFAULT_K_MAX};
pub use neighborhood::DeletionNeighborhood;
pub use table::{score_rules, RuleStats, RuleTable};

pub(crate) use alignment::extract_rule_chars;
