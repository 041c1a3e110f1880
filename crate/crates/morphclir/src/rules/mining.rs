use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::action::TransformationRule;
use super::alignment::{bounded_indel_distance, extract_rule_chars};
use super::neighborhood::DeletionNeighborhood;
use super::table::{score_rules, RuleTable};
use crate::corpus::PosLexicon;
use crate::error::{Error, Result};

/// Default maximum number of actions in a mined rule.
pub const DEFAULT_K_MAX: usize = 3;

/// Edit-distance settings for rule mining.
///
/// Insertion and deletion cost 1 each; substitution is excluded from the
/// cost model, so every optimal path is made of insertions and deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MedConfig {
    /// Largest distance (number of actions) a mined pair may have.
    pub k_max: usize,
}

impl Default for MedConfig {
    fn default() -> Self {
        Self { k_max: DEFAULT_K_MAX }
    }
}

impl MedConfig {
    pub fn new(k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::Config("k_max must be at least 1".into()));
        }
        Ok(Self { k_max })
    }
}

/// Counts one rule per ordered pair of distinct vocabulary words within
/// `k_max` indel operations of each other, then scores the pool by
/// maximum likelihood.
///
/// Every unique pair counts once regardless of how often the words occur.
/// The rule carries the tag of the source word.
pub fn mine_rules<I, S>(vocab: I, pos: &PosLexicon, config: &MedConfig) -> Result<RuleTable>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let counts = mine_counts(vocab, pos, config);
    if counts.is_empty() {
        return Ok(RuleTable::empty(config.k_max));
    }
    score_rules(counts, config.k_max)
}

/// The raw rule counts behind [`mine_rules`].
pub fn mine_counts<I, S>(vocab: I, pos: &PosLexicon, config: &MedConfig) -> HashMap<TransformationRule, u64>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let words: BTreeSet<String> = vocab.into_iter().map(|s| s.as_ref().to_string()).collect();
    let words: Vec<String> = words.into_iter().collect();
    let chars: Vec<Vec<char>> = words.iter().map(|w| w.chars().collect()).collect();
    let k = config.k_max;
    let neighborhood = DeletionNeighborhood::build(&chars, k);

    (0..words.len())
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<TransformationRule, u64>, i| {
            let source = &chars[i];
            let tag = pos.tag_of(&words[i]);
            for j in neighborhood.candidates(source, k) {
                let j = j as usize;
                if j == i {
                    continue;
                }
                if bounded_indel_distance(source, &chars[j], k).is_some_and(|d| d >= 1) {
                    if let Some(rule) = extract_rule_chars(source, &chars[j], tag) {
                        *acc.entry(rule).or_default() += 1;
                    }
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() {
                (std::mem::take(&mut a), b)
            } else {
                (b, a)
            };
            for (r, c) in small {
                *big.entry(r).or_default() += c;
            }
            big
        })
}
