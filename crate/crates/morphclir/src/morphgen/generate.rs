use std::collections::{BTreeMap, HashSet};

use crate::corpus::{CooccurrenceTable, PosLexicon, DEFAULT_WINDOW};
use crate::error::{Error, Result};
use crate::rules::{bounded_indel_distance, extract_rule_chars, DeletionNeighborhood, RuleTable, TransformationRule};

/// A vocabulary word reachable from a source word by one mined rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FormationCandidate {
    pub source: String,
    pub surface: String,
    pub rule: TransformationRule,
    /// Probability of `rule`, used as the estimate of p(surface | source).
    pub prob: f64,
}

/// Filters that keep low-confidence formations out of a query.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseFilterConfig {
    /// Minimum rule probability τ.
    pub rule_prob_threshold: f64,
    /// Minimum formation length (characters) per edit distance k.
    pub min_len: BTreeMap<usize, usize>,
    pub context_window: usize,
    pub require_context: bool,
}

impl Default for NoiseFilterConfig {
    fn default() -> Self {
        Self {
            rule_prob_threshold: 1e-4,
            min_len: BTreeMap::from([(1, 4), (2, 5), (3, 6)]),
            context_window: DEFAULT_WINDOW,
            require_context: true,
        }
    }
}

impl NoiseFilterConfig {
    /// Length floor for formations `k` edits away; 0 when unset.
    pub fn min_len_for(&self, k: usize) -> usize {
        self.min_len.get(&k).copied().unwrap_or(0)
    }

    /// Checks τ and that a length floor exists for every k up to `k_max`.
    pub fn validate(&self, k_max: usize) -> Result<()> {
        if !(self.rule_prob_threshold >= 0.0) {
            return Err(Error::Config("rule probability threshold must be >= 0".into()));
        }
        if let Some(k) = (1..=k_max).find(|k| !self.min_len.contains_key(k)) {
            return Err(Error::Config(format!("no minimum formation length for k={k}")));
        }
        if self.context_window < 2 {
            return Err(Error::Config("context window must be at least 2".into()));
        }
        Ok(())
    }
}

/// Target-language vocabulary prepared for close-pair lookups.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    words: Vec<String>,
    chars: Vec<Vec<char>>,
    neighborhood: DeletionNeighborhood,
}

impl Vocabulary {
    /// Indexes `words` for lookups up to `k_max` edits.
    pub fn new<I, S>(words: I, k_max: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut words: Vec<String> = words.into_iter().map(|s| s.as_ref().to_string()).collect();
        words.sort_unstable();
        words.dedup();
        let chars: Vec<Vec<char>> = words.iter().map(|w| w.chars().collect()).collect();
        let neighborhood = DeletionNeighborhood::build(&chars, k_max);
        Self {
            words,
            chars,
            neighborhood,
        }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &str) -> bool {
        self.words.binary_search_by(|x| x.as_str().cmp(w)).is_ok()
    }

    pub fn max_distance(&self) -> usize {
        self.neighborhood.max_deletions()
    }

    /// Vocabulary words within `1..=k` edits of `w`, with their distance.
    pub fn within(&self, w: &str, k: usize) -> Vec<(usize, usize)> {
        let source: Vec<char> = w.chars().collect();
        self.neighborhood
            .candidates(&source, k)
            .into_iter()
            .filter_map(|id| {
                let id = id as usize;
                bounded_indel_distance(&source, &self.chars[id], k)
                    .filter(|&d| d >= 1)
                    .map(|d| (id, d))
            })
            .collect()
    }
}

/// Vocabulary words reachable from `w` by an observed rule that passes the
/// probability threshold and the length floor of its distance.
///
/// Sorted by descending probability, then surface form. `w` itself need not
/// be in the vocabulary and is never returned.
pub fn generate_formations(
    w: &str,
    pos: &PosLexicon,
    vocab: &Vocabulary,
    rules: &RuleTable,
    cfg: &NoiseFilterConfig,
) -> Vec<FormationCandidate> {
    let tag = pos.tag_of(w);
    let source: Vec<char> = w.chars().collect();
    let k = rules.k_max().min(vocab.max_distance());
    let mut out: Vec<FormationCandidate> = vocab
        .within(w, k)
        .into_iter()
        .filter(|&(id, d)| vocab.chars[id].len() >= cfg.min_len_for(d))
        .filter_map(|(id, _)| {
            let rule = extract_rule_chars(&source, &vocab.chars[id], tag)?;
            let stats = rules.get(&rule)?;
            (stats.prob >= cfg.rule_prob_threshold).then(|| FormationCandidate {
                source: w.to_string(),
                surface: vocab.words[id].clone(),
                rule,
                prob: stats.prob,
            })
        })
        .collect();
    out.sort_by(|a, b| b.prob.total_cmp(&a.prob).then_with(|| a.surface.cmp(&b.surface)));
    out
}

/// Keeps candidates that share at least one window with some anchor term.
pub fn context_filter<S: AsRef<str>>(
    cands: Vec<FormationCandidate>,
    anchors: &[S],
    cooc: &CooccurrenceTable,
) -> Vec<FormationCandidate> {
    let anchors: HashSet<&str> = anchors.iter().map(AsRef::as_ref).collect();
    cands
        .into_iter()
        .filter(|c| anchors.iter().any(|a| cooc.pair_count(&c.surface, a) >= 1))
        .collect()
}

/// Writes `source\tformation\trule\tprob` lines.
pub fn write_formations(out: &mut dyn std::io::Write, cands: &[FormationCandidate]) -> std::io::Result<()> {
    for c in cands {
        writeln!(out, "{}\t{}\t{}\t{}", c.source, c.surface, c.rule, c.prob)?;
    }
    Ok(())
}
