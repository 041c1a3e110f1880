use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use super::action::TransformationRule;
use crate::error::{Error, Result};
use crate::io;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleStats {
    pub count: u64,
    pub prob: f64,
}

/// Pool of transformation rules with their occurrence counts and
/// maximum-likelihood probabilities `count(r) / Σ count`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleTable {
    entries: HashMap<TransformationRule, RuleStats>,
    k_max: usize,
    total_count: u64,
}

/// Turns raw counts into a [`RuleTable`] with `prob(r) = count(r) / Σ counts`.
pub fn score_rules(counts: HashMap<TransformationRule, u64>, k_max: usize) -> Result<RuleTable> {
    let total_count: u64 = counts.values().sum();
    if total_count == 0 {
        return Err(Error::EmptyRuleTable);
    }
    let total = total_count as f64;
    let entries = counts
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .map(|(r, count)| {
            (
                r,
                RuleStats {
                    count,
                    prob: count as f64 / total,
                },
            )
        })
        .collect();
    Ok(RuleTable {
        entries,
        k_max,
        total_count,
    })
}

impl RuleTable {
    pub fn empty(k_max: usize) -> Self {
        Self {
            entries: HashMap::new(),
            k_max,
            total_count: 0,
        }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn total_count(&self) -> u64 {
        self.total_count
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, rule: &TransformationRule) -> Option<RuleStats> {
        self.entries.get(rule).copied()
    }

    pub fn count(&self, rule: &TransformationRule) -> u64 {
        self.get(rule).map_or(0, |s| s.count)
    }

    /// Probability of `rule`; zero for rules never observed.
    pub fn prob(&self, rule: &TransformationRule) -> f64 {
        self.get(rule).map_or(0.0, |s| s.prob)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TransformationRule, &RuleStats)> {
        self.entries.iter()
    }

    /// Rules by descending count, then actions encoding, then tag.
    pub fn sorted(&self) -> Vec<(&TransformationRule, RuleStats)> {
        let mut rows: Vec<(String, &TransformationRule, RuleStats)> =
            self.entries.iter().map(|(r, s)| (r.actions_key(), r, *s)).collect();
        rows.sort_by(|a, b| {
            b.2.count
                .cmp(&a.2.count)
                .then_with(|| a.0.cmp(&b.0))
                .then_with(|| a.1.pos_tag.cmp(&b.1.pos_tag))
        });
        rows.into_iter().map(|(_, r, s)| (r, s)).collect()
    }

    /// Keeps the rules with at most `k` actions, rescoring the survivors.
    pub fn restricted_to(&self, k: usize) -> RuleTable {
        let counts: HashMap<TransformationRule, u64> = self
            .entries
            .iter()
            .filter(|(r, _)| r.len() <= k)
            .map(|(r, s)| (r.clone(), s.count))
            .collect();
        score_rules(counts, k).unwrap_or_else(|_| RuleTable::empty(k))
    }

    /// Writes `actions<TAB>pos_tag<TAB>count<TAB>prob` lines in [`sorted`](Self::sorted) order.
    pub fn write_tsv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (rule, stats) in self.sorted() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                rule.actions_key(),
                rule.pos_tag,
                stats.count,
                stats.prob
            )?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        io::write_with(path.as_ref(), |w| self.write_tsv(w))
    }

    /// Loads a rule file. Probabilities are taken as written, so externally
    /// built rule databases keep their own scores.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse_tsv(&io::read_to_string(path)?, path)
    }

    pub fn parse_tsv(text: &str, origin: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        let mut total_count = 0u64;
        let mut k_max = 0usize;
        for (n, line) in io::content_lines(text) {
            let fields: Vec<&str> = line.split('\t').collect();
            let [actions, tag, count, prob] = fields[..] else {
                return Err(Error::parse(
                    origin,
                    n,
                    "expected `actions<TAB>pos_tag<TAB>count<TAB>prob`",
                ));
            };
            let actions =
                TransformationRule::parse_actions(actions).map_err(|e| Error::parse(origin, n, e.to_string()))?;
            if actions.is_empty() {
                return Err(Error::parse(origin, n, "rule without actions"));
            }
            let count: u64 = count.parse().map_err(|_| Error::parse(origin, n, "bad count"))?;
            let prob: f64 = prob.parse().map_err(|_| Error::parse(origin, n, "bad probability"))?;
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::parse(origin, n, "probability outside [0, 1]"));
            }
            k_max = k_max.max(actions.len());
            total_count += count;
            let rule = TransformationRule::new(actions, tag);
            if entries.insert(rule, RuleStats { count, prob }).is_some() {
                return Err(Error::parse(origin, n, "duplicate rule"));
            }
        }
        Ok(Self {
            entries,
            k_max,
            total_count,
        })
    }
}
