//! Reference implementations written straight from the definitions.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use morphclir::corpus::PosLexicon;
use morphclir::disambig::TranslationCandidateSet;
use morphclir::morphgen::NoiseFilterConfig;
use morphclir::retrieval::RECALL_LEVELS;
use morphclir::rules::{extract_rule, indel_distance, RuleTable, TransformationRule};

/// Longest common subsequence length by the textbook table.
pub fn lcs(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            t[i][j] = if a[i - 1] == b[j - 1] {
                t[i - 1][j - 1] + 1
            } else {
                t[i - 1][j].max(t[i][j - 1])
            };
        }
    }
    t[a.len()][b.len()]
}

/// Every ordered pair of distinct words within `k` edits, counted without pruning.
pub fn brute_force_counts(vocab: &[String], pos: &PosLexicon, k: usize) -> HashMap<TransformationRule, u64> {
    let mut counts = HashMap::new();
    for w in vocab {
        for v in vocab {
            if w != v && indel_distance(w, v) <= k {
                *counts.entry(extract_rule(w, v, pos.tag_of(w)).unwrap()).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Formations found by extracting a rule against every vocabulary word.
pub fn exhaustive_formations(
    w: &str,
    pos: &PosLexicon,
    vocab: &[String],
    rules: &RuleTable,
    cfg: &NoiseFilterConfig,
) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = vocab
        .iter()
        .filter_map(|v| {
            let d = indel_distance(w, v);
            if d == 0 || d > rules.k_max() || v.chars().count() < cfg.min_len_for(d) {
                return None;
            }
            let p = rules.get(&extract_rule(w, v, pos.tag_of(w)).unwrap())?.prob;
            (p >= cfg.rule_prob_threshold).then(|| (v.clone(), p))
        })
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Symmetric pseudo-random edge weight in `[lo, lo + 1)` fixed by the seed.
pub fn hashed_edge(seed: u64, lo: f64) -> impl Fn(&str, &str) -> f64 {
    move |a: &str, b: &str| {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (seed, x, y).hash(&mut h);
        lo + (h.finish() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Per-term coherence weights from enumerating every window by hand: a
/// dictionary candidate scores its joint probability with the dictionary
/// candidates and formations of other terms, a formation with their
/// dictionary candidates only; all-zero terms fall back to uniform.
pub fn bigram_oracle(docs: &[Vec<String>], w: usize, sets: &[TranslationCandidateSet]) -> Vec<Vec<f64>> {
    let windows: Vec<BTreeSet<&str>> = docs
        .iter()
        .filter(|d| !d.is_empty())
        .flat_map(|d| {
            let n = if d.len() <= w { 1 } else { d.len() - w + 1 };
            (0..n).map(move |s| d[s..(s + w).min(d.len())].iter().map(String::as_str).collect())
        })
        .collect();
    let jp = |a: &str, b: &str| {
        if a == b {
            return 0.0;
        }
        windows.iter().filter(|win| win.contains(a) && win.contains(b)).count() as f64 / windows.len() as f64
    };
    sets.iter()
        .enumerate()
        .map(|(i, s)| {
            let others = || sets.iter().enumerate().filter(move |&(k, _)| k != i).map(|(_, o)| o);
            let mut scores: Vec<f64> = s
                .dictionary
                .iter()
                .map(|c| {
                    others()
                        .map(|o| {
                            o.dictionary.iter().map(|d| jp(c, d)).sum::<f64>()
                                + o.formations.iter().map(|f| jp(c, &f.surface)).sum::<f64>()
                        })
                        .sum()
                })
                .collect();
            scores.extend(s.formations.iter().map(|f| {
                others()
                    .map(|o| o.dictionary.iter().map(|d| jp(&f.surface, d)).sum::<f64>())
                    .sum::<f64>()
            }));
            let total: f64 = scores.iter().sum();
            if total > 0.0 {
                scores.iter().map(|x| x / total).collect()
            } else {
                vec![1.0 / scores.len() as f64; scores.len()]
            }
        })
        .collect()
}

/// `(AP, P@5, P@10, 11-point curve)` computed at every cutoff.
pub fn definition_metrics(ranking: &[String], rel: &BTreeSet<String>) -> (f64, f64, f64, [f64; 11]) {
    let hits_at = |k: usize| ranking.iter().take(k).filter(|d| rel.contains(*d)).count();
    let ap = rel
        .iter()
        .filter_map(|r| ranking.iter().position(|d| d == r))
        .map(|i| hits_at(i + 1) as f64 / (i + 1) as f64)
        .sum::<f64>()
        / rel.len() as f64;
    let mut curve = [0.0; 11];
    for (slot, level) in curve.iter_mut().zip(RECALL_LEVELS) {
        *slot = (1..=ranking.len())
            .filter(|&k| hits_at(k) as f64 / rel.len() as f64 >= level - 1e-12)
            .map(|k| hits_at(k) as f64 / k as f64)
            .fold(0.0, f64::max);
    }
    (ap, hits_at(5) as f64 / 5.0, hits_at(10) as f64 / 10.0, curve)
}
