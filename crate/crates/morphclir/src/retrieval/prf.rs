//! Mixture-model pseudo-relevance feedback.
//!
//! The top documents are treated as draws from a two-component mixture of
//! an unknown feedback model and the collection model. Expectation
//! maximization estimates the feedback model; its best terms are then
//! interpolated into the query.

use std::collections::{BTreeMap, HashMap};

use super::kl::{score_kl, RetrievalConfig};
use super::run::RankedDoc;
use crate::corpus::{CollectionIndex, TermNum};
use crate::disambig::{Provenance, QueryTerm, WeightedQuery};
use crate::error::Result;

const MAX_EM_ITERS: usize = 200;
const EM_TOLERANCE: f64 = 1e-12;

/// A fitted feedback model.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureFit {
    /// p(t | feedback) for every term seen in the feedback documents.
    pub model: Vec<(TermNum, f64)>,
    /// Mixture log-likelihood after each iteration (index 0 is the start).
    pub log_likelihoods: Vec<f64>,
}

/// Fits `p(w) = (1-noise)·θ(w) + noise·p(w|C)` to the term counts by EM,
/// starting from the empirical distribution of the counts.
///
/// `counts` pairs each term with its count in the feedback documents and
/// its collection probability.
pub fn fit_feedback_model(counts: &[(TermNum, f64, f64)], noise: f64) -> MixtureFit {
    let total: f64 = counts.iter().map(|c| c.1).sum();
    if counts.is_empty() || total <= 0.0 {
        return MixtureFit {
            model: Vec::new(),
            log_likelihoods: Vec::new(),
        };
    }
    let mut theta: Vec<f64> = counts.iter().map(|c| c.1 / total).collect();
    let log_likelihood = |theta: &[f64]| -> f64 {
        counts
            .iter()
            .zip(theta)
            .map(|(&(_, c, pc), &th)| c * ((1.0 - noise) * th + noise * pc).ln())
            .sum()
    };
    let mut history = vec![log_likelihood(&theta)];
    for _ in 0..MAX_EM_ITERS {
        // E-step: share of each count attributed to the feedback component
        let expected: Vec<f64> = counts
            .iter()
            .zip(&theta)
            .map(|(&(_, c, pc), &th)| {
                let fb = (1.0 - noise) * th;
                let denom = fb + noise * pc;
                if denom > 0.0 {
                    c * fb / denom
                } else {
                    0.0
                }
            })
            .collect();
        let norm: f64 = expected.iter().sum();
        if norm <= 0.0 {
            break;
        }
        // M-step
        theta = expected.iter().map(|e| e / norm).collect();
        let ll = log_likelihood(&theta);
        let prev = *history.last().unwrap_or(&ll);
        history.push(ll);
        if (ll - prev).abs() <= EM_TOLERANCE * prev.abs().max(1.0) {
            break;
        }
    }
    MixtureFit {
        model: counts.iter().map(|c| c.0).zip(theta).collect(),
        log_likelihoods: history,
    }
}

/// Term counts `(term, count, p(t|C))` pooled over the given documents.
pub fn feedback_counts(ranking: &[RankedDoc], index: &CollectionIndex, docs: usize) -> Vec<(TermNum, f64, f64)> {
    let mut counts: BTreeMap<TermNum, f64> = BTreeMap::new();
    for r in ranking.iter().take(docs) {
        if let Some(d) = index.doc_num(&r.doc_id) {
            for &(t, tf) in index.doc_terms(d) {
                *counts.entry(t).or_default() += f64::from(tf);
            }
        }
    }
    let total = index.total_tokens() as f64;
    counts
        .into_iter()
        .map(|(t, c)| (t, c, index.collection_freq_of(t) as f64 / total))
        .collect()
}

/// Expands `query` with the top feedback terms of the first `prf_docs`
/// documents of `ranking`:
/// `p'(t|q) = (1-λ)·p(t|q) + λ·p_fb(t)`, with `p_fb` renormalized over the
/// `prf_terms` best terms. An empty ranking or λ = 0 returns the query unchanged.
pub fn prf_mixture(
    query: &WeightedQuery,
    ranking: &[RankedDoc],
    index: &CollectionIndex,
    cfg: &RetrievalConfig,
) -> WeightedQuery {
    if ranking.is_empty() || cfg.prf_lambda == 0.0 || cfg.prf_docs == 0 || cfg.prf_terms == 0 {
        return query.clone();
    }
    let counts = feedback_counts(ranking, index, cfg.prf_docs);
    let fit = fit_feedback_model(&counts, cfg.prf_noise);
    let mut model = fit.model;
    model.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| index.term(a.0).cmp(index.term(b.0))));
    model.truncate(cfg.prf_terms);
    let fb_total: f64 = model.iter().map(|m| m.1).sum();
    if !(fb_total > 0.0) {
        return query.clone();
    }

    let q_total = query.total_weight();
    let lambda = cfg.prf_lambda;
    let mut terms: HashMap<String, QueryTerm> = HashMap::new();
    for t in &query.terms {
        terms.insert(
            t.term.clone(),
            QueryTerm {
                weight: (1.0 - lambda) * t.weight / q_total,
                ..t.clone()
            },
        );
    }
    for (t, p) in model {
        let term = index.term(t).to_string();
        let add = lambda * p / fb_total;
        terms
            .entry(term.clone())
            .and_modify(|q| q.weight += add)
            .or_insert(QueryTerm {
                term,
                weight: add,
                provenance: Provenance::Feedback,
            });
    }
    WeightedQuery::from_terms(query.query_id.clone(), terms.into_values())
}

/// Scores `query`, and when feedback is enabled, re-scores the
/// feedback-expanded query.
pub fn retrieve(query: &WeightedQuery, index: &CollectionIndex, cfg: &RetrievalConfig) -> Result<Vec<RankedDoc>> {
    let first = score_kl(query, index, cfg)?;
    if !cfg.feedback || first.is_empty() {
        return Ok(first);
    }
    let expanded = prf_mixture(query, &first, index, cfg);
    score_kl(&expanded, index, cfg)
}
