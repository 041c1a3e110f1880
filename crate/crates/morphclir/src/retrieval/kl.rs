use super::run::RankedDoc;
use crate::corpus::CollectionIndex;
use crate::disambig::WeightedQuery;
use crate::error::{Error, Result};

/// Retrieval and feedback settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalConfig {
    /// Dirichlet prior μ.
    pub mu: f64,
    /// Documents kept per query.
    pub top_k: usize,
    /// Run a second, feedback-expanded retrieval pass.
    pub feedback: bool,
    /// Top-ranked documents the feedback model is fitted on.
    pub prf_docs: usize,
    /// Feedback terms added to the query.
    pub prf_terms: usize,
    /// Interpolation weight of the feedback model.
    pub prf_lambda: f64,
    /// Weight of the collection component in the feedback mixture.
    pub prf_noise: f64,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        Self {
            mu: 1000.0,
            top_k: 1000,
            feedback: true,
            prf_docs: 30,
            prf_terms: 50,
            prf_lambda: 0.5,
            prf_noise: 0.5,
        }
    }
}

impl RetrievalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::Config("mu must be positive".into()));
        }
        if self.top_k == 0 {
            return Err(Error::Config("top_k must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.prf_lambda) {
            return Err(Error::Config("prf_lambda must lie in [0, 1]".into()));
        }
        if !(0.0..1.0).contains(&self.prf_noise) {
            return Err(Error::Config("prf_noise must lie in [0, 1)".into()));
        }
        Ok(())
    }
}

/// Ranks every document by `Σ_t p(t|q) · ln p(t|d)` with the Dirichlet
/// smoothed document model `p(t|d) = (tf + μ·p(t|C)) / (|d| + μ)`.
///
/// Query weights are normalized first, so rescaling them changes nothing.
/// Terms the collection has never seen are skipped; if none remain the
/// ranking is empty. Ties go to the smaller document id, and the list is
/// cut at `top_k`.
pub fn score_kl(query: &WeightedQuery, index: &CollectionIndex, cfg: &RetrievalConfig) -> Result<Vec<RankedDoc>> {
    if query.is_empty() {
        return Err(Error::EmptyQuery(Some(query.query_id.clone())));
    }
    if index.is_empty() || index.total_tokens() == 0 {
        return Err(Error::EmptyCollection);
    }
    let mu = cfg.mu;
    let total_weight: f64 = query.terms.iter().map(|t| t.weight).sum();
    if !(total_weight > 0.0) {
        return Err(Error::EmptyQuery(Some(query.query_id.clone())));
    }
    let total_tokens = index.total_tokens() as f64;

    // (term number, p(t|q), μ·p(t|C))
    let terms: Vec<(u32, f64, f64)> = query
        .terms
        .iter()
        .filter_map(|t| {
            let num = index.term_num(&t.term)?;
            let cf = index.collection_freq_of(num);
            (cf > 0).then(|| (num, t.weight / total_weight, mu * cf as f64 / total_tokens))
        })
        .collect();
    if terms.is_empty() {
        return Ok(Vec::new());
    }

    // every document starts from the all-unseen score, matches add the difference
    let mut scores: Vec<f64> = (0..index.num_docs() as u32)
        .map(|d| {
            let denom = f64::from(index.doc_len(d)) + mu;
            terms.iter().map(|&(_, qw, prior)| qw * (prior / denom).ln()).sum()
        })
        .collect();
    for &(t, qw, prior) in &terms {
        for p in index.postings(t) {
            scores[p.doc as usize] += qw * ((f64::from(p.tf) + prior).ln() - prior.ln());
        }
    }

    let mut ranked: Vec<(u32, f64)> = scores.into_iter().enumerate().map(|(d, s)| (d as u32, s)).collect();
    let by_rank = |a: &(u32, f64), b: &(u32, f64)| {
        b.1.total_cmp(&a.1)
            .then_with(|| index.doc_id(a.0).cmp(index.doc_id(b.0)))
    };
    if ranked.len() > cfg.top_k {
        ranked.select_nth_unstable_by(cfg.top_k - 1, by_rank);
        ranked.truncate(cfg.top_k);
    }
    ranked.sort_by(by_rank);
    Ok(ranked
        .into_iter()
        .map(|(d, score)| RankedDoc {
            doc_id: index.doc_id(d).to_string(),
            score,
        })
        .collect())
}
