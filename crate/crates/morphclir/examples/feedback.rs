//! Fit the mixture feedback model on top-ranked documents and expand a
//! query with it.
//!
//! cargo run --example feedback

use morphclir::corpus::{CollectionIndex, Document, StopwordList};
use morphclir::disambig::{Provenance, QueryTerm, WeightedQuery};
use morphclir::retrieval::{feedback_counts, fit_feedback_model, prf_mixture, score_kl, RetrievalConfig};

fn main() -> morphclir::Result<()> {
    let texts = [
        "flood river rain levee breach",
        "flood levee rain evacuation",
        "river cruise holiday",
        "rain forecast weekend",
        "levee repair after flood",
    ];
    let docs = texts
        .iter()
        .enumerate()
        .map(|(i, t)| Document::new(format!("d{i}"), *t));
    let index = CollectionIndex::build(docs, &StopwordList::default())?;
    let query = WeightedQuery::from_terms(
        "q",
        [QueryTerm {
            term: "flood".into(),
            weight: 1.0,
            provenance: Provenance::Dictionary,
        }],
    );
    let cfg = RetrievalConfig {
        mu: 10.0,
        prf_docs: 3,
        prf_terms: 4,
        ..Default::default()
    };
    let first = score_kl(&query, &index, &cfg)?;

    let fit = fit_feedback_model(&feedback_counts(&first, &index, cfg.prf_docs), cfg.prf_noise);
    let ll = &fit.log_likelihoods;
    println!(
        "EM: {} iterations, log-likelihood {:.4} -> {:.4}",
        ll.len() - 1,
        ll[0],
        ll[ll.len() - 1]
    );

    let expanded = prf_mixture(&query, &first, &index, &cfg);
    for t in &expanded.terms {
        println!("{:<12} {:.4} {}", t.term, t.weight, t.provenance);
    }
    Ok(())
}
