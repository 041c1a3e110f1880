//! Rank documents by KL divergence with Dirichlet smoothing, then score
//! the run with AP, P@k and the interpolated precision curve.
//!
//! cargo run --example retrieve_evaluate

use morphclir::corpus::{CollectionIndex, Document, StopwordList};
use morphclir::disambig::{Provenance, QueryTerm, WeightedQuery};
use morphclir::retrieval::{evaluate, score_kl, Qrels, RetrievalConfig, RunFile};

fn main() -> morphclir::Result<()> {
    let docs = vec![
        Document::new("d1", "solar power plant output"),
        Document::new("d2", "solar panels and solar power"),
        Document::new("d3", "coal power plant"),
        Document::new("d4", "wind farm output"),
    ];
    let index = CollectionIndex::build(docs, &StopwordList::new(["and"]))?;
    let query = WeightedQuery::from_terms(
        "q1",
        [("solar", 0.7), ("power", 0.3)].map(|(t, w)| QueryTerm {
            term: t.into(),
            weight: w,
            provenance: Provenance::Dictionary,
        }),
    );
    let cfg = RetrievalConfig {
        mu: 100.0,
        feedback: false,
        ..Default::default()
    };
    let ranking = score_kl(&query, &index, &cfg)?;
    for (rank, d) in ranking.iter().enumerate() {
        println!("{} {} {:.4}", rank + 1, d.doc_id, d.score);
    }

    let mut run = RunFile::new("demo");
    run.insert("q1", ranking);
    let mut qrels = Qrels::new();
    qrels.add("q1", "d2", true);
    qrels.add("q1", "d1", true);
    qrels.add("q1", "d4", true);
    let result = evaluate(&run, &qrels);
    let mut out = std::io::stdout().lock();
    result.write_summary(&mut out).expect("stdout");
    Ok(())
}
