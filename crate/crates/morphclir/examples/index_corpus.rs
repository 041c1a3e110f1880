//! Tokenize a small corpus, build the inverted index and window counts,
//! and persist both as a snapshot.
//!
//! cargo run --example index_corpus

use morphclir::corpus::{
    read_snapshot, tokenize, write_snapshot, CollectionIndex, CooccurrenceTable, Document, StopwordList,
    TOKENIZER_DESCRIPTION,
};

fn main() -> morphclir::Result<()> {
    let docs = vec![
        Document::new("d1", "The exports of wheat rose; wheat exporters cheered."),
        Document::new("d2", "Import taxes on cars and car parts."),
        Document::new("d3", "Exported cars, imported wheat."),
    ];
    let stopwords = StopwordList::new(["the", "of", "on", "and"]);
    println!("{:?}", tokenize(&docs[0].text, &stopwords));

    let index = CollectionIndex::build(docs.clone(), &stopwords)?;
    println!(
        "{} docs, {} terms, {} tokens",
        index.num_docs(),
        index.num_terms(),
        index.total_tokens()
    );
    for term in ["wheat", "cars"] {
        println!(
            "{term}: df={} cf={} p(t|C)={:.4}",
            index.doc_freq(term),
            index.collection_freq(term),
            index.collection_prob(term)
        );
    }

    let streams: Vec<Vec<String>> = docs.iter().map(|d| tokenize(&d.text, &stopwords)).collect();
    let cooc = CooccurrenceTable::build(&streams, 3)?;
    println!(
        "{} windows of 3; wheat/exports share {}",
        cooc.total_windows(),
        cooc.pair_count("wheat", "exports")
    );

    let dir = std::env::temp_dir().join("morphclir-index-example");
    let manifest = write_snapshot(
        &dir,
        &index,
        Some(&cooc),
        TOKENIZER_DESCRIPTION,
        "none",
        stopwords.len(),
    )?;
    let snap = read_snapshot(&dir)?;
    assert_eq!(snap.manifest, manifest);
    println!("snapshot at {}", dir.display());
    Ok(())
}
