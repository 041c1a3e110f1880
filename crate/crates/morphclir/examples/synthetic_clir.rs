//! End-to-end run on the generated collection: mine rules, expand
//! translations with formations, retrieve with and without morphology,
//! and compare the two runs.
//!
//! cargo run --release --example synthetic_clir

use std::time::Instant;

use morphclir::commands::{build_collection, retrieve_all, translate_topics};
use morphclir::config::TermTransform;
use morphclir::corpus::{PosLexicon, StopwordList, DEFAULT_WINDOW};
use morphclir::disambig::{MorphMode, TranslationOptions, TranslationResources, Weighting};
use morphclir::morphgen::{IdentityStemmer, Vocabulary};
use morphclir::retrieval::{evaluate, paired_ttest, RetrievalConfig};
use morphclir::rules::{mine_rules, MedConfig};
use morphclir::synthetic::{SyntheticCollection, SyntheticConfig};

fn main() -> morphclir::Result<()> {
    let start = Instant::now();
    let coll = SyntheticCollection::generate(&SyntheticConfig::default());
    let (index, cooc) = build_collection(
        &coll.documents,
        &StopwordList::default(),
        TermTransform::None,
        &IdentityStemmer,
        DEFAULT_WINDOW,
    )?;
    println!("{} documents, {} terms", index.num_docs(), index.num_terms());

    let pos = PosLexicon::new();
    let med = MedConfig::default();
    let rules = mine_rules(index.vocabulary(), &pos, &med)?;
    let planted = coll.planted_rules();
    println!("{} rules mined; top 24:", rules.len());
    for (i, (rule, stats)) in rules.sorted().into_iter().take(24).enumerate() {
        let mark = if planted.contains(rule) { "*" } else { " " };
        println!(
            "{:>3} {mark} {:<24} {:>4} {:.5}",
            i + 1,
            rule.to_string(),
            stats.count,
            stats.prob
        );
    }

    let vocab = Vocabulary::new(index.vocabulary(), med.k_max);
    let res = TranslationResources {
        dictionary: &coll.dictionary,
        index: Some(&index),
        cooccurrence: Some(&cooc),
        rules: Some(&rules),
        vocabulary: Some(&vocab),
        pos: &pos,
        stemmer: &IdentityStemmer,
    };
    let rcfg = RetrievalConfig::default();
    let mut runs = Vec::new();
    for mode in [MorphMode::None, MorphMode::Ag] {
        let opts = TranslationOptions {
            mode,
            weighting: Weighting::Bigram,
            ..Default::default()
        };
        let queries = translate_topics(&coll.topics, &res, &opts)?;
        if mode == MorphMode::Ag {
            let (mut found, mut total) = (0, 0);
            for q in &queries {
                for b in &coll.query_bases[&q.query_id] {
                    for v in &coll.variants[b] {
                        total += 1;
                        found += usize::from(q.weight_of(v) > 0.0);
                    }
                }
            }
            println!("planted variants in AG queries: {found}/{total}");
        }
        let run = retrieve_all(&queries, &index, &rcfg, &format!("{mode}:2g"))?;
        let eval = evaluate(&run, &coll.qrels);
        println!(
            "{mode}:2g MAP {:.4}  P@5 {:.4}  P@10 {:.4}",
            eval.map, eval.p5, eval.p10
        );
        runs.push(eval);
    }
    let (_, ag, none) = runs[1].paired_aps(&runs[0]);
    let t = paired_ttest(&ag, &none);
    println!("AG vs none: t = {:.3}, p = {:.3e}", t.t, t.p);
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
