//! Generate formations of a word from a mined rule table and watch the
//! noise filters (rule probability, length floor, context) prune them.
//!
//! cargo run --example generate_formations

use morphclir::corpus::{tokenize, CooccurrenceTable, PosLexicon, StopwordList};
use morphclir::morphgen::{context_filter, generate_formations, ngram_split, NoiseFilterConfig, Vocabulary};
use morphclir::rules::{mine_rules, MedConfig};

fn main() -> morphclir::Result<()> {
    let text = [
        "market report: export prices and exports grew while exporters waited",
        "the exported grain reached the port; export duty fell",
        "report on sports: the sport club reported gains",
    ];
    let sw = StopwordList::new(["the", "and", "on", "while"]);
    let streams: Vec<Vec<String>> = text.iter().map(|t| tokenize(t, &sw)).collect();
    let words: Vec<&String> = streams.iter().flatten().collect();
    let med = MedConfig::default();
    let pos = PosLexicon::new();
    let rules = mine_rules(words.iter().map(|w| w.as_str()), &pos, &med)?;
    let vocab = Vocabulary::new(words.iter().map(|w| w.as_str()), med.k_max);
    let cooc = CooccurrenceTable::build(&streams, 10)?;

    for tau in [0.0, 0.05] {
        let cfg = NoiseFilterConfig {
            rule_prob_threshold: tau,
            ..Default::default()
        };
        let forms = generate_formations("export", &pos, &vocab, &rules, &cfg);
        let names: Vec<String> = forms.iter().map(|f| format!("{} ({:.3})", f.surface, f.prob)).collect();
        println!("tau={tau}: {}", names.join(", "));
        let kept = context_filter(forms, &["export"], &cooc);
        let names: Vec<&str> = kept.iter().map(|f| f.surface.as_str()).collect();
        println!("  co-occurring with `export`: {}", names.join(", "));
    }
    println!("5-gram split of `exporters`: {:?}", ngram_split("exporters", 5)?);
    Ok(())
}
