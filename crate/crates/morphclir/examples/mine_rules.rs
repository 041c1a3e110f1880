//! Extract the insert/delete rule between word pairs, mine a rule table
//! from a vocabulary, and apply rules back to words.
//!
//! cargo run --example mine_rules

use morphclir::corpus::PosLexicon;
use morphclir::morphgen::apply_rule;
use morphclir::rules::{extract_rule, indel_distance, mine_rules, MedConfig};

fn main() -> morphclir::Result<()> {
    for (w, v) in [
        ("jhangrd", "jhangrdi"),
        ("ksart", "ksarat"),
        ("shabe", "ashab"),
        ("cat", "cats"),
    ] {
        let rule = extract_rule(w, v, "N")?;
        let back = apply_rule(w, &rule);
        println!(
            "{w:>8} -> {v:<8} d={} {rule}  round trip: {}",
            indel_distance(w, v),
            back.contains(v)
        );
    }

    let vocab = [
        "cat", "cats", "mat", "mats", "walk", "walked", "walks", "talk", "talked",
    ];
    let pos = PosLexicon::from_pairs([("cat", "N"), ("cats", "N"), ("mat", "N"), ("mats", "N")]);
    let table = mine_rules(vocab, &pos, &MedConfig::new(2)?)?;
    println!("\n{} rules over {} pairs", table.len(), table.total_count());
    let mut out = std::io::stdout().lock();
    table.write_tsv(&mut out).expect("stdout");
    Ok(())
}
