//! Drive the file-based pipeline from an experiment config, exactly as the
//! `morphclir` binary does: index, mine rules, translate, retrieve,
//! evaluate, compare.
//!
//! cargo run --release --example config_pipeline

use morphclir::commands;
use morphclir::config::ExperimentConfig;
use morphclir::synthetic::{SyntheticCollection, SyntheticConfig};

fn main() -> morphclir::Result<()> {
    let dir = std::env::temp_dir().join("morphclir-pipeline-example");
    SyntheticCollection::generate(&SyntheticConfig::default()).write_to(&dir)?;

    let mut cfg = ExperimentConfig::default();
    let p = &mut cfg.paths;
    p.corpus = Some(dir.join("corpus.tsv"));
    p.dictionary = Some(dir.join("dictionary.tsv"));
    p.topics = Some(dir.join("topics.tsv"));
    p.qrels = Some(dir.join("qrels.txt"));
    p.index = Some(dir.join("index"));
    p.rules = Some(dir.join("rules.tsv"));
    cfg.translation.weighting = "2g".into();

    let manifest = commands::cmd_index(&cfg)?;
    println!("indexed {} documents", manifest.documents);
    let rules = commands::cmd_mine_rules(&cfg)?;
    println!("mined {} rules", rules.len());

    let mut runs = Vec::new();
    for mode in ["none", "ag"] {
        let mut c = cfg.clone();
        c.translation.mode = mode.into();
        c.paths.queries = Some(dir.join(format!("queries-{mode}.tsv")));
        c.paths.run = Some(dir.join(format!("run-{mode}.txt")));
        commands::cmd_translate(&c)?;
        commands::cmd_retrieve(&c)?;
        let run = c.paths.run.clone().expect("set above");
        let eval = commands::cmd_evaluate(&run, &dir.join("qrels.txt"), None)?;
        println!("{mode}: MAP {:.4}", eval.map);
        runs.push(run);
    }
    let report = commands::cmd_ttest(&runs[1], &runs[0], &dir.join("qrels.txt"))?;
    report.write(&mut std::io::stdout().lock()).expect("stdout");

    std::fs::write(dir.join("effective.toml"), cfg.to_toml_string()).expect("write config");
    println!("artifacts in {}", dir.display());
    Ok(())
}
