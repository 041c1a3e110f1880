use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use morphclir::commands;
use morphclir::config::ExperimentConfig;
use morphclir::retrieval::Exclusion;

#[derive(Parser)]
#[command(
    name = "morphclir",
    version,
    about = "Affix-rule mining and morphology-aware cross-lingual retrieval"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (TOML).
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set translation.mode=ag`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Write the effective config here.
    #[arg(long)]
    emit_config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the index snapshot and co-occurrence table.
    Index(Common),
    /// Mine transformation rules from the indexed vocabulary.
    MineRules(Common),
    /// List filtered formations of words (default: all topic translations).
    Generate {
        #[command(flatten)]
        common: Common,
        words: Vec<String>,
    },
    /// Translate topics into weighted target-language queries.
    Translate(Common),
    /// Retrieve for the weighted queries and write a TREC run.
    Retrieve(Common),
    /// Evaluate a run against qrels.
    Evaluate {
        run: PathBuf,
        qrels: PathBuf,
        /// Per-query metrics table.
        #[arg(long)]
        per_query: Option<PathBuf>,
    },
    /// Paired t-test on the per-query APs of two runs.
    Ttest {
        run_a: PathBuf,
        run_b: PathBuf,
        qrels: PathBuf,
    },
    /// Cross-validated tuning of the formation filters.
    TuneThresholds(Common),
}

fn config(c: &Common) -> morphclir::Result<ExperimentConfig> {
    let cfg = ExperimentConfig::load(c.config.as_deref(), &c.overrides)?;
    if let Some(p) = &c.emit_config {
        std::fs::write(p, cfg.to_toml_string())
            .map_err(|e| morphclir::Error::Invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> morphclir::Result<()> {
    let mut out = std::io::stdout().lock();
    let w = |r: std::io::Result<()>| r.map_err(|e| morphclir::Error::Invalid(format!("stdout: {e}")));
    match cli.command {
        Command::Index(c) => {
            let m = commands::cmd_index(&config(&c)?)?;
            w(writeln!(
                out,
                "documents\t{}\nterms\t{}\ntokens\t{}\nwindows\t{}",
                m.documents,
                m.terms,
                m.total_tokens,
                m.total_windows.unwrap_or(0)
            ))?;
        }
        Command::MineRules(c) => {
            let t = commands::cmd_mine_rules(&config(&c)?)?;
            w(writeln!(out, "rules\t{}\npairs\t{}", t.len(), t.total_count()))?;
        }
        Command::Generate { common, words } => {
            let cands = commands::cmd_generate(&config(&common)?, &words)?;
            eprintln!("{} formations", cands.len());
        }
        Command::Translate(c) => {
            let q = commands::cmd_translate(&config(&c)?)?;
            w(writeln!(out, "queries\t{}", q.len()))?;
        }
        Command::Retrieve(c) => {
            let r = commands::cmd_retrieve(&config(&c)?)?;
            w(writeln!(out, "queries\t{}", r.results.len()))?;
        }
        Command::Evaluate { run, qrels, per_query } => {
            let r = commands::cmd_evaluate(&run, &qrels, per_query.as_deref())?;
            w(r.write_summary(&mut out))?;
            for (q, why) in &r.excluded {
                let why = match why {
                    Exclusion::NotJudged => "not in qrels",
                    Exclusion::NoRelevant => "no relevant documents",
                };
                eprintln!("excluded {q}: {why}");
            }
        }
        Command::Ttest { run_a, run_b, qrels } => {
            let r = commands::cmd_ttest(&run_a, &run_b, &qrels)?;
            w(r.write(&mut out))?;
        }
        Command::TuneThresholds(c) => {
            let r = commands::cmd_tune_thresholds(&config(&c)?)?;
            w(r.write(&mut out))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("morphclir: {e}");
            ExitCode::FAILURE
        }
    }
}
