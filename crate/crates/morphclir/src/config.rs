//! Experiment configuration.
//!
//! A TOML file with one table per pipeline stage. Every key is optional and
//! defaults to the library default of the matching module. Individual keys
//! can be overridden as `section.key=value` before the file is interpreted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::DEFAULT_WINDOW;
use crate::disambig::{ItdParams, MorphMode, TranslationOptions, Weighting};
use crate::error::{Error, Result};
use crate::io;
use crate::morphgen::NoiseFilterConfig;
use crate::retrieval::RetrievalConfig;
use crate::rules::{MedConfig, DEFAULT_K_MAX};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Seed for every random choice (topic folds).
    pub seed: u64,
    pub paths: PathsConfig,
    pub index: IndexConfig,
    pub mining: MiningConfig,
    pub translation: TranslationConfig,
    pub noise: NoiseConfig,
    pub itd: ItdConfig,
    pub retrieval: RetrievalSection,
    pub tuning: TuningConfig,
}

/// Inputs and outputs. Relative paths resolve against the working directory.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathsConfig {
    pub corpus: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub source_stopwords: Option<PathBuf>,
    pub pos_lexicon: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub topics: Option<PathBuf>,
    pub qrels: Option<PathBuf>,
    /// `term\tstem` table for stem mode.
    pub stemmer: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    /// Index snapshot directory.
    pub index: Option<PathBuf>,
    pub formations: Option<PathBuf>,
    pub queries: Option<PathBuf>,
    pub run: Option<PathBuf>,
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndexConfig {
    pub window: usize,
    /// `none`, `stem` or `ngram`; applied to every indexed token.
    pub term_transform: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MiningConfig {
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TranslationConfig {
    pub mode: String,
    pub weighting: String,
    pub ngram: usize,
    /// Suffixes for the built-in stripper, used when no stem table is given.
    pub stem_suffixes: Vec<String>,
    pub stem_min_len: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    pub rule_prob_threshold: f64,
    /// Minimum formation length for k = 1, 2, 3, ...
    pub min_len: Vec<usize>,
    pub context_window: usize,
    pub require_context: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ItdConfig {
    pub max_iters: usize,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RetrievalSection {
    pub mu: f64,
    pub top_k: usize,
    pub feedback: bool,
    pub prf_docs: usize,
    pub prf_terms: usize,
    pub prf_lambda: f64,
    pub prf_noise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuningConfig {
    pub folds: usize,
    pub tau_grid: Vec<f64>,
    /// Values tried for each length floor.
    pub min_len_grid: Vec<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            paths: PathsConfig::default(),
            index: IndexConfig::default(),
            mining: MiningConfig::default(),
            translation: TranslationConfig::default(),
            noise: NoiseConfig::default(),
            itd: ItdConfig::default(),
            retrieval: RetrievalSection::default(),
            tuning: TuningConfig::default(),
        }
    }
}

impl Default for IndexConfig {
    fn default() -> Self {
        Self {
            window: DEFAULT_WINDOW,
            term_transform: "none".into(),
        }
    }
}

impl Default for MiningConfig {
    fn default() -> Self {
        Self { k_max: DEFAULT_K_MAX }
    }
}

impl Default for TranslationConfig {
    fn default() -> Self {
        let opts = TranslationOptions::default();
        Self {
            mode: opts.mode.to_string(),
            weighting: opts.weighting.to_string(),
            ngram: opts.ngram,
            stem_suffixes: Vec::new(),
            stem_min_len: 3,
        }
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseFilterConfig::default().into()
    }
}

impl From<NoiseFilterConfig> for NoiseConfig {
    fn from(n: NoiseFilterConfig) -> Self {
        let max_k = n.min_len.keys().copied().max().unwrap_or(0);
        Self {
            rule_prob_threshold: n.rule_prob_threshold,
            min_len: (1..=max_k).map(|k| n.min_len_for(k)).collect(),
            context_window: n.context_window,
            require_context: n.require_context,
        }
    }
}

impl From<&NoiseConfig> for NoiseFilterConfig {
    fn from(n: &NoiseConfig) -> Self {
        Self {
            rule_prob_threshold: n.rule_prob_threshold,
            min_len: n
                .min_len
                .iter()
                .enumerate()
                .map(|(i, &l)| (i + 1, l))
                .collect::<BTreeMap<_, _>>(),
            context_window: n.context_window,
            require_context: n.require_context,
        }
    }
}

impl Default for ItdConfig {
    fn default() -> Self {
        let p = ItdParams::default();
        Self {
            max_iters: p.max_iters,
            eps: p.eps,
        }
    }
}

impl Default for RetrievalSection {
    fn default() -> Self {
        RetrievalConfig::default().into()
    }
}

impl From<RetrievalConfig> for RetrievalSection {
    fn from(r: RetrievalConfig) -> Self {
        Self {
            mu: r.mu,
            top_k: r.top_k,
            feedback: r.feedback,
            prf_docs: r.prf_docs,
            prf_terms: r.prf_terms,
            prf_lambda: r.prf_lambda,
            prf_noise: r.prf_noise,
        }
    }
}

impl Default for TuningConfig {
    fn default() -> Self {
        Self {
            folds: 2,
            tau_grid: vec![0.0, 1e-4, 1e-3, 1e-2, 5e-2],
            min_len_grid: vec![3, 4, 5, 6, 7, 8],
        }
    }
}

/// How indexed tokens are rewritten before counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermTransform {
    None,
    Stem,
    Ngram(usize),
}

impl TermTransform {
    /// Name recorded in the snapshot manifest.
    pub fn label(self) -> String {
        match self {
            TermTransform::None => "none".into(),
            TermTransform::Stem => "stem".into(),
            TermTransform::Ngram(n) => format!("ngram:{n}"),
        }
    }
}

impl ExperimentConfig {
    /// Reads a config file, applies `section.key=value` overrides, and validates.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = io::read_to_string(p)?;
                text.parse::<toml::Table>()
                    .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
            }
            None => toml::Table::new(),
        };
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: ExperimentConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The complete configuration, every default spelled out.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        self.term_transform()?;
        self.med_config()?;
        let opts = self.translation_options()?;
        opts.noise.validate(self.mining.k_max)?;
        if opts.ngram == 0 {
            return Err(Error::Config("ngram must be at least 1".into()));
        }
        if self.index.window < 2 {
            return Err(Error::Config("index window must be at least 2".into()));
        }
        if !(self.itd.eps > 0.0) || self.itd.max_iters == 0 {
            return Err(Error::Config("itd needs eps > 0 and max_iters >= 1".into()));
        }
        self.retrieval_config().validate()?;
        if self.tuning.folds < 2 {
            return Err(Error::Config("tuning needs at least 2 folds".into()));
        }
        Ok(())
    }

    pub fn term_transform(&self) -> Result<TermTransform> {
        match self.index.term_transform.trim() {
            "none" => Ok(TermTransform::None),
            "stem" => Ok(TermTransform::Stem),
            "ngram" => Ok(TermTransform::Ngram(self.translation.ngram)),
            other => Err(Error::Config(format!(
                "unknown term transform `{other}` (expected none, stem or ngram)"
            ))),
        }
    }

    pub fn med_config(&self) -> Result<MedConfig> {
        MedConfig::new(self.mining.k_max)
    }

    pub fn translation_options(&self) -> Result<TranslationOptions> {
        Ok(TranslationOptions {
            mode: self.translation.mode.parse::<MorphMode>()?,
            weighting: self.translation.weighting.parse::<Weighting>()?,
            noise: (&self.noise).into(),
            itd: ItdParams {
                max_iters: self.itd.max_iters,
                eps: self.itd.eps,
            },
            ngram: self.translation.ngram,
        })
    }

    pub fn retrieval_config(&self) -> RetrievalConfig {
        let r = &self.retrieval;
        RetrievalConfig {
            mu: r.mu,
            top_k: r.top_k,
            feedback: r.feedback,
            prf_docs: r.prf_docs,
            prf_terms: r.prf_terms,
            prf_lambda: r.prf_lambda,
            prf_noise: r.prf_noise,
        }
    }

    /// The path stored under `paths.<name>`, or a config error naming it.
    pub fn require_path<'a>(&self, name: &str, value: &'a Option<PathBuf>) -> Result<&'a Path> {
        value
            .as_deref()
            .ok_or_else(|| Error::Config(format!("paths.{name} is not set")))
    }
}

/// Sets `section.key` (or a top-level `key`) in `table`. The value is read
/// as a TOML value when it parses as one and as a string otherwise.
pub fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{assignment}` is not `key=value`")))?;
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));
    let parts: Vec<&str> = key.trim().split('.').collect();
    let (last, sections) = parts.split_last().expect("split yields at least one part");
    let mut cur = table;
    for s in sections {
        cur = cur
            .entry(s.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("`{s}` is not a section")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}
