//! Pipeline steps driven by an [`ExperimentConfig`].
//!
//! Each `cmd_*` function reads its inputs from the configured paths, writes
//! its artifact, and returns what it wrote. The binary is a thin wrapper
//! over these.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use log::{info, warn};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, TermTransform};
use crate::corpus::{
    read_documents, read_snapshot, tokenize, write_snapshot, CollectionIndex, CooccurrenceTable, Document,
    IndexBuilder, IndexSnapshot, PosLexicon, SnapshotManifest, StopwordList, TOKENIZER_DESCRIPTION,
};
use crate::disambig::{
    build_weighted_query, load_topics, load_weighted_queries, save_weighted_queries, BilingualDictionary, MorphMode,
    Topic, TranslationOptions, TranslationResources, WeightedQuery,
};
use crate::error::{Error, Result};
use crate::io;
use crate::morphgen::{
    char_ngrams, context_filter, generate_formations, write_formations, FormationCandidate, IdentityStemmer, Stemmer,
    SuffixStripper, TableStemmer, Vocabulary,
};
use crate::retrieval::{evaluate, paired_ttest, retrieve, EvalResult, Qrels, RetrievalConfig, RunFile, TTest};
use crate::rules::{mine_rules, RuleTable};

fn stopwords(path: Option<&Path>) -> Result<StopwordList> {
    match path {
        Some(p) => StopwordList::load(p),
        None => Ok(StopwordList::default()),
    }
}

fn pos_lexicon(cfg: &ExperimentConfig) -> Result<PosLexicon> {
    match &cfg.paths.pos_lexicon {
        Some(p) => PosLexicon::load(p),
        None => Ok(PosLexicon::new()),
    }
}

/// The configured stemmer: a stem table, else a suffix stripper, else identity.
pub fn configured_stemmer(cfg: &ExperimentConfig) -> Result<Box<dyn Stemmer>> {
    if let Some(p) = &cfg.paths.stemmer {
        return Ok(Box::new(TableStemmer::load(p)?));
    }
    if !cfg.translation.stem_suffixes.is_empty() {
        return Ok(Box::new(SuffixStripper::new(
            &cfg.translation.stem_suffixes,
            cfg.translation.stem_min_len,
        )));
    }
    Ok(Box::new(IdentityStemmer))
}

/// Rewrites a token stream for the index; n-grams replace each token in place.
pub fn transform_tokens(tokens: Vec<String>, transform: TermTransform, stemmer: &dyn Stemmer) -> Result<Vec<String>> {
    Ok(match transform {
        TermTransform::None => tokens,
        TermTransform::Stem => tokens.iter().map(|t| stemmer.stem(t)).collect(),
        TermTransform::Ngram(n) => {
            let mut out = Vec::with_capacity(tokens.len());
            for t in &tokens {
                out.extend(char_ngrams(t, n)?);
            }
            out
        }
    })
}

/// Tokenizes and indexes documents, counting co-occurrence windows over the
/// same token streams.
pub fn build_collection(
    docs: &[Document],
    stopwords: &StopwordList,
    transform: TermTransform,
    stemmer: &dyn Stemmer,
    window: usize,
) -> Result<(CollectionIndex, CooccurrenceTable)> {
    let streams: Vec<Vec<String>> = docs
        .par_iter()
        .map(|d| transform_tokens(tokenize(&d.text, stopwords), transform, stemmer))
        .collect::<Result<_>>()?;
    let mut builder = IndexBuilder::new();
    for (d, tokens) in docs.iter().zip(&streams) {
        builder.add_tokens(&d.doc_id, tokens)?;
    }
    let index = builder.finish();
    let cooc = CooccurrenceTable::build(&streams, window)?;
    Ok((index, cooc))
}

/// Builds and persists the index snapshot with its co-occurrence table.
pub fn cmd_index(cfg: &ExperimentConfig) -> Result<SnapshotManifest> {
    let corpus = cfg.require_path("corpus", &cfg.paths.corpus)?;
    let out = cfg.require_path("index", &cfg.paths.index)?;
    let docs = read_documents(corpus)?;
    let sw = stopwords(cfg.paths.stopwords.as_deref())?;
    let transform = cfg.term_transform()?;
    let stemmer = configured_stemmer(cfg)?;
    let (index, cooc) = build_collection(&docs, &sw, transform, stemmer.as_ref(), cfg.index.window)?;
    info!(
        "indexed {} documents, {} terms, {} tokens",
        index.num_docs(),
        index.num_terms(),
        index.total_tokens()
    );
    write_snapshot(
        out,
        &index,
        Some(&cooc),
        TOKENIZER_DESCRIPTION,
        &transform.label(),
        sw.len(),
    )
}

pub fn load_index(cfg: &ExperimentConfig) -> Result<IndexSnapshot> {
    read_snapshot(cfg.require_path("index", &cfg.paths.index)?)
}

/// Mines rules over the indexed vocabulary and writes the rule file.
pub fn cmd_mine_rules(cfg: &ExperimentConfig) -> Result<RuleTable> {
    let out = cfg.require_path("rules", &cfg.paths.rules)?;
    let snap = load_index(cfg)?;
    if snap.index.num_terms() == 0 {
        return Err(Error::Invalid("the indexed vocabulary is empty".into()));
    }
    let table = mine_rules(snap.index.vocabulary(), &pos_lexicon(cfg)?, &cfg.med_config()?)?;
    info!(
        "mined {} rules from {} pair occurrences",
        table.len(),
        table.total_count()
    );
    table.save(out)?;
    Ok(table)
}

/// Everything translation and retrieval read, loaded once.
pub struct Workspace {
    pub snapshot: IndexSnapshot,
    pub dictionary: BilingualDictionary,
    pub pos: PosLexicon,
    pub rules: Option<RuleTable>,
    pub vocabulary: Option<Vocabulary>,
    pub stemmer: Box<dyn Stemmer>,
}

impl Workspace {
    /// Loads the index and dictionary, plus the rule table and vocabulary
    /// when the mode generates formations.
    pub fn load(cfg: &ExperimentConfig) -> Result<Self> {
        let opts = cfg.translation_options()?;
        let snapshot = load_index(cfg)?;
        let dictionary = BilingualDictionary::load(cfg.require_path("dictionary", &cfg.paths.dictionary)?)?;
        let (rules, vocabulary) = if opts.mode == MorphMode::Ag {
            let rules = RuleTable::load(cfg.require_path("rules", &cfg.paths.rules)?)?;
            let vocab = Vocabulary::new(snapshot.index.vocabulary(), rules.k_max());
            (Some(rules), Some(vocab))
        } else {
            (None, None)
        };
        Ok(Self {
            snapshot,
            dictionary,
            pos: pos_lexicon(cfg)?,
            rules,
            vocabulary,
            stemmer: configured_stemmer(cfg)?,
        })
    }

    pub fn resources(&self) -> TranslationResources<'_> {
        TranslationResources {
            dictionary: &self.dictionary,
            index: Some(&self.snapshot.index),
            cooccurrence: self.snapshot.cooccurrence.as_ref(),
            rules: self.rules.as_ref(),
            vocabulary: self.vocabulary.as_ref(),
            pos: &self.pos,
            stemmer: self.stemmer.as_ref(),
        }
    }
}

/// Formations of each word, filtered by rule probability and length and,
/// when required, by co-occurrence with any of the words.
pub fn generate_for_words(
    words: &[String],
    res: &TranslationResources<'_>,
    opts: &TranslationOptions,
) -> Result<Vec<FormationCandidate>> {
    let rules = res
        .rules
        .ok_or_else(|| Error::Config("a rule table is required".into()))?;
    let vocab = res
        .vocabulary
        .ok_or_else(|| Error::Config("a vocabulary is required".into()))?;
    opts.noise.validate(rules.k_max())?;
    let mut out = Vec::new();
    for w in words {
        let cands = generate_formations(w, res.pos, vocab, rules, &opts.noise);
        out.extend(match (opts.noise.require_context, res.cooccurrence) {
            (true, Some(cooc)) => context_filter(cands, words, cooc),
            (true, None) => return Err(Error::Config("a co-occurrence table is required".into())),
            (false, _) => cands,
        });
    }
    Ok(out)
}

/// Writes the formations of `words` (all dictionary translations of the
/// topics when empty) to `paths.formations`, or standard output.
pub fn cmd_generate(cfg: &ExperimentConfig, words: &[String]) -> Result<Vec<FormationCandidate>> {
    let mut cfg = cfg.clone();
    cfg.translation.mode = MorphMode::Ag.to_string();
    let ws = Workspace::load(&cfg)?;
    let opts = cfg.translation_options()?;
    let words: Vec<String> = if words.is_empty() {
        let topics = load_cfg_topics(&cfg)?;
        let mut all: Vec<String> = topics
            .iter()
            .flat_map(|t| &t.terms)
            .flat_map(|q| ws.dictionary.translations(q).iter().cloned())
            .collect();
        all.sort();
        all.dedup();
        all
    } else {
        words.iter().map(|w| w.to_lowercase()).collect()
    };
    let cands = generate_for_words(&words, &ws.resources(), &opts)?;
    match &cfg.paths.formations {
        Some(p) => io::write_with(p, |w| write_formations(w, &cands))?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_formations(&mut lock, &cands)
                .and_then(|_| lock.flush())
                .map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    Ok(cands)
}

fn load_cfg_topics(cfg: &ExperimentConfig) -> Result<Vec<Topic>> {
    let sw = stopwords(cfg.paths.source_stopwords.as_deref())?;
    load_topics(cfg.require_path("topics", &cfg.paths.topics)?, &sw)
}

/// Translates every topic; topics without a single term are skipped.
pub fn translate_topics(
    topics: &[Topic],
    res: &TranslationResources<'_>,
    opts: &TranslationOptions,
) -> Result<Vec<WeightedQuery>> {
    let mut out = Vec::with_capacity(topics.len());
    for t in topics {
        if t.terms.is_empty() {
            warn!("topic {} has no terms after tokenization; skipped", t.query_id);
            continue;
        }
        out.push(build_weighted_query(&t.query_id, &t.terms, res, opts)?);
    }
    Ok(out)
}

/// Translates the topics and writes the weighted-query file.
pub fn cmd_translate(cfg: &ExperimentConfig) -> Result<Vec<WeightedQuery>> {
    let out = cfg.require_path("queries", &cfg.paths.queries)?;
    let ws = Workspace::load(cfg)?;
    let topics = load_cfg_topics(cfg)?;
    let queries = translate_topics(&topics, &ws.resources(), &cfg.translation_options()?)?;
    save_weighted_queries(out, &queries)?;
    Ok(queries)
}

/// Runs every query against the index, in parallel.
pub fn retrieve_all(
    queries: &[WeightedQuery],
    index: &CollectionIndex,
    rcfg: &RetrievalConfig,
    tag: &str,
) -> Result<RunFile> {
    rcfg.validate()?;
    let rankings: Vec<_> = queries
        .par_iter()
        .map(|q| retrieve(q, index, rcfg).map(|r| (q.query_id.clone(), r)))
        .collect::<Result<_>>()?;
    let mut run = RunFile::new(tag);
    for (qid, r) in rankings {
        run.insert(qid, r);
    }
    Ok(run)
}

/// Retrieves for the weighted-query file and writes the run file.
pub fn cmd_retrieve(cfg: &ExperimentConfig) -> Result<RunFile> {
    let queries = load_weighted_queries(cfg.require_path("queries", &cfg.paths.queries)?)?;
    let out = cfg.require_path("run", &cfg.paths.run)?;
    let snap = load_index(cfg)?;
    let tag = format!("{}:{}", cfg.translation.mode, cfg.translation.weighting);
    let run = retrieve_all(&queries, &snap.index, &cfg.retrieval_config(), &tag)?;
    run.save(out)?;
    Ok(run)
}

/// Scores a run file; with `per_query_out`, also writes the per-query table.
pub fn cmd_evaluate(run: &Path, qrels: &Path, per_query_out: Option<&Path>) -> Result<EvalResult> {
    let result = evaluate(&RunFile::load(run)?, &Qrels::load(qrels)?);
    if let Some(p) = per_query_out {
        result.save_per_query(p)?;
    }
    Ok(result)
}

#[derive(Debug, Clone)]
pub struct TTestReport {
    pub a: EvalResult,
    pub b: EvalResult,
    /// Query ids the test was run on.
    pub queries: Vec<String>,
    pub test: TTest,
}

impl TTestReport {
    pub fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "queries\t{}", self.queries.len())?;
        writeln!(out, "map_a\t{:.4}", self.a.map)?;
        writeln!(out, "map_b\t{:.4}", self.b.map)?;
        writeln!(out, "t\t{}", self.test.t)?;
        writeln!(out, "p\t{:e}", self.test.p)?;
        let verdict = if self.test.significant(0.05) { "yes" } else { "no" };
        writeln!(out, "significant_at_95\t{verdict}")
    }
}

/// Paired t-test on the per-query APs of two runs.
pub fn cmd_ttest(run_a: &Path, run_b: &Path, qrels: &Path) -> Result<TTestReport> {
    let qrels = Qrels::load(qrels)?;
    let a = evaluate(&RunFile::load(run_a)?, &qrels);
    let b = evaluate(&RunFile::load(run_b)?, &qrels);
    let (queries, aps_a, aps_b) = a.paired_aps(&b);
    let test = paired_ttest(&aps_a, &aps_b);
    Ok(TTestReport { a, b, queries, test })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub test_queries: Vec<String>,
    pub rule_prob_threshold: f64,
    pub min_len: Vec<usize>,
    pub train_map: f64,
    pub test_map: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuningReport {
    pub folds: Vec<FoldResult>,
    /// Mean AP over all held-out queries.
    pub cross_validated_map: f64,
}

impl TuningReport {
    pub fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "fold\tqueries\ttau\tmin_len\ttrain_map\ttest_map")?;
        for (i, f) in self.folds.iter().enumerate() {
            let lens: Vec<String> = f.min_len.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{:.4}\t{:.4}",
                i + 1,
                f.test_queries.len(),
                f.rule_prob_threshold,
                lens.join(","),
                f.train_map,
                f.test_map
            )?;
        }
        writeln!(out, "cross_validated_map\t{:.4}", self.cross_validated_map)
    }
}

fn mean_ap(
    topics: &[&Topic],
    ws: &Workspace,
    opts: &TranslationOptions,
    rcfg: &RetrievalConfig,
    qrels: &Qrels,
) -> Result<BTreeMap<String, f64>> {
    let owned: Vec<Topic> = topics.iter().map(|t| (*t).clone()).collect();
    let queries = translate_topics(&owned, &ws.resources(), opts)?;
    let run = retrieve_all(&queries, &ws.snapshot.index, rcfg, "tune")?;
    let ids: Vec<&str> = owned.iter().map(|t| t.query_id.as_str()).collect();
    let full = evaluate(&run, qrels);
    Ok(full
        .per_query
        .into_iter()
        .filter(|(q, _)| ids.contains(&q.as_str()))
        .map(|(q, m)| (q, m.ap))
        .collect())
}

fn map_of(aps: &BTreeMap<String, f64>) -> f64 {
    if aps.is_empty() {
        0.0
    } else {
        aps.values().sum::<f64>() / aps.len() as f64
    }
}

/// Cross-validated tuning of the rule-probability threshold and the
/// length floors: topics are shuffled with the seed and dealt into folds;
/// on each training part the threshold and then each floor in turn is set
/// to the grid value with the best MAP (the first one on ties).
pub fn cmd_tune_thresholds(cfg: &ExperimentConfig) -> Result<TuningReport> {
    let base = cfg.translation_options()?;
    if base.mode != MorphMode::Ag {
        return Err(Error::Config("tune-thresholds needs translation.mode = ag".into()));
    }
    let ws = Workspace::load(cfg)?;
    let qrels = Qrels::load(cfg.require_path("qrels", &cfg.paths.qrels)?)?;
    let rcfg = cfg.retrieval_config();
    let mut topics = load_cfg_topics(cfg)?;
    topics.retain(|t| qrels.relevant(&t.query_id).is_some_and(|r| !r.is_empty()));
    let folds = cfg.tuning.folds;
    if topics.len() < folds {
        return Err(Error::Invalid(format!(
            "{} judged topics cannot be split into {folds} folds",
            topics.len()
        )));
    }
    let mut order: Vec<usize> = (0..topics.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let k_max = ws.rules.as_ref().map_or(cfg.mining.k_max, RuleTable::k_max);

    let mut results = Vec::new();
    let mut held_out: BTreeMap<String, f64> = BTreeMap::new();
    for f in 0..folds {
        let (mut train, mut test) = (Vec::new(), Vec::new());
        for (pos, &i) in order.iter().enumerate() {
            if pos % folds == f {
                test.push(&topics[i]);
            } else {
                train.push(&topics[i]);
            }
        }
        let mut opts = base.clone();
        let mut best = map_of(&mean_ap(&train, &ws, &opts, &rcfg, &qrels)?);
        let try_value = |opts: &mut TranslationOptions, best: &mut f64, candidate: TranslationOptions| -> Result<()> {
            let m = map_of(&mean_ap(&train, &ws, &candidate, &rcfg, &qrels)?);
            if m > *best {
                *best = m;
                *opts = candidate;
            }
            Ok(())
        };
        for &tau in &cfg.tuning.tau_grid {
            let mut c = opts.clone();
            c.noise.rule_prob_threshold = tau;
            try_value(&mut opts, &mut best, c)?;
        }
        for k in 1..=k_max {
            for &len in &cfg.tuning.min_len_grid {
                let mut c = opts.clone();
                c.noise.min_len.insert(k, len);
                try_value(&mut opts, &mut best, c)?;
            }
        }
        let test_aps = mean_ap(&test, &ws, &opts, &rcfg, &qrels)?;
        results.push(FoldResult {
            test_queries: test.iter().map(|t| t.query_id.clone()).collect(),
            rule_prob_threshold: opts.noise.rule_prob_threshold,
            min_len: (1..=k_max).map(|k| opts.noise.min_len_for(k)).collect(),
            train_map: best,
            test_map: map_of(&test_aps),
        });
        held_out.extend(test_aps);
    }
    Ok(TuningReport {
        folds: results,
        cross_validated_map: map_of(&held_out),
    })
}
