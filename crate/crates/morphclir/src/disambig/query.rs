use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use log::info;

use super::association::{estimate_association, AssociationKind};
use super::baseline::{baseline_weights, BaselineMethod};
use super::bigram::joint_weights_2g;
use super::candidates::{init_weights, TranslationCandidateSet};
use super::dictionary::BilingualDictionary;
use super::itd::{itd_weights, ItdParams};
use crate::corpus::{CollectionIndex, CooccurrenceTable, PosLexicon};
use crate::error::{Error, Result};
use crate::io;
use crate::morphgen::{
    context_filter, generate_formations, ngram_split, IdentityStemmer, NoiseFilterConfig, Stemmer, Vocabulary,
    DEFAULT_NGRAM,
};
use crate::rules::RuleTable;

/// How translations are morphologically expanded or normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphMode {
    /// Dictionary translations as they are.
    None,
    /// Translations replaced by their character n-grams.
    Split,
    /// Translations mapped through a stemmer.
    Stem,
    /// Translations plus formations generated from mined rules.
    Ag,
}

/// Translation weighting method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weighting {
    Top1,
    Unif,
    Coll,
    Itd,
    Bigram,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($variant:path => $kw:literal),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $kw),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($kw => Ok($variant),)+
                    other => Err(Error::Config(format!(
                        concat!("unknown ", $what, " `{}` (expected one of: {})"),
                        other,
                        [$($kw),+].join(", ")
                    ))),
                }
            }
        }
    };
}

keyword_enum!(MorphMode, "morphology mode",
    MorphMode::None => "none", MorphMode::Split => "split", MorphMode::Stem => "stem", MorphMode::Ag => "ag");
keyword_enum!(Weighting, "weighting method",
    Weighting::Top1 => "top1", Weighting::Unif => "unif", Weighting::Coll => "coll",
    Weighting::Itd => "itd", Weighting::Bigram => "2g");

/// Where a query term came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Dictionary,
    Formation,
    Feedback,
}

keyword_enum!(Provenance, "provenance",
    Provenance::Dictionary => "dictionary", Provenance::Formation => "formation", Provenance::Feedback => "feedback");

#[derive(Debug, Clone, PartialEq)]
pub struct QueryTerm {
    pub term: String,
    pub weight: f64,
    pub provenance: Provenance,
}

/// A target-language query as a probability distribution over terms.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedQuery {
    pub query_id: String,
    pub terms: Vec<QueryTerm>,
}

impl WeightedQuery {
    /// Merges duplicate terms (summing weight, keeping the earliest
    /// provenance), drops non-positive weights, normalizes to one, and sorts
    /// by descending weight then term.
    pub fn from_terms(query_id: impl Into<String>, terms: impl IntoIterator<Item = QueryTerm>) -> Self {
        let mut merged: BTreeMap<String, (f64, Provenance)> = BTreeMap::new();
        for t in terms {
            if !(t.weight > 0.0) {
                continue;
            }
            let e = merged.entry(t.term).or_insert((0.0, t.provenance));
            e.0 += t.weight;
            e.1 = e.1.min(t.provenance);
        }
        let total: f64 = merged.values().map(|(w, _)| w).sum();
        let mut terms: Vec<QueryTerm> = merged
            .into_iter()
            .map(|(term, (w, provenance))| QueryTerm {
                term,
                weight: w / total,
                provenance,
            })
            .collect();
        terms.sort_by(|a, b| b.weight.total_cmp(&a.weight).then_with(|| a.term.cmp(&b.term)));
        Self {
            query_id: query_id.into(),
            terms,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_of(&self, term: &str) -> f64 {
        self.terms.iter().find(|t| t.term == term).map_or(0.0, |t| t.weight)
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }
}

/// Writes `query_id<TAB>term<TAB>weight<TAB>provenance` lines.
pub fn write_weighted_queries(out: &mut dyn Write, queries: &[WeightedQuery]) -> std::io::Result<()> {
    for q in queries {
        for t in &q.terms {
            writeln!(out, "{}\t{}\t{}\t{}", q.query_id, t.term, t.weight, t.provenance)?;
        }
    }
    Ok(())
}

pub fn save_weighted_queries(path: impl AsRef<Path>, queries: &[WeightedQuery]) -> Result<()> {
    io::write_with(path.as_ref(), |w| write_weighted_queries(w, queries))
}

/// Reads a weighted-query file; queries keep their first-appearance order
/// and term lines are taken as written.
pub fn load_weighted_queries(path: impl AsRef<Path>) -> Result<Vec<WeightedQuery>> {
    let path = path.as_ref();
    let text = io::read_to_string(path)?;
    let mut order: Vec<String> = Vec::new();
    let mut by_id: HashMap<String, Vec<QueryTerm>> = HashMap::new();
    for (n, line) in io::content_lines(&text) {
        let f: Vec<&str> = line.split('\t').collect();
        let [qid, term, weight, prov] = f[..] else {
            return Err(Error::parse(
                path,
                n,
                "expected `query_id<TAB>term<TAB>weight<TAB>provenance`",
            ));
        };
        let weight: f64 = weight.parse().map_err(|_| Error::parse(path, n, "bad weight"))?;
        if !(weight >= 0.0) {
            return Err(Error::parse(path, n, "negative weight"));
        }
        let provenance = prov.parse().map_err(|e: Error| Error::parse(path, n, e.to_string()))?;
        if !by_id.contains_key(qid) {
            order.push(qid.to_string());
        }
        by_id.entry(qid.to_string()).or_default().push(QueryTerm {
            term: term.to_string(),
            weight,
            provenance,
        });
    }
    Ok(order
        .into_iter()
        .map(|id| {
            let terms = by_id.remove(&id).unwrap_or_default();
            WeightedQuery { query_id: id, terms }
        })
        .collect())
}

/// Target-side resources a translation may draw on.
pub struct TranslationResources<'a> {
    pub dictionary: &'a BilingualDictionary,
    pub index: Option<&'a CollectionIndex>,
    pub cooccurrence: Option<&'a CooccurrenceTable>,
    pub rules: Option<&'a RuleTable>,
    pub vocabulary: Option<&'a Vocabulary>,
    pub pos: &'a PosLexicon,
    pub stemmer: &'a dyn Stemmer,
}

impl<'a> TranslationResources<'a> {
    /// Dictionary-only resources with an empty lexicon and the identity stemmer.
    pub fn dictionary_only(dictionary: &'a BilingualDictionary) -> Self {
        static EMPTY: std::sync::OnceLock<PosLexicon> = std::sync::OnceLock::new();
        Self {
            dictionary,
            index: None,
            cooccurrence: None,
            rules: None,
            vocabulary: None,
            pos: EMPTY.get_or_init(PosLexicon::new),
            stemmer: &IdentityStemmer,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationOptions {
    pub mode: MorphMode,
    pub weighting: Weighting,
    pub noise: NoiseFilterConfig,
    pub itd: ItdParams,
    pub ngram: usize,
}

impl Default for TranslationOptions {
    fn default() -> Self {
        Self {
            mode: MorphMode::None,
            weighting: Weighting::Top1,
            noise: NoiseFilterConfig::default(),
            itd: ItdParams::default(),
            ngram: DEFAULT_NGRAM,
        }
    }
}

fn missing(what: &str, opts: &TranslationOptions) -> Error {
    Error::Config(format!(
        "{what} is required for mode {} with {} weighting",
        opts.mode, opts.weighting
    ))
}

/// Dictionary lookup (untranslated pass-through for unknown terms) plus the
/// mode's morphological step, before any weighting.
pub fn build_candidate_sets(
    source_terms: &[String],
    res: &TranslationResources<'_>,
    opts: &TranslationOptions,
) -> Result<Vec<TranslationCandidateSet>> {
    if source_terms.is_empty() {
        return Err(Error::EmptyQuery(None));
    }
    let mut sets: Vec<TranslationCandidateSet> = source_terms
        .iter()
        .map(|q| {
            let tr = res.dictionary.translations(q);
            if tr.is_empty() {
                info!("`{q}` has no dictionary entry; passing it through untranslated");
                TranslationCandidateSet::untranslated(q)
            } else {
                TranslationCandidateSet::new(q, tr.iter().cloned())
            }
        })
        .collect();

    match opts.mode {
        MorphMode::None | MorphMode::Split => {}
        MorphMode::Stem => {
            for set in sets.iter_mut().filter(|s| !s.untranslated) {
                let mut stems: Vec<String> = Vec::new();
                for c in &set.dictionary {
                    let s = res.stemmer.stem(c);
                    if !stems.contains(&s) {
                        stems.push(s);
                    }
                }
                *set = TranslationCandidateSet::new(&set.query_term, stems);
            }
        }
        MorphMode::Ag => {
            let rules = res.rules.ok_or_else(|| missing("a rule table", opts))?;
            let vocab = res.vocabulary.ok_or_else(|| missing("a vocabulary", opts))?;
            opts.noise.validate(rules.k_max())?;
            let anchors: Vec<String> = sets
                .iter()
                .filter(|s| !s.untranslated)
                .flat_map(|s| s.dictionary.iter().cloned())
                .collect();
            let cooc = if opts.noise.require_context {
                let c = res.cooccurrence.ok_or_else(|| missing("a co-occurrence table", opts))?;
                if c.window_size() != opts.noise.context_window {
                    return Err(Error::Config(format!(
                        "co-occurrence window {} differs from the context window {}",
                        c.window_size(),
                        opts.noise.context_window
                    )));
                }
                Some(c)
            } else {
                None
            };
            for set in sets.iter_mut().filter(|s| !s.untranslated) {
                let mut forms = Vec::new();
                for c in &set.dictionary {
                    let generated = generate_formations(c, res.pos, vocab, rules, &opts.noise);
                    forms.extend(match cooc {
                        Some(cooc) => context_filter(generated, &anchors, cooc),
                        None => generated,
                    });
                }
                set.add_formations(forms);
            }
        }
    }
    Ok(sets)
}

/// Applies the weighting method to candidate sets in place.
pub fn weight_candidate_sets(
    sets: &mut [TranslationCandidateSet],
    res: &TranslationResources<'_>,
    opts: &TranslationOptions,
) -> Result<()> {
    init_weights(sets)?;
    match opts.weighting {
        Weighting::Top1 | Weighting::Unif | Weighting::Coll => {
            let method = match opts.weighting {
                Weighting::Top1 => BaselineMethod::Top1,
                Weighting::Unif => BaselineMethod::Uniform,
                _ => BaselineMethod::Collection,
            };
            if method == BaselineMethod::Collection && res.index.is_none() {
                return Err(missing("an index", opts));
            }
            let empty;
            let index = match res.index {
                Some(i) => i,
                None => {
                    empty = CollectionIndex::build(Vec::new(), &Default::default())?;
                    &empty
                }
            };
            baseline_weights(sets, method, index);
        }
        Weighting::Itd => {
            let cooc = res.cooccurrence.ok_or_else(|| missing("a co-occurrence table", opts))?;
            let mi = estimate_association(cooc, AssociationKind::MutualInformation)?;
            let report = itd_weights(sets, &mi, &opts.itd);
            if !report.converged {
                info!(
                    "ITD stopped after {} iterations (last change {:.2e})",
                    report.iterations, report.last_change
                );
            }
        }
        Weighting::Bigram => {
            let cooc = res.cooccurrence.ok_or_else(|| missing("a co-occurrence table", opts))?;
            let jp = estimate_association(cooc, AssociationKind::JointProbability)?;
            joint_weights_2g(sets, &jp);
        }
    }
    Ok(())
}

/// Flattens weighted candidate sets into a query. Every source term gets an
/// equal share of the query mass; in split mode each translation hands its
/// full weight to each of its n-grams before the term is renormalized.
pub fn assemble_query(
    query_id: &str,
    sets: &[TranslationCandidateSet],
    opts: &TranslationOptions,
) -> Result<WeightedQuery> {
    if sets.is_empty() {
        return Err(Error::EmptyQuery(Some(query_id.to_string())));
    }
    let share = 1.0 / sets.len() as f64;
    let mut terms = Vec::new();
    for set in sets {
        let mut members: Vec<(String, f64, Provenance)> = Vec::new();
        for (term, w, is_formation) in set.members() {
            let prov = if is_formation {
                Provenance::Formation
            } else {
                Provenance::Dictionary
            };
            if opts.mode == MorphMode::Split && !set.untranslated {
                for g in ngram_split(term, opts.ngram)? {
                    members.push((g, w, prov));
                }
            } else {
                members.push((term.to_string(), w, prov));
            }
        }
        let total: f64 = members.iter().map(|m| m.1).sum();
        if total <= 0.0 {
            continue;
        }
        terms.extend(members.into_iter().map(|(term, w, provenance)| QueryTerm {
            term,
            weight: share * w / total,
            provenance,
        }));
    }
    let q = WeightedQuery::from_terms(query_id, terms);
    if q.is_empty() {
        return Err(Error::EmptyQuery(Some(query_id.to_string())));
    }
    Ok(q)
}

/// Candidate construction, weighting, and assembly in one call.
pub fn build_weighted_query(
    query_id: &str,
    source_terms: &[String],
    res: &TranslationResources<'_>,
    opts: &TranslationOptions,
) -> Result<WeightedQuery> {
    if source_terms.is_empty() {
        return Err(Error::EmptyQuery(Some(query_id.to_string())));
    }
    let mut sets = build_candidate_sets(source_terms, res, opts)?;
    weight_candidate_sets(&mut sets, res, opts)?;
    assemble_query(query_id, &sets, opts)
}
