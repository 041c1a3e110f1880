//! A generated cross-lingual test collection with planted morphology.
//!
//! Base words are drawn from a letter set that excludes the affix letters,
//! so every variant aligns with its base in exactly one way and the rule
//! behind it is known in advance. Each base carries the variants of five of
//! the ten planted rules, chosen cyclically so that every rule is used by
//! the same number of bases.
//!
//! Every query has two source terms whose dictionary translations are base
//! forms. Its relevant documents are *variant-only* documents that never
//! mention a base form. A few *mixed* documents, where both bases stand side
//! by side surrounded by all their variants, are judged non-relevant; they
//! are what ties the variants to the translations in the co-occurrence
//! table. All other documents are filler text with the remaining
//! (distractor) bases.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Document, UNKNOWN_TAG};
use crate::disambig::{BilingualDictionary, Topic};
use crate::error::Result;
use crate::io;
use crate::retrieval::Qrels;
use crate::rules::{indel_distance, Action, EditOp, Position, TransformationRule};

/// Letters base and filler words are built from.
pub const BASE_ALPHABET: &str = "abcdefgiklmnoprstu";

/// An insertion pattern: `prefix + base[..at] + infix + base[at..] + suffix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffixPattern {
    pub prefix: &'static str,
    pub infix: &'static str,
    pub infix_at: usize,
    pub suffix: &'static str,
}

impl AffixPattern {
    const fn new(prefix: &'static str, infix: &'static str, infix_at: usize, suffix: &'static str) -> Self {
        Self {
            prefix,
            infix,
            infix_at,
            suffix,
        }
    }

    pub fn apply(&self, base: &str) -> String {
        let (head, tail) = base.split_at(self.infix_at.min(base.len()));
        format!("{}{head}{}{tail}{}", self.prefix, self.infix, self.suffix)
    }

    /// The rule an aligner must recover for `base -> apply(base)`.
    pub fn expected_rule(&self) -> TransformationRule {
        let ins = |pos, ch| Action {
            op: EditOp::Insert,
            pos,
            ch,
        };
        let mut actions = Vec::new();
        for (i, ch) in self.prefix.chars().enumerate() {
            actions.push(ins(if i == 0 { Position::Begin } else { Position::Middle }, ch));
        }
        actions.extend(self.infix.chars().map(|ch| ins(Position::Middle, ch)));
        actions.extend(self.suffix.chars().map(|ch| ins(Position::End, ch)));
        TransformationRule {
            actions,
            pos_tag: UNKNOWN_TAG.to_string(),
        }
    }
}

/// The ten planted patterns. Affix letters never occur in [`BASE_ALPHABET`].
pub const PLANTED_PATTERNS: [AffixPattern; 10] = [
    AffixPattern::new("", "", 0, "x"),
    AffixPattern::new("", "", 0, "yz"),
    AffixPattern::new("w", "", 0, ""),
    AffixPattern::new("hj", "", 0, ""),
    AffixPattern::new("", "q", 1, ""),
    AffixPattern::new("", "", 0, "v"),
    AffixPattern::new("z", "", 0, "h"),
    AffixPattern::new("", "", 0, "jy"),
    AffixPattern::new("x", "", 0, ""),
    AffixPattern::new("", "wv", 2, ""),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub num_bases: usize,
    pub num_queries: usize,
    /// Patterns applied to each base.
    pub variants_per_base: usize,
    pub mixed_docs_per_query: usize,
    pub variant_only_docs_per_query: usize,
    pub total_docs: usize,
    pub filler_vocabulary: usize,
    /// Filler tokens per document, inclusive range.
    pub filler_tokens: (usize, usize),
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            num_bases: 50,
            num_queries: 20,
            variants_per_base: 5,
            mixed_docs_per_query: 2,
            variant_only_docs_per_query: 4,
            total_docs: 500,
            filler_vocabulary: 400,
            filler_tokens: (30, 60),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCollection {
    pub documents: Vec<Document>,
    pub dictionary: BilingualDictionary,
    pub topics: Vec<Topic>,
    pub qrels: Qrels,
    /// Target base forms; base `i` translates source word `sources[i]`.
    pub bases: Vec<String>,
    pub sources: Vec<String>,
    /// Variant surfaces of each base.
    pub variants: BTreeMap<String, Vec<String>>,
    /// Base forms of each query, in topic order.
    pub query_bases: BTreeMap<String, Vec<String>>,
}

const TERMS_PER_QUERY: usize = 2;

fn random_word(rng: &mut ChaCha8Rng, letters: &[char], len: (usize, usize)) -> String {
    let n = rng.random_range(len.0..=len.1);
    (0..n)
        .map(|_| *letters.choose(rng).expect("non-empty alphabet"))
        .collect()
}

impl SyntheticCollection {
    /// # Panics
    /// If the configuration cannot be satisfied (too few bases for the
    /// queries, or more documents per query than `total_docs`).
    pub fn generate(cfg: &SyntheticConfig) -> Self {
        assert!(cfg.num_queries * TERMS_PER_QUERY <= cfg.num_bases, "not enough bases");
        assert!(cfg.variants_per_base <= PLANTED_PATTERNS.len());
        let per_query = cfg.mixed_docs_per_query + cfg.variant_only_docs_per_query;
        assert!(cfg.num_queries * per_query <= cfg.total_docs, "not enough documents");

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let letters: Vec<char> = BASE_ALPHABET.chars().collect();
        let mut taken: BTreeSet<String> = BTreeSet::new();

        // bases stay far apart so no two bases' variants are close pairs
        let mut bases: Vec<String> = Vec::new();
        while bases.len() < cfg.num_bases {
            let w = random_word(&mut rng, &letters, (5, 7));
            if !taken.contains(&w) && bases.iter().all(|b| indel_distance(b, &w) >= 6) {
                taken.insert(w.clone());
                bases.push(w);
            }
        }
        let mut variants = BTreeMap::new();
        for (i, b) in bases.iter().enumerate() {
            let vs: Vec<String> = (0..cfg.variants_per_base)
                .map(|j| PLANTED_PATTERNS[(i + j) % PLANTED_PATTERNS.len()].apply(b))
                .collect();
            taken.extend(vs.iter().cloned());
            variants.insert(b.clone(), vs);
        }
        // filler words stay more than 3 edits away from every base
        let mut filler: Vec<String> = Vec::new();
        while filler.len() < cfg.filler_vocabulary {
            let w = random_word(&mut rng, &letters, (4, 8));
            if !taken.contains(&w) && bases.iter().all(|b| indel_distance(b, &w) >= 4) {
                taken.insert(w.clone());
                filler.push(w);
            }
        }
        let mut sources: Vec<String> = Vec::new();
        while sources.len() < cfg.num_bases {
            let w = random_word(&mut rng, &letters, (6, 9));
            if taken.insert(w.clone()) {
                sources.push(w);
            }
        }
        let mut dictionary = BilingualDictionary::new();
        for (s, b) in sources.iter().zip(&bases) {
            dictionary.insert(s, [b.as_str()]);
        }

        let fill = |rng: &mut ChaCha8Rng| -> Vec<String> {
            let n = rng.random_range(cfg.filler_tokens.0..=cfg.filler_tokens.1);
            (0..n).map(|_| filler.choose(rng).expect("filler").clone()).collect()
        };
        let insert_block = |rng: &mut ChaCha8Rng, tokens: &mut Vec<String>, block: Vec<String>| {
            let at = rng.random_range(0..=tokens.len());
            tokens.splice(at..at, block);
        };

        // query and relevance of a judged document
        type Judged = Option<(String, bool)>;
        let mut docs: Vec<(Vec<String>, Judged)> = Vec::new();
        let mut topics = Vec::new();
        let mut query_bases = BTreeMap::new();
        let mut qrels = Qrels::new();
        for q in 0..cfg.num_queries {
            let qid = format!("q{:02}", q + 1);
            let idx: Vec<usize> = (0..TERMS_PER_QUERY).map(|t| q * TERMS_PER_QUERY + t).collect();
            let qb: Vec<String> = idx.iter().map(|&i| bases[i].clone()).collect();
            for _ in 0..cfg.mixed_docs_per_query {
                let mut tokens = fill(&mut rng);
                // variants of the first base, both bases, variants of the second:
                // every variant lies within a few tokens of both bases
                let mut block: Vec<String> = variants[&qb[0]].iter().rev().cloned().collect();
                block.extend(qb.iter().cloned());
                block.extend(variants[&qb[1]].iter().cloned());
                insert_block(&mut rng, &mut tokens, block);
                docs.push((tokens, Some((qid.clone(), false))));
            }
            for _ in 0..cfg.variant_only_docs_per_query {
                let mut tokens = fill(&mut rng);
                let mut block: Vec<String> = qb
                    .iter()
                    .flat_map(|b| {
                        let vs = &variants[b];
                        vs.choose_multiple(&mut rng, 3.min(vs.len()))
                            .cloned()
                            .collect::<Vec<_>>()
                    })
                    .collect();
                block.shuffle(&mut rng);
                insert_block(&mut rng, &mut tokens, block);
                docs.push((tokens, Some((qid.clone(), true))));
            }
            topics.push(Topic {
                query_id: qid.clone(),
                terms: idx.iter().map(|&i| sources[i].clone()).collect(),
            });
            query_bases.insert(qid, qb);
        }
        let distractors = &bases[cfg.num_queries * TERMS_PER_QUERY..];
        let mut next_distractor = 0;
        while docs.len() < cfg.total_docs {
            let mut tokens = fill(&mut rng);
            // every distractor shows up with its variants at least once
            if !distractors.is_empty() && (next_distractor < distractors.len() || rng.random_bool(0.3)) {
                let b = &distractors[next_distractor % distractors.len()];
                next_distractor += 1;
                let mut block = vec![b.clone()];
                block.extend(variants[b].iter().cloned());
                insert_block(&mut rng, &mut tokens, block);
            }
            docs.push((tokens, None));
        }
        docs.shuffle(&mut rng);

        let documents = docs
            .into_iter()
            .enumerate()
            .map(|(i, (tokens, judged))| {
                let id = format!("doc{:04}", i + 1);
                if let Some((q, relevant)) = judged {
                    qrels.add(&q, &id, relevant);
                }
                Document::new(id, tokens.join(" "))
            })
            .collect();
        Self {
            documents,
            dictionary,
            topics,
            qrels,
            bases,
            sources,
            variants,
            query_bases,
        }
    }

    /// Rules planted in the collection.
    pub fn planted_rules(&self) -> Vec<TransformationRule> {
        PLANTED_PATTERNS.iter().map(AffixPattern::expected_rule).collect()
    }

    /// Writes `corpus.tsv`, `dictionary.tsv`, `topics.tsv` and `qrels.txt` under `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        io::write_with(&dir.join("corpus.tsv"), |w| {
            for d in &self.documents {
                writeln!(w, "{}\t{}", d.doc_id, d.text)?;
            }
            Ok(())
        })?;
        io::write_with(&dir.join("dictionary.tsv"), |w| {
            for (s, b) in self.sources.iter().zip(&self.bases) {
                writeln!(w, "{s}\t{b}")?;
            }
            Ok(())
        })?;
        io::write_with(&dir.join("topics.tsv"), |w| {
            for t in &self.topics {
                writeln!(w, "{}\t{}", t.query_id, t.terms.join(" "))?;
            }
            Ok(())
        })?;
        self.qrels.save(dir.join("qrels.txt"))
    }
}
