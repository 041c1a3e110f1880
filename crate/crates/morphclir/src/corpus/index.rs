use std::collections::{BTreeMap, HashMap, HashSet};

use super::document::Document;
use super::tokenize::{tokenize, StopwordList};
use crate::error::{Error, Result};

/// Dense document number inside a [`CollectionIndex`].
pub type DocNum = u32;
/// Dense term number inside a [`CollectionIndex`].
pub type TermNum = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc: DocNum,
    pub tf: u32,
}

/// Inverted index with the collection statistics language-model retrieval
/// and rule mining need.
///
/// Terms are numbered in lexicographic order, documents in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionIndex {
    doc_ids: Vec<String>,
    doc_lens: Vec<u32>,
    doc_lookup: HashMap<String, DocNum>,
    terms: Vec<String>,
    term_lookup: HashMap<String, TermNum>,
    postings: Vec<Vec<Posting>>,
    collection_freq: Vec<u64>,
    total_tokens: u64,
    // forward view: per document, (term, tf) sorted by term
    doc_terms: Vec<Vec<(TermNum, u32)>>,
}

/// Incremental single-writer construction of a [`CollectionIndex`].
#[derive(Debug, Default)]
pub struct IndexBuilder {
    doc_ids: Vec<String>,
    seen: HashSet<String>,
    doc_lens: Vec<u32>,
    counts: BTreeMap<String, Vec<Posting>>,
}

impl IndexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_tokens<S: AsRef<str>>(&mut self, doc_id: &str, tokens: &[S]) -> Result<()> {
        if doc_id.is_empty() {
            return Err(Error::EmptyDocumentId);
        }
        if !self.seen.insert(doc_id.to_string()) {
            return Err(Error::DuplicateDocument(doc_id.to_string()));
        }
        let doc = self.doc_ids.len() as DocNum;
        self.doc_ids.push(doc_id.to_string());
        self.doc_lens.push(tokens.len() as u32);

        let mut tf: HashMap<&str, u32> = HashMap::new();
        for t in tokens {
            *tf.entry(t.as_ref()).or_default() += 1;
        }
        for (term, count) in tf {
            self.counts
                .entry(term.to_string())
                .or_default()
                .push(Posting { doc, tf: count });
        }
        Ok(())
    }

    pub fn finish(self) -> CollectionIndex {
        let mut terms = Vec::with_capacity(self.counts.len());
        let mut postings = Vec::with_capacity(self.counts.len());
        for (term, mut list) in self.counts {
            list.sort_by_key(|p| p.doc);
            terms.push(term);
            postings.push(list);
        }
        CollectionIndex::from_parts(self.doc_ids, self.doc_lens, terms, postings)
    }
}

impl CollectionIndex {
    /// Tokenizes and indexes `docs`. Duplicate ids are rejected.
    pub fn build<I>(docs: I, stopwords: &StopwordList) -> Result<Self>
    where
        I: IntoIterator<Item = Document>,
    {
        let mut builder = IndexBuilder::new();
        for doc in docs {
            let tokens = tokenize(&doc.text, stopwords);
            builder.add_tokens(&doc.doc_id, &tokens)?;
        }
        Ok(builder.finish())
    }

    /// Assembles an index from sorted terms and per-term postings sorted by document.
    pub(crate) fn from_parts(
        doc_ids: Vec<String>,
        doc_lens: Vec<u32>,
        terms: Vec<String>,
        postings: Vec<Vec<Posting>>,
    ) -> Self {
        let doc_lookup = doc_ids
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i as DocNum))
            .collect();
        let term_lookup = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as TermNum))
            .collect();
        let collection_freq: Vec<u64> = postings
            .iter()
            .map(|l| l.iter().map(|p| u64::from(p.tf)).sum())
            .collect();
        let total_tokens = doc_lens.iter().map(|&l| u64::from(l)).sum();
        let mut doc_terms = vec![Vec::new(); doc_ids.len()];
        for (t, list) in postings.iter().enumerate() {
            for p in list {
                doc_terms[p.doc as usize].push((t as TermNum, p.tf));
            }
        }
        Self {
            doc_ids,
            doc_lens,
            doc_lookup,
            terms,
            term_lookup,
            postings,
            collection_freq,
            total_tokens,
            doc_terms,
        }
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn is_empty(&self) -> bool {
        self.doc_ids.is_empty()
    }

    /// Vocabulary in lexicographic order.
    pub fn vocabulary(&self) -> &[String] {
        &self.terms
    }

    pub fn contains(&self, term: &str) -> bool {
        self.term_lookup.contains_key(term)
    }

    pub fn term_num(&self, term: &str) -> Option<TermNum> {
        self.term_lookup.get(term).copied()
    }

    pub fn term(&self, t: TermNum) -> &str {
        &self.terms[t as usize]
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_id(&self, d: DocNum) -> &str {
        &self.doc_ids[d as usize]
    }

    pub fn doc_num(&self, doc_id: &str) -> Option<DocNum> {
        self.doc_lookup.get(doc_id).copied()
    }

    pub fn doc_len(&self, d: DocNum) -> u32 {
        self.doc_lens[d as usize]
    }

    pub fn doc_len_of(&self, doc_id: &str) -> Option<u32> {
        self.doc_num(doc_id).map(|d| self.doc_len(d))
    }

    pub fn postings(&self, t: TermNum) -> &[Posting] {
        &self.postings[t as usize]
    }

    /// Term vector of a document, sorted by term number.
    pub fn doc_terms(&self, d: DocNum) -> &[(TermNum, u32)] {
        &self.doc_terms[d as usize]
    }

    pub fn term_freq(&self, term: &str, doc_id: &str) -> u32 {
        let (Some(t), Some(d)) = (self.term_num(term), self.doc_num(doc_id)) else {
            return 0;
        };
        let list = self.postings(t);
        list.binary_search_by_key(&d, |p| p.doc)
            .map(|i| list[i].tf)
            .unwrap_or(0)
    }

    pub fn doc_freq(&self, term: &str) -> usize {
        self.term_num(term).map_or(0, |t| self.postings(t).len())
    }

    pub fn collection_freq(&self, term: &str) -> u64 {
        self.term_num(term).map_or(0, |t| self.collection_freq[t as usize])
    }

    pub fn collection_freq_of(&self, t: TermNum) -> u64 {
        self.collection_freq[t as usize]
    }

    /// Maximum-likelihood collection model p(t|C); zero for unseen terms.
    pub fn collection_prob(&self, term: &str) -> f64 {
        if self.total_tokens == 0 {
            return 0.0;
        }
        self.collection_freq(term) as f64 / self.total_tokens as f64
    }
}
