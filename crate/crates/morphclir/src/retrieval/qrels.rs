use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

/// Binary relevance judgments.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    // every judged query, possibly with no relevant document
    judged: BTreeMap<String, BTreeSet<String>>,
    nonrelevant: BTreeMap<String, BTreeSet<String>>,
}

impl Qrels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, query_id: &str, doc_id: &str, relevant: bool) {
        let set = self.judged.entry(query_id.to_string()).or_default();
        if relevant {
            set.insert(doc_id.to_string());
        } else {
            self.nonrelevant
                .entry(query_id.to_string())
                .or_default()
                .insert(doc_id.to_string());
        }
    }

    /// Parses `query_id 0 doc_id relevance`; any relevance above zero counts as relevant.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&io::read_to_string(path)?, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut q = Qrels::new();
        for (n, line) in io::content_lines(text) {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [qid, _, doc, rel] = f[..] else {
                return Err(Error::parse(origin, n, "expected `query_id 0 doc_id relevance`"));
            };
            let rel: i64 = rel.parse().map_err(|_| Error::parse(origin, n, "bad relevance"))?;
            q.add(qid, doc, rel > 0);
        }
        Ok(q)
    }

    pub fn relevant(&self, query_id: &str) -> Option<&BTreeSet<String>> {
        self.judged.get(query_id)
    }

    pub fn is_relevant(&self, query_id: &str, doc_id: &str) -> bool {
        self.judged.get(query_id).is_some_and(|s| s.contains(doc_id))
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.judged.keys().map(String::as_str)
    }

    pub fn write_trec(&self, out: &mut dyn std::io::Write) -> std::io::Result<()> {
        for (qid, docs) in &self.judged {
            let non = self.nonrelevant.get(qid);
            let mut lines: Vec<(&str, u8)> = docs.iter().map(|d| (d.as_str(), 1)).collect();
            lines.extend(non.into_iter().flatten().map(|d| (d.as_str(), 0)));
            lines.sort();
            for (d, rel) in lines {
                writeln!(out, "{qid} 0 {d} {rel}")?;
            }
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        io::write_with(path.as_ref(), |w| self.write_trec(w))
    }
}
