use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedDoc {
    pub doc_id: String,
    pub score: f64,
}

/// Ranked retrieval output for a set of queries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunFile {
    pub tag: String,
    pub results: BTreeMap<String, Vec<RankedDoc>>,
}

impl RunFile {
    pub fn new(tag: impl Into<String>) -> Self {
        Self {
            tag: tag.into(),
            results: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, query_id: impl Into<String>, ranking: Vec<RankedDoc>) {
        self.results.insert(query_id.into(), ranking);
    }

    pub fn ranking(&self, query_id: &str) -> &[RankedDoc] {
        self.results.get(query_id).map_or(&[], Vec::as_slice)
    }

    /// Writes TREC run lines: `query_id Q0 doc_id rank score run_tag`.
    pub fn write_trec(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let tag = if self.tag.is_empty() { "run" } else { self.tag.as_str() };
        for (qid, docs) in &self.results {
            for (rank, d) in docs.iter().enumerate() {
                writeln!(out, "{qid} Q0 {} {} {} {tag}", d.doc_id, rank + 1, d.score)?;
            }
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        io::write_with(path.as_ref(), |w| self.write_trec(w))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse_trec(&io::read_to_string(path)?, path)
    }

    /// Parses TREC run lines. Each query's documents are ordered by the rank
    /// column; the tag is taken from the first line.
    pub fn parse_trec(text: &str, origin: &Path) -> Result<Self> {
        let mut run = RunFile::default();
        let mut ranked: BTreeMap<String, Vec<(u64, RankedDoc)>> = BTreeMap::new();
        for (n, line) in io::content_lines(text) {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [qid, _, doc, rank, score, tag] = f[..] else {
                return Err(Error::parse(
                    origin,
                    n,
                    "expected `query_id Q0 doc_id rank score run_tag`",
                ));
            };
            let rank: u64 = rank.parse().map_err(|_| Error::parse(origin, n, "bad rank"))?;
            let score: f64 = score.parse().map_err(|_| Error::parse(origin, n, "bad score"))?;
            if run.tag.is_empty() {
                run.tag = tag.to_string();
            }
            ranked.entry(qid.to_string()).or_default().push((
                rank,
                RankedDoc {
                    doc_id: doc.to_string(),
                    score,
                },
            ));
        }
        for (qid, mut docs) in ranked {
            docs.sort_by_key(|(r, _)| *r);
            run.results.insert(qid, docs.into_iter().map(|(_, d)| d).collect());
        }
        Ok(run)
    }
}
