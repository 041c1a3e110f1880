//! On-disk snapshot of a [`CollectionIndex`] and its [`CooccurrenceTable`].
//!
//! A snapshot is a directory of UTF-8 text files:
//!
//! ```text
//! manifest.txt        key=value lines (format version, tokenizer settings, counts)
//! documents.tsv       doc_id <TAB> length               (insertion order)
//! postings.tsv        term <TAB> doc:tf,doc:tf,...     (terms sorted, doc = row in documents.tsv)
//! cooc_terms.tsv      term <TAB> window count          (only with a co-occurrence table)
//! cooc_pairs.tsv      row_a <TAB> row_b <TAB> count    (rows of cooc_terms.tsv, a < b, sorted)
//! ```
//!
//! Writing is deterministic, so rebuilding from an unchanged corpus gives
//! byte-identical files.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use super::cooccurrence::CooccurrenceTable;
use super::index::{CollectionIndex, Posting};
use crate::error::{Error, Result};
use crate::io;

pub const SNAPSHOT_FORMAT_VERSION: u32 = 1;

const MANIFEST: &str = "manifest.txt";
const DOCUMENTS: &str = "documents.tsv";
const POSTINGS: &str = "postings.tsv";
const COOC_TERMS: &str = "cooc_terms.tsv";
const COOC_PAIRS: &str = "cooc_pairs.tsv";

/// Contents of `manifest.txt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotManifest {
    pub format_version: u32,
    /// Tokenizer description, e.g. `unicode-letters,lowercase`.
    pub tokenizer: String,
    /// Post-tokenization transform applied to document terms (`none`, `stem`, `ngram:5`).
    pub term_transform: String,
    pub stopwords: usize,
    pub documents: usize,
    pub terms: usize,
    pub total_tokens: u64,
    pub window_size: Option<usize>,
    pub total_windows: Option<u64>,
}

impl SnapshotManifest {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format_version={}", self.format_version);
        let _ = writeln!(out, "tokenizer={}", self.tokenizer);
        let _ = writeln!(out, "term_transform={}", self.term_transform);
        let _ = writeln!(out, "stopwords={}", self.stopwords);
        let _ = writeln!(out, "documents={}", self.documents);
        let _ = writeln!(out, "terms={}", self.terms);
        let _ = writeln!(out, "total_tokens={}", self.total_tokens);
        if let (Some(w), Some(n)) = (self.window_size, self.total_windows) {
            let _ = writeln!(out, "window_size={w}");
            let _ = writeln!(out, "total_windows={n}");
        }
        out
    }

    fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (n, line) in io::content_lines(text) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(path, n, "expected key=value"))?;
            kv.insert(k.trim().to_string(), (n, v.trim().to_string()));
        }
        fn get<T: std::str::FromStr>(
            kv: &BTreeMap<String, (usize, String)>,
            key: &str,
            path: &Path,
        ) -> Result<Option<T>> {
            match kv.get(key) {
                None => Ok(None),
                Some((n, v)) => v
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::parse(path, *n, format!("bad value for `{key}`"))),
            }
        }
        let need = |key: &str| Error::parse(path, 0, format!("manifest lacks `{key}`"));
        let format_version: u32 = get(&kv, "format_version", path)?.ok_or_else(|| need("format_version"))?;
        if format_version != SNAPSHOT_FORMAT_VERSION {
            return Err(Error::SnapshotVersion {
                found: format_version,
                expected: SNAPSHOT_FORMAT_VERSION,
            });
        }
        Ok(Self {
            format_version,
            tokenizer: get(&kv, "tokenizer", path)?.ok_or_else(|| need("tokenizer"))?,
            term_transform: get(&kv, "term_transform", path)?.unwrap_or_else(|| "none".into()),
            stopwords: get(&kv, "stopwords", path)?.unwrap_or(0),
            documents: get(&kv, "documents", path)?.ok_or_else(|| need("documents"))?,
            terms: get(&kv, "terms", path)?.ok_or_else(|| need("terms"))?,
            total_tokens: get(&kv, "total_tokens", path)?.ok_or_else(|| need("total_tokens"))?,
            window_size: get(&kv, "window_size", path)?,
            total_windows: get(&kv, "total_windows", path)?,
        })
    }
}

/// A loaded snapshot.
#[derive(Debug, Clone)]
pub struct IndexSnapshot {
    pub manifest: SnapshotManifest,
    pub index: CollectionIndex,
    pub cooccurrence: Option<CooccurrenceTable>,
}

fn check_field(value: &str, what: &str) -> Result<()> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(Error::Invalid(format!(
            "{what} `{}` contains a tab or newline and cannot be stored",
            value.escape_debug()
        )));
    }
    Ok(())
}

/// Writes `index` (and optionally `cooc`) under `dir`, returning the manifest written.
pub fn write_snapshot(
    dir: impl AsRef<Path>,
    index: &CollectionIndex,
    cooc: Option<&CooccurrenceTable>,
    tokenizer: &str,
    term_transform: &str,
    stopwords: usize,
) -> Result<SnapshotManifest> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for d in index.doc_ids() {
        check_field(d, "document id")?;
    }

    let manifest = SnapshotManifest {
        format_version: SNAPSHOT_FORMAT_VERSION,
        tokenizer: tokenizer.to_string(),
        term_transform: term_transform.to_string(),
        stopwords,
        documents: index.num_docs(),
        terms: index.num_terms(),
        total_tokens: index.total_tokens(),
        window_size: cooc.map(CooccurrenceTable::window_size),
        total_windows: cooc.map(CooccurrenceTable::total_windows),
    };

    io::write_with(&dir.join(DOCUMENTS), |w| {
        for (d, id) in index.doc_ids().iter().enumerate() {
            writeln!(w, "{id}\t{}", index.doc_len(d as u32))?;
        }
        Ok(())
    })?;
    io::write_with(&dir.join(POSTINGS), |w| {
        for (t, term) in index.vocabulary().iter().enumerate() {
            write!(w, "{term}\t")?;
            for (i, p) in index.postings(t as u32).iter().enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                write!(w, "{}:{}", p.doc, p.tf)?;
            }
            writeln!(w)?;
        }
        Ok(())
    })?;
    if let Some(cooc) = cooc {
        io::write_with(&dir.join(COOC_TERMS), |w| {
            for term in cooc.terms() {
                writeln!(w, "{term}\t{}", cooc.unigram_window_count(term))?;
            }
            Ok(())
        })?;
        let rows: HashMap<&str, usize> = cooc.terms().iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
        io::write_with(&dir.join(COOC_PAIRS), |w| {
            for (a, b, c) in cooc.sorted_pairs() {
                writeln!(w, "{}\t{}\t{c}", rows[a], rows[b])?;
            }
            Ok(())
        })?;
    } else {
        for f in [COOC_TERMS, COOC_PAIRS] {
            let p = dir.join(f);
            if p.exists() {
                std::fs::remove_file(&p).map_err(|e| Error::io(&p, e))?;
            }
        }
    }
    // manifest last: its presence marks a complete snapshot
    io::write_with(&dir.join(MANIFEST), |w| w.write_all(manifest.render().as_bytes()))?;
    Ok(manifest)
}

/// Reads a snapshot written by [`write_snapshot`].
pub fn read_snapshot(dir: impl AsRef<Path>) -> Result<IndexSnapshot> {
    let dir = dir.as_ref();
    let manifest_path = dir.join(MANIFEST);
    let manifest = SnapshotManifest::parse(&io::read_to_string(&manifest_path)?, &manifest_path)?;

    let docs_path = dir.join(DOCUMENTS);
    let docs_text = io::read_to_string(&docs_path)?;
    let mut doc_ids = Vec::with_capacity(manifest.documents);
    let mut doc_lens = Vec::with_capacity(manifest.documents);
    for (n, line) in io::content_lines(&docs_text) {
        let (id, len) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(&docs_path, n, "expected `doc_id<TAB>length`"))?;
        doc_ids.push(id.to_string());
        doc_lens.push(
            len.parse()
                .map_err(|_| Error::parse(&docs_path, n, "bad document length"))?,
        );
    }

    let post_path = dir.join(POSTINGS);
    let post_text = io::read_to_string(&post_path)?;
    let mut terms = Vec::with_capacity(manifest.terms);
    let mut postings = Vec::with_capacity(manifest.terms);
    for (n, line) in io::content_lines(&post_text) {
        let (term, list) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(&post_path, n, "expected `term<TAB>postings`"))?;
        let mut parsed = Vec::new();
        for item in list.split(',').filter(|s| !s.is_empty()) {
            let bad = || Error::parse(&post_path, n, format!("bad posting `{item}`"));
            let (d, tf) = item.split_once(':').ok_or_else(bad)?;
            let doc: u32 = d.parse().map_err(|_| bad())?;
            if doc as usize >= doc_ids.len() {
                return Err(bad());
            }
            parsed.push(Posting {
                doc,
                tf: tf.parse().map_err(|_| bad())?,
            });
        }
        terms.push(term.to_string());
        postings.push(parsed);
    }
    if doc_ids.len() != manifest.documents || terms.len() != manifest.terms {
        return Err(Error::Invalid(format!(
            "snapshot {} is inconsistent with its manifest",
            dir.display()
        )));
    }
    let index = CollectionIndex::from_parts(doc_ids, doc_lens, terms, postings);

    let cooccurrence = match (manifest.window_size, manifest.total_windows) {
        (Some(window), Some(total)) => Some(read_cooccurrence(dir, window, total)?),
        _ => None,
    };

    Ok(IndexSnapshot {
        manifest,
        index,
        cooccurrence,
    })
}

fn read_cooccurrence(dir: &Path, window: usize, total: u64) -> Result<CooccurrenceTable> {
    let terms_path = dir.join(COOC_TERMS);
    let text = io::read_to_string(&terms_path)?;
    let mut terms = Vec::new();
    let mut unigram = Vec::new();
    for (n, line) in io::content_lines(&text) {
        let bad = || Error::parse(&terms_path, n, "expected `term<TAB>count`");
        let (t, c) = line.split_once('\t').ok_or_else(bad)?;
        terms.push(t.to_string());
        unigram.push(c.parse().map_err(|_| bad())?);
    }
    let pairs_path = dir.join(COOC_PAIRS);
    let text = io::read_to_string(&pairs_path)?;
    let mut pairs = HashMap::new();
    for (n, line) in io::content_lines(&text) {
        let bad = || Error::parse(&pairs_path, n, "expected `row<TAB>row<TAB>count`");
        let mut f = line.split('\t');
        let a: u32 = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let b: u32 = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let c: u64 = f.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if a >= b || b as usize >= terms.len() {
            return Err(bad());
        }
        pairs.insert((a, b), c);
    }
    Ok(CooccurrenceTable::from_parts(window, terms, unigram, pairs, total))
}
