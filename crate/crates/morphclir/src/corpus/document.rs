use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::io;

/// A raw document of the retrieval collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            doc_id: doc_id.into(),
            text: text.into(),
        }
    }
}

/// Reads documents from a file or, recursively, from every file under a
/// directory (visited in file-name order).
///
/// Each file is either TREC SGML (`<DOC><DOCNO>..</DOCNO><TEXT>..</TEXT></DOC>`)
/// or the line format `id<TAB>text`; the format is picked per file by
/// looking at its first non-blank character.
pub fn read_documents(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "corpus path does not exist"),
        ));
    }
    let files: Vec<PathBuf> = if path.is_dir() {
        WalkDir::new(path)
            .sort_by_file_name()
            .into_iter()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_type().is_file())
            .map(|e| e.into_path())
            .collect()
    } else {
        vec![path.to_path_buf()]
    };

    let mut docs = Vec::new();
    for file in files {
        let text = io::read_to_string(&file)?;
        if text.trim_start().starts_with('<') {
            docs.extend(parse_trec(&text, &file)?);
        } else {
            docs.extend(parse_tab_lines(&text, &file)?);
        }
    }
    Ok(docs)
}

/// Parses `id<TAB>text` lines.
pub fn parse_tab_lines(text: &str, origin: &Path) -> Result<Vec<Document>> {
    io::content_lines(text)
        .map(|(n, line)| {
            let (id, body) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n, "expected `id<TAB>text`"))?;
            let id = id.trim();
            if id.is_empty() {
                return Err(Error::parse(origin, n, "empty document id"));
            }
            Ok(Document::new(id, body))
        })
        .collect()
}

/// Parses TREC-style SGML. Text is the concatenation of all `<TEXT>` blocks
/// of a `<DOC>`; other fields are ignored.
pub fn parse_trec(text: &str, origin: &Path) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut rest = text;
    let mut consumed = 0usize;
    while let Some(start) = rest.find("<DOC>") {
        let line = line_of(text, consumed + start);
        let body_start = start + "<DOC>".len();
        let end = rest[body_start..]
            .find("</DOC>")
            .ok_or_else(|| Error::parse(origin, line, "unterminated <DOC>"))?;
        let body = &rest[body_start..body_start + end];

        let doc_id = element(body, "DOCNO")
            .next()
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::parse(origin, line, "<DOC> without <DOCNO>"))?;
        let text_blocks: Vec<&str> = element(body, "TEXT").collect();
        docs.push(Document::new(doc_id, text_blocks.join("\n")));

        let advance = body_start + end + "</DOC>".len();
        consumed += advance;
        rest = &rest[advance..];
    }
    Ok(docs)
}

fn element<'a>(body: &'a str, tag: &'a str) -> impl Iterator<Item = &'a str> + 'a {
    let open = format!("<{tag}>");
    let close = format!("</{tag}>");
    let mut rest = body;
    std::iter::from_fn(move || {
        let s = rest.find(&open)? + open.len();
        let e = rest[s..].find(&close)? + s;
        let inner = &rest[s..e];
        rest = &rest[e + close.len()..];
        Some(inner)
    })
}

fn line_of(text: &str, byte: usize) -> usize {
    text[..byte].matches('\n').count() + 1
}
