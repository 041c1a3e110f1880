use std::path::Path;

use crate::corpus::{tokenize, StopwordList};
use crate::error::{Error, Result};
use crate::io;

/// A source-language query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub query_id: String,
    pub terms: Vec<String>,
}

/// Reads `query_id\ttitle` lines; titles go through the corpus tokenizer.
pub fn load_topics(path: impl AsRef<Path>, stopwords: &StopwordList) -> Result<Vec<Topic>> {
    let path = path.as_ref();
    parse_topics(&io::read_to_string(path)?, path, stopwords)
}

pub fn parse_topics(text: &str, origin: &Path, stopwords: &StopwordList) -> Result<Vec<Topic>> {
    let mut topics: Vec<Topic> = Vec::new();
    for (n, line) in io::content_lines(text) {
        let Some((id, title)) = line.split_once('\t') else {
            return Err(Error::parse(origin, n, "expected `query_id<TAB>title`"));
        };
        let id = id.trim();
        if id.is_empty() {
            return Err(Error::parse(origin, n, "empty query id"));
        }
        if topics.iter().any(|t| t.query_id == id) {
            return Err(Error::parse(origin, n, format!("duplicate query id `{id}`")));
        }
        topics.push(Topic {
            query_id: id.to_string(),
            terms: tokenize(title, stopwords),
        });
    }
    Ok(topics)
}
