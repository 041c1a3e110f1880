use std::collections::HashSet;
use std::path::Path;

use crate::error::Result;
use crate::io;

/// Exact-match stopword set over normalized (lowercased) tokens.
#[derive(Debug, Clone, Default)]
pub struct StopwordList {
    terms: HashSet<String>,
}

impl StopwordList {
    pub fn new<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            terms: terms
                .into_iter()
                .map(|t| normalize(t.as_ref().trim()))
                .filter(|t| !t.is_empty())
                .collect(),
        }
    }

    /// One term per line, UTF-8. Blank lines are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = io::read_to_string(path.as_ref())?;
        Ok(Self::new(io::content_lines(&text).map(|(_, l)| l)))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.terms.contains(token)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn normalize(token: &str) -> String {
    token.chars().flat_map(char::to_lowercase).collect()
}

/// Splits `text` on every non-letter character, lowercases, and drops stopwords.
///
/// Order of the surviving tokens is the order of appearance.
pub fn tokenize(text: &str, stopwords: &StopwordList) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|piece| !piece.is_empty())
        .map(normalize)
        .filter(|tok| !stopwords.contains(tok))
        .collect()
}
