use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

/// Tag returned for terms the lexicon does not know.
pub const UNKNOWN_TAG: &str = "UNK";

/// Term to part-of-speech tag map, total through the [`UNKNOWN_TAG`] fallback.
///
/// Entries are assumed to already carry the most likely tag of each term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosLexicon {
    tags: HashMap<String, String>,
    tagset: BTreeSet<String>,
}

impl PosLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut lex = Self::new();
        for (term, tag) in pairs {
            lex.insert(term.as_ref(), tag.as_ref());
        }
        lex
    }

    /// Loads `term<TAB>tag` lines. Blank lines are skipped; any other line
    /// without exactly two non-empty fields is an error naming its line.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = io::read_to_string(path)?;
        let mut lex = Self::new();
        for (n, line) in io::content_lines(&text) {
            let mut fields = line.split('\t');
            match (fields.next(), fields.next(), fields.next()) {
                (Some(term), Some(tag), None) if !term.trim().is_empty() && !tag.trim().is_empty() => {
                    lex.insert(term.trim(), tag.trim());
                }
                _ => return Err(Error::parse(path, n, "expected `term<TAB>tag`")),
            }
        }
        Ok(lex)
    }

    pub fn insert(&mut self, term: &str, tag: &str) {
        let term: String = term.chars().flat_map(char::to_lowercase).collect();
        self.tagset.insert(tag.to_string());
        self.tags.insert(term, tag.to_string());
    }

    pub fn tag_of(&self, term: &str) -> &str {
        self.tags.get(term).map_or(UNKNOWN_TAG, String::as_str)
    }

    pub fn tagset(&self) -> &BTreeSet<String> {
        &self.tagset
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}
