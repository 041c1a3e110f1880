use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

/// Source term to rank-ordered target translations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilingualDictionary {
    entries: HashMap<String, Vec<String>>,
}

fn lower(s: &str) -> String {
    s.trim().chars().flat_map(char::to_lowercase).collect()
}

impl BilingualDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds translations for `source`, appending to any existing entry.
    /// Duplicates are dropped, keeping first-seen order.
    pub fn insert<I, S>(&mut self, source: &str, candidates: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let list = self.entries.entry(lower(source)).or_default();
        let mut seen: HashSet<String> = list.iter().cloned().collect();
        for c in candidates {
            let c = lower(c.as_ref());
            if !c.is_empty() && seen.insert(c.clone()) {
                list.push(c);
            }
        }
    }

    /// Loads `source_term<TAB>cand1,cand2,...` lines.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = io::read_to_string(path)?;
        let mut dict = Self::new();
        for (n, line) in io::content_lines(&text) {
            let (src, cands) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(path, n, "expected `source<TAB>cand1,cand2,...`"))?;
            if src.trim().is_empty() {
                return Err(Error::parse(path, n, "empty source term"));
            }
            dict.insert(src, cands.split(','));
        }
        Ok(dict)
    }

    /// Translations of `source` in rank order; empty when unknown.
    pub fn translations(&self, source: &str) -> &[String] {
        self.entries.get(source).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
