use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

/// A deterministic term normalizer.
pub trait Stemmer: Send + Sync {
    fn stem(&self, term: &str) -> String;
}

impl<F> Stemmer for F
where
    F: Fn(&str) -> String + Send + Sync,
{
    fn stem(&self, term: &str) -> String {
        self(term)
    }
}

/// Leaves terms untouched. The default stemmer.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityStemmer;

impl Stemmer for IdentityStemmer {
    fn stem(&self, term: &str) -> String {
        term.to_string()
    }
}

/// Strips the longest listed suffix as long as `min_stem` characters remain.
#[derive(Debug, Clone)]
pub struct SuffixStripper {
    suffixes: Vec<String>,
    min_stem: usize,
}

impl SuffixStripper {
    pub fn new<I, S>(suffixes: I, min_stem: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut suffixes: Vec<String> = suffixes.into_iter().map(Into::into).collect();
        suffixes.sort_by_key(|s| std::cmp::Reverse(s.chars().count()));
        Self { suffixes, min_stem }
    }
}

impl Stemmer for SuffixStripper {
    fn stem(&self, term: &str) -> String {
        let len = term.chars().count();
        for suf in &self.suffixes {
            if term.ends_with(suf.as_str()) && len - suf.chars().count() >= self.min_stem {
                return term[..term.len() - suf.len()].to_string();
            }
        }
        term.to_string()
    }
}

/// Lookup-table stemmer loaded from `term<TAB>stem` lines; unknown terms pass through.
#[derive(Debug, Clone, Default)]
pub struct TableStemmer {
    table: HashMap<String, String>,
}

impl TableStemmer {
    pub fn new<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        Self {
            table: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = io::read_to_string(path)?;
        let mut table = HashMap::new();
        for (n, line) in io::content_lines(&text) {
            match line.split_once('\t') {
                Some((t, s)) if !t.trim().is_empty() && !s.trim().is_empty() => {
                    table.insert(t.trim().to_lowercase(), s.trim().to_lowercase());
                }
                _ => return Err(Error::parse(path, n, "expected `term<TAB>stem`")),
            }
        }
        Ok(Self { table })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl Stemmer for TableStemmer {
    fn stem(&self, term: &str) -> String {
        self.table.get(term).cloned().unwrap_or_else(|| term.to_string())
    }
}

/// Runs `term` through `stemmer`.
pub fn stem_hook(term: &str, stemmer: &dyn Stemmer) -> String {
    stemmer.stem(term)
}
