use crate::error::{Error, Result};

/// Default n-gram length of the splitting baseline.
pub const DEFAULT_NGRAM: usize = 5;

/// All contiguous character n-grams of `term` in order, duplicates kept.
/// A term shorter than `n` is returned as its only element.
pub fn char_ngrams(term: &str, n: usize) -> Result<Vec<String>> {
    if n == 0 {
        return Err(Error::Config("n-gram length must be at least 1".into()));
    }
    let chars: Vec<char> = term.chars().collect();
    if chars.len() <= n {
        return Ok(vec![term.to_string()]);
    }
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

/// Distinct n-grams of `term` in order of first appearance.
pub fn ngram_split(term: &str, n: usize) -> Result<Vec<String>> {
    let mut grams = char_ngrams(term, n)?;
    let mut seen = std::collections::HashSet::new();
    grams.retain(|g| seen.insert(g.clone()));
    Ok(grams)
}
