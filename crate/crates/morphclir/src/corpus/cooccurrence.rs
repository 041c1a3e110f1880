use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default co-occurrence window, in tokens.
pub const DEFAULT_WINDOW: usize = 10;

/// Sliding-window co-occurrence counts.
///
/// A document of `n` tokens yields `max(1, n - w + 1)` windows of `w`
/// tokens (a document shorter than the window forms one window; an empty
/// document forms none). Within a window every unordered pair of distinct
/// terms is counted once, and every distinct term bumps its window count once.
#[derive(Debug, Clone, PartialEq)]
pub struct CooccurrenceTable {
    window_size: usize,
    terms: Vec<String>,
    lookup: HashMap<String, u32>,
    unigram: Vec<u64>,
    // key (a, b) with a < b
    pairs: HashMap<(u32, u32), u64>,
    total_windows: u64,
}

#[derive(Default)]
struct Counts {
    unigram: HashMap<u32, u64>,
    pairs: HashMap<(u32, u32), u64>,
    windows: u64,
}

impl Counts {
    fn merge(mut self, other: Counts) -> Counts {
        let (mut big, small) = if self.pairs.len() >= other.pairs.len() {
            (std::mem::take(&mut self), other)
        } else {
            (other, self)
        };
        for (k, v) in small.unigram {
            *big.unigram.entry(k).or_default() += v;
        }
        for (k, v) in small.pairs {
            *big.pairs.entry(k).or_default() += v;
        }
        big.windows += small.windows;
        big
    }

    fn add_document(&mut self, doc: &[u32], window: usize) {
        if doc.is_empty() {
            return;
        }
        let starts = if doc.len() <= window { 1 } else { doc.len() - window + 1 };
        let mut distinct: Vec<u32> = Vec::with_capacity(window);
        for s in 0..starts {
            let end = (s + window).min(doc.len());
            distinct.clear();
            distinct.extend_from_slice(&doc[s..end]);
            distinct.sort_unstable();
            distinct.dedup();
            self.windows += 1;
            for (i, &a) in distinct.iter().enumerate() {
                *self.unigram.entry(a).or_default() += 1;
                for &b in &distinct[i + 1..] {
                    *self.pairs.entry((a, b)).or_default() += 1;
                }
            }
        }
    }
}

impl CooccurrenceTable {
    /// Counts windows over tokenized documents. Windows never cross documents.
    pub fn build<D, S>(docs: &[D], window_size: usize) -> Result<Self>
    where
        D: AsRef<[S]> + Sync,
        S: AsRef<str> + Sync,
    {
        if window_size < 2 {
            return Err(Error::Config(format!(
                "co-occurrence window must be at least 2 tokens, got {window_size}"
            )));
        }
        let mut sorted: Vec<&str> = docs.iter().flat_map(|d| d.as_ref().iter().map(AsRef::as_ref)).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let lookup: HashMap<String, u32> = sorted
            .iter()
            .enumerate()
            .map(|(i, t)| (t.to_string(), i as u32))
            .collect();

        let counts = docs
            .par_iter()
            .fold(Counts::default, |mut acc, doc| {
                let ids: Vec<u32> = doc.as_ref().iter().map(|t| lookup[t.as_ref()]).collect();
                acc.add_document(&ids, window_size);
                acc
            })
            .reduce(Counts::default, Counts::merge);

        let mut unigram = vec![0u64; sorted.len()];
        for (t, c) in counts.unigram {
            unigram[t as usize] = c;
        }
        Ok(Self {
            window_size,
            terms: sorted.into_iter().map(str::to_string).collect(),
            lookup,
            unigram,
            pairs: counts.pairs,
            total_windows: counts.windows,
        })
    }

    pub(crate) fn from_parts(
        window_size: usize,
        terms: Vec<String>,
        unigram: Vec<u64>,
        pairs: HashMap<(u32, u32), u64>,
        total_windows: u64,
    ) -> Self {
        let lookup = terms.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        Self {
            window_size,
            terms,
            lookup,
            unigram,
            pairs,
            total_windows,
        }
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn total_windows(&self) -> u64 {
        self.total_windows
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn unigram_window_count(&self, term: &str) -> u64 {
        self.lookup.get(term).map_or(0, |&t| self.unigram[t as usize])
    }

    /// Number of windows containing both terms; zero when `a == b`.
    pub fn pair_count(&self, a: &str, b: &str) -> u64 {
        let (Some(&x), Some(&y)) = (self.lookup.get(a), self.lookup.get(b)) else {
            return 0;
        };
        let key = if x < y { (x, y) } else { (y, x) };
        if x == y {
            return 0;
        }
        self.pairs.get(&key).copied().unwrap_or(0)
    }

    /// Pairs as `(a, b, count)` with `a < b`, sorted.
    pub fn sorted_pairs(&self) -> Vec<(&str, &str, u64)> {
        let ordered: BTreeMap<(u32, u32), u64> = self.pairs.iter().map(|(&k, &v)| (k, v)).collect();
        ordered
            .into_iter()
            .map(|((a, b), c)| (self.terms[a as usize].as_str(), self.terms[b as usize].as_str(), c))
            .collect()
    }
}
