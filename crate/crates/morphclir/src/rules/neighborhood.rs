//! Candidate generation for "all word pairs within indel distance k".
//!
//! If `indel(w, v) <= k` then the LCS of the two words is reachable from
//! `w` by `d1` deletions and from `v` by `d2` deletions with `d1 + d2 <= k`.
//! Indexing every word under all of its deletion variants (up to `k`
//! deletions) and joining on shared variants therefore finds every such
//! pair without an all-pairs scan. Variants are stored as 64-bit hashes, so
//! callers confirm candidates with an exact distance check.

use std::collections::{HashMap, HashSet};
use std::hash::{DefaultHasher, Hash, Hasher};

#[derive(Debug, Clone)]
pub struct DeletionNeighborhood {
    max_deletions: usize,
    buckets: HashMap<u64, Vec<(u32, u8)>>,
}

fn key_of(chars: &[char]) -> u64 {
    let mut h = DefaultHasher::new();
    chars.hash(&mut h);
    h.finish()
}

/// Every distinct subsequence of `word` with at most `k` characters removed,
/// paired with the number removed.
pub(crate) fn deletion_variants(word: &[char], k: usize) -> Vec<(Vec<char>, usize)> {
    let mut out = vec![(word.to_vec(), 0)];
    let mut frontier: Vec<Vec<char>> = vec![word.to_vec()];
    for d in 1..=k.min(word.len()) {
        let mut next: HashSet<Vec<char>> = HashSet::new();
        for s in &frontier {
            for i in 0..s.len() {
                let mut v = Vec::with_capacity(s.len() - 1);
                v.extend_from_slice(&s[..i]);
                v.extend_from_slice(&s[i + 1..]);
                next.insert(v);
            }
        }
        let mut level: Vec<Vec<char>> = next.into_iter().collect();
        level.sort_unstable();
        out.extend(level.iter().cloned().map(|v| (v, d)));
        frontier = level;
    }
    out
}

impl DeletionNeighborhood {
    pub fn build(words: &[Vec<char>], max_deletions: usize) -> Self {
        let mut buckets: HashMap<u64, Vec<(u32, u8)>> = HashMap::new();
        for (id, w) in words.iter().enumerate() {
            for (variant, d) in deletion_variants(w, max_deletions) {
                buckets.entry(key_of(&variant)).or_default().push((id as u32, d as u8));
            }
        }
        Self { max_deletions, buckets }
    }

    pub fn max_deletions(&self) -> usize {
        self.max_deletions
    }

    /// Ids of indexed words possibly within indel distance `k` of `word`
    /// (`k` is capped at the build-time deletion budget). Sorted, deduplicated,
    /// and may contain false positives.
    pub fn candidates(&self, word: &[char], k: usize) -> Vec<u32> {
        let k = k.min(self.max_deletions);
        let mut out = Vec::new();
        for (variant, d) in deletion_variants(word, k) {
            if let Some(list) = self.buckets.get(&key_of(&variant)) {
                out.extend(list.iter().filter(|&&(_, d2)| d + d2 as usize <= k).map(|&(id, _)| id));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
