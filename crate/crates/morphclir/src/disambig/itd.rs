//! Iterative translation disambiguation.
//!
//! Every candidate starts with a uniform share of its term. Each iteration
//! adds to a candidate the association-weighted mass of the candidates of
//! all other query terms, then renormalizes per term. Dictionary candidates
//! gather mass from both dictionary candidates and formations of other
//! terms; formations gather mass from dictionary candidates only, so two
//! formations never reinforce each other.

use super::association::EdgeWeights;
use super::candidates::TranslationCandidateSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItdParams {
    pub max_iters: usize,
    /// Stop once no weight moves by this much in one iteration.
    pub eps: f64,
}

impl Default for ItdParams {
    fn default() -> Self {
        Self {
            max_iters: 50,
            eps: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItdReport {
    pub iterations: usize,
    pub converged: bool,
    /// Largest weight change in the final iteration.
    pub last_change: f64,
}

/// Edge weights between members of different terms, computed once.
struct EdgeCache {
    // edges[i][i'] is a row-major |members_i| x |members_i'| matrix
    // (members = dictionary candidates followed by formations)
    edges: Vec<Vec<Vec<f64>>>,
}

impl EdgeCache {
    fn new(sets: &[TranslationCandidateSet], weights: &impl EdgeWeights) -> Self {
        let names: Vec<Vec<&str>> = sets.iter().map(|s| s.members().map(|(t, _, _)| t).collect()).collect();
        let edges = (0..sets.len())
            .map(|i| {
                (0..sets.len())
                    .map(|k| {
                        if i == k {
                            return Vec::new();
                        }
                        names[i]
                            .iter()
                            .flat_map(|a| names[k].iter().map(move |b| (a, b)))
                            .map(|(a, b)| weights.edge(a, b))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { edges }
    }

    fn get(&self, sets: &[TranslationCandidateSet], i: usize, a: usize, k: usize, b: usize) -> f64 {
        self.edges[i][k][a * sets[k].len() + b]
    }
}

/// One unnormalized update: `(dictionary weights, formation weights)` per term.
pub fn itd_update(sets: &[TranslationCandidateSet], weights: &impl EdgeWeights) -> Vec<(Vec<f64>, Vec<f64>)> {
    let cache = EdgeCache::new(sets, weights);
    update_with(sets, &cache)
}

fn update_with(sets: &[TranslationCandidateSet], cache: &EdgeCache) -> Vec<(Vec<f64>, Vec<f64>)> {
    sets.iter()
        .enumerate()
        .map(|(i, set)| {
            let nd = set.dictionary.len();
            let dict = set
                .dictionary_weights
                .iter()
                .enumerate()
                .map(|(a, &w)| {
                    let mut acc = w;
                    for (k, other) in sets.iter().enumerate().filter(|&(k, _)| k != i) {
                        let od = other.dictionary.len();
                        for (b, &wb) in other.dictionary_weights.iter().enumerate() {
                            acc += cache.get(sets, i, a, k, b) * wb;
                        }
                        for (b, &wb) in other.formation_weights.iter().enumerate() {
                            acc += cache.get(sets, i, a, k, od + b) * wb;
                        }
                    }
                    acc
                })
                .collect();
            let forms = set
                .formation_weights
                .iter()
                .enumerate()
                .map(|(f, &w)| {
                    let mut acc = w;
                    for (k, other) in sets.iter().enumerate().filter(|&(k, _)| k != i) {
                        for (b, &wb) in other.dictionary_weights.iter().enumerate() {
                            acc += cache.get(sets, i, nd + f, k, b) * wb;
                        }
                    }
                    acc
                })
                .collect();
            (dict, forms)
        })
        .collect()
}

/// Runs ITD from the current weights (normally after
/// [`init_weights`](super::init_weights)).
pub fn itd_weights(sets: &mut [TranslationCandidateSet], weights: &impl EdgeWeights, params: &ItdParams) -> ItdReport {
    itd_weights_observed(sets, weights, params, |_, _| {})
}

/// [`itd_weights`] with a callback after every normalized iteration.
pub fn itd_weights_observed(
    sets: &mut [TranslationCandidateSet],
    weights: &impl EdgeWeights,
    params: &ItdParams,
    mut observe: impl FnMut(usize, &[TranslationCandidateSet]),
) -> ItdReport {
    let cache = EdgeCache::new(sets, weights);
    let mut last_change = 0.0;
    for iter in 1..=params.max_iters {
        let updates = update_with(sets, &cache);
        let mut change: f64 = 0.0;
        for (set, (dict, forms)) in sets.iter_mut().zip(updates) {
            let old: Vec<f64> = set.members().map(|(_, w, _)| w).collect();
            set.dictionary_weights = dict;
            set.formation_weights = forms;
            set.normalize();
            for (o, (_, n, _)) in old.iter().zip(set.members()) {
                change = change.max((o - n).abs());
            }
        }
        observe(iter, sets);
        last_change = change;
        if change < params.eps {
            return ItdReport {
                iterations: iter,
                converged: true,
                last_change,
            };
        }
    }
    ItdReport {
        iterations: params.max_iters,
        converged: false,
        last_change,
    }
}
