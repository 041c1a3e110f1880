//! Pairwise joint-probability coherence ("2G").
//!
//! A dictionary candidate scores the summed joint probability with every
//! dictionary candidate and every formation of the other query terms; a
//! formation scores only against the other terms' dictionary candidates.
//! Scores are normalized per term, falling back to uniform when a term's
//! scores are all zero.

use super::association::EdgeWeights;
use super::candidates::TranslationCandidateSet;

/// Weights every member of every set by cross-term joint probability mass.
pub fn joint_weights_2g(sets: &mut [TranslationCandidateSet], joint: &impl EdgeWeights) {
    let scores: Vec<(Vec<f64>, Vec<f64>)> = sets
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let dict = set
                .dictionary
                .iter()
                .map(|c| {
                    let mut total = 0.0;
                    for (_, other) in sets.iter().enumerate().filter(|&(k, _)| k != i) {
                        let with_dict: f64 = other.dictionary.iter().map(|o| joint.edge(c, o)).sum();
                        let with_forms: f64 = other.formations.iter().map(|o| joint.edge(c, &o.surface)).sum();
                        total += with_dict + with_forms;
                    }
                    total
                })
                .collect();
            let forms = set
                .formations
                .iter()
                .map(|f| {
                    let mut total = 0.0;
                    for (_, other) in sets.iter().enumerate().filter(|&(k, _)| k != i) {
                        total += other.dictionary.iter().map(|o| joint.edge(&f.surface, o)).sum::<f64>();
                    }
                    total
                })
                .collect();
            (dict, forms)
        })
        .collect();
    for (set, (dict, forms)) in sets.iter_mut().zip(scores) {
        set.dictionary_weights = dict;
        set.formation_weights = forms;
        set.normalize();
    }
}

/// The dictionary-only coherence weighting: each candidate scores its summed
/// joint probability with the other terms' dictionary candidates.
/// Formations, if any, are left at weight zero.
pub fn plain_2g_weights(sets: &mut [TranslationCandidateSet], joint: &impl EdgeWeights) {
    let scores: Vec<Vec<f64>> = sets
        .iter()
        .enumerate()
        .map(|(i, set)| {
            set.dictionary
                .iter()
                .map(|c| {
                    let mut total = 0.0;
                    for (_, other) in sets.iter().enumerate().filter(|&(k, _)| k != i) {
                        total += other.dictionary.iter().map(|o| joint.edge(c, o)).sum::<f64>();
                    }
                    total
                })
                .collect()
        })
        .collect();
    for (set, dict) in sets.iter_mut().zip(scores) {
        let total: f64 = dict.iter().sum();
        if total > 0.0 {
            set.dictionary_weights = dict.iter().map(|x| x / total).collect();
        } else {
            let w = 1.0 / set.dictionary.len() as f64;
            set.dictionary_weights = vec![w; set.dictionary.len()];
        }
        set.formation_weights.iter_mut().for_each(|x| *x = 0.0);
    }
}
