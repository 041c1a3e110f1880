use super::candidates::TranslationCandidateSet;
use crate::corpus::CollectionIndex;

/// Dictionary-only weighting schemes that ignore query context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMethod {
    /// All weight on the first-ranked translation.
    Top1,
    /// `1/n` per translation.
    Uniform,
    /// Proportional to collection frequency.
    Collection,
}

/// Applies a baseline scheme; formations always end at weight zero.
pub fn baseline_weights(sets: &mut [TranslationCandidateSet], method: BaselineMethod, index: &CollectionIndex) {
    for set in sets.iter_mut() {
        let n = set.dictionary.len();
        set.formation_weights.iter_mut().for_each(|w| *w = 0.0);
        if n == 0 {
            continue;
        }
        set.dictionary_weights = match method {
            BaselineMethod::Top1 => (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect(),
            BaselineMethod::Uniform => vec![1.0 / n as f64; n],
            BaselineMethod::Collection => {
                let freqs: Vec<f64> = set.dictionary.iter().map(|t| index.collection_freq(t) as f64).collect();
                let total: f64 = freqs.iter().sum();
                if total > 0.0 {
                    freqs.iter().map(|f| f / total).collect()
                } else {
                    vec![1.0 / n as f64; n]
                }
            }
        };
    }
}
