//! Formation generation from mined rules, noise filtering, and the
//! n-gram and stemming alternatives.

mod apply;
mod generate;
mod split;
mod stem;

pub use apply::apply_rule;
pub use generate::{
    context_filter, generate_formations, write_formations, FormationCandidate, NoiseFilterConfig, Vocabulary,
};
pub use split::{char_ngrams, ngram_split, DEFAULT_NGRAM};
pub use stem::{stem_hook, IdentityStemmer, Stemmer, SuffixStripper, TableStemmer};
