//! Translation candidate construction and disambiguation.

mod association;
mod baseline;
mod bigram;
mod candidates;
mod dictionary;
mod itd;
mod query;
mod topics;

pub use association::{estimate_association, AssociationKind, AssociationModel, EdgeWeights};
pub use baseline::{baseline_weights, BaselineMethod};
pub use bigram::{joint_weights_2g, plain_2g_weights};
pub use candidates::{init_weights, TranslationCandidateSet};
pub use dictionary::BilingualDictionary;
pub use itd::{itd_update, itd_weights, itd_weights_observed, ItdParams, ItdReport};
pub use query::{
    assemble_query, build_candidate_sets, build_weighted_query, load_weighted_queries, save_weighted_queries,
    weight_candidate_sets, write_weighted_queries, MorphMode, Provenance, QueryTerm, TranslationOptions,
    TranslationResources, WeightedQuery, Weighting,
};
pub use topics::{load_topics, parse_topics, Topic};
