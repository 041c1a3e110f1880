//! Corpus-driven statistical stemming and morphology-aware cross-lingual
//! retrieval.
//!
//! The crate mines insertion/deletion transformation rules from the word
//! pairs of a target-language vocabulary, scores them by relative
//! frequency, and uses them to add inflected formations to dictionary-based
//! query translations. Candidates are weighted by co-occurrence coherence
//! (iterative disambiguation or pairwise joint probabilities) and the
//! resulting query is run through KL-divergence language-model retrieval
//! with Dirichlet smoothing, optional mixture-model feedback, and TREC-style
//! evaluation.
//!
//! | module | contents |
//! |---|---|
//! | [`corpus`] | documents, tokenizer, inverted index, co-occurrence windows, POS lexicon |
//! | [`rules`] | indel distance, rule extraction, mining, rule tables |
//! | [`morphgen`] | rule application, formation generation, noise filters, n-gram split, stemmers |
//! | [`disambig`] | dictionaries, candidate sets, TOP-1/UNIF/COLL, ITD, 2G, weighted queries |
//! | [`retrieval`] | KL scoring, feedback, run files, qrels, metrics, paired t-test |
//! | [`config`] | experiment configuration file |
//! | [`commands`] | the pipeline steps behind the `morphclir` binary |
//! | [`synthetic`] | a generated collection with planted morphology for demos and tests |

pub mod commands;
pub mod config;
pub mod corpus;
pub mod disambig;
mod error;
mod io;
pub mod morphgen;
pub mod retrieval;
pub mod rules;
pub mod synthetic;

pub use error::{Error, Result};
