//! KL-divergence retrieval with Dirichlet smoothing, mixture-model
//! feedback, TREC run/qrels files and evaluation.

mod eval;
mod kl;
mod prf;
mod qrels;
mod run;
mod ttest;

pub use eval::{evaluate, query_metrics, EvalResult, Exclusion, QueryMetrics, EVAL_DEPTH, RECALL_LEVELS};
pub use kl::{score_kl, RetrievalConfig};
pub use prf::{feedback_counts, fit_feedback_model, prf_mixture, retrieve, MixtureFit};
pub use qrels::Qrels;
pub use run::{RankedDoc, RunFile};
pub use ttest::{paired_ttest, TTest};
