use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use super::qrels::Qrels;
use super::run::{RankedDoc, RunFile};
use crate::error::Result;
use crate::io;

/// Documents considered per query.
pub const EVAL_DEPTH: usize = 1000;

/// Recall levels of the interpolated precision curve.
pub const RECALL_LEVELS: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct QueryMetrics {
    pub ap: f64,
    pub p5: f64,
    pub p10: f64,
    pub relevant: usize,
    pub relevant_retrieved: usize,
    pub interpolated: [f64; 11],
}

/// Why a query took no part in the averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exclusion {
    /// The run has the query; the qrels do not.
    NotJudged,
    /// Judged, but without a single relevant document.
    NoRelevant,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalResult {
    pub per_query: BTreeMap<String, QueryMetrics>,
    pub excluded: BTreeMap<String, Exclusion>,
    pub map: f64,
    pub p5: f64,
    pub p10: f64,
    pub interpolated: [f64; 11],
}

/// Metrics of one ranking against its relevant set. Only the first
/// [`EVAL_DEPTH`] documents count.
pub fn query_metrics(ranking: &[RankedDoc], is_relevant: impl Fn(&str) -> bool, relevant: usize) -> QueryMetrics {
    let ranking = &ranking[..ranking.len().min(EVAL_DEPTH)];
    let mut hits = 0usize;
    let mut precision_sum = 0.0;
    let hits_at = |k: usize, hits: usize| hits as f64 / k as f64;
    let mut p5 = 0.0;
    let mut p10 = 0.0;
    // (recall, precision) at every relevant hit
    let mut points = Vec::new();
    for (i, d) in ranking.iter().enumerate() {
        let rank = i + 1;
        if is_relevant(&d.doc_id) {
            hits += 1;
            let p = hits as f64 / rank as f64;
            precision_sum += p;
            points.push((hits as f64 / relevant as f64, p));
        }
        if rank == 5 {
            p5 = hits_at(5, hits);
        }
        if rank == 10 {
            p10 = hits_at(10, hits);
        }
    }
    if ranking.len() < 5 {
        p5 = hits_at(5, hits);
    }
    if ranking.len() < 10 {
        p10 = hits_at(10, hits);
    }
    let mut interpolated = [0.0; 11];
    for (slot, &r) in interpolated.iter_mut().zip(&RECALL_LEVELS) {
        *slot = points
            .iter()
            .filter(|(rec, _)| *rec >= r - 1e-12)
            .map(|p| p.1)
            .fold(0.0, f64::max);
    }
    QueryMetrics {
        ap: if relevant == 0 {
            0.0
        } else {
            precision_sum / relevant as f64
        },
        p5,
        p10,
        relevant,
        relevant_retrieved: hits,
        interpolated,
    }
}

/// Scores `run` against `qrels`.
///
/// Every judged query with at least one relevant document is evaluated;
/// one absent from the run scores zero. Run queries without judgments are
/// listed in `excluded`.
pub fn evaluate(run: &RunFile, qrels: &Qrels) -> EvalResult {
    let mut out = EvalResult::default();
    for qid in run.results.keys() {
        if qrels.relevant(qid).is_none() {
            out.excluded.insert(qid.clone(), Exclusion::NotJudged);
        }
    }
    for qid in qrels.query_ids() {
        let rel = qrels.relevant(qid).expect("judged query");
        if rel.is_empty() {
            out.excluded.insert(qid.to_string(), Exclusion::NoRelevant);
            continue;
        }
        let m = query_metrics(run.ranking(qid), |d| rel.contains(d), rel.len());
        out.per_query.insert(qid.to_string(), m);
    }
    let n = out.per_query.len();
    if n > 0 {
        let mean = |f: &dyn Fn(&QueryMetrics) -> f64| out.per_query.values().map(f).sum::<f64>() / n as f64;
        out.map = mean(&|m| m.ap);
        out.p5 = mean(&|m| m.p5);
        out.p10 = mean(&|m| m.p10);
        let mut curve = [0.0; 11];
        for (i, c) in curve.iter_mut().enumerate() {
            *c = mean(&|m| m.interpolated[i]);
        }
        out.interpolated = curve;
    }
    out
}

impl EvalResult {
    /// Per-query APs for the queries both results evaluated, in id order.
    pub fn paired_aps(&self, other: &EvalResult) -> (Vec<String>, Vec<f64>, Vec<f64>) {
        let mut ids = Vec::new();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (qid, m) in &self.per_query {
            if let Some(o) = other.per_query.get(qid) {
                ids.push(qid.clone());
                a.push(m.ap);
                b.push(o.ap);
            }
        }
        (ids, a, b)
    }

    /// Summary table: `metric\tvalue` rows, the curve as `ircl_prn.R`.
    pub fn write_summary(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "metric\tvalue")?;
        writeln!(out, "queries\t{}", self.per_query.len())?;
        writeln!(out, "map\t{:.4}", self.map)?;
        writeln!(out, "P5\t{:.4}", self.p5)?;
        writeln!(out, "P10\t{:.4}", self.p10)?;
        for (r, p) in RECALL_LEVELS.iter().zip(&self.interpolated) {
            writeln!(out, "ircl_prn.{r:.1}\t{p:.4}")?;
        }
        Ok(())
    }

    /// One row per evaluated query: `query_id\tap\tP5\tP10\trelevant\trelevant_retrieved`.
    pub fn write_per_query(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "query_id\tap\tP5\tP10\trelevant\trelevant_retrieved")?;
        for (qid, m) in &self.per_query {
            writeln!(
                out,
                "{qid}\t{}\t{}\t{}\t{}\t{}",
                m.ap, m.p5, m.p10, m.relevant, m.relevant_retrieved
            )?;
        }
        Ok(())
    }

    pub fn save_per_query(&self, path: impl AsRef<Path>) -> Result<()> {
        io::write_with(path.as_ref(), |w| self.write_per_query(w))
    }
}
