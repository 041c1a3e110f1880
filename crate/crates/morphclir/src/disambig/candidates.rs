use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::morphgen::FormationCandidate;

/// Translation candidates of one query term: dictionary translations plus
/// generated formations of those translations, each with a weight.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationCandidateSet {
    pub query_term: String,
    pub dictionary: Vec<String>,
    pub formations: Vec<FormationCandidate>,
    pub dictionary_weights: Vec<f64>,
    pub formation_weights: Vec<f64>,
    /// Set when the term had no dictionary entry and stands for itself.
    pub untranslated: bool,
}

impl TranslationCandidateSet {
    pub fn new<I, S>(query_term: &str, dictionary: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let dictionary: Vec<String> = dictionary.into_iter().map(Into::into).collect();
        Self {
            query_term: query_term.to_string(),
            dictionary_weights: vec![0.0; dictionary.len()],
            dictionary,
            formations: Vec::new(),
            formation_weights: Vec::new(),
            untranslated: false,
        }
    }

    /// A term without translations passes through as its own single candidate.
    pub fn untranslated(query_term: &str) -> Self {
        Self {
            untranslated: true,
            ..Self::new(query_term, [query_term])
        }
    }

    /// Appends formations, skipping surfaces already in the set.
    pub fn add_formations(&mut self, formations: impl IntoIterator<Item = FormationCandidate>) {
        let mut seen: HashSet<String> = self
            .dictionary
            .iter()
            .cloned()
            .chain(self.formations.iter().map(|f| f.surface.clone()))
            .collect();
        for f in formations {
            if seen.insert(f.surface.clone()) {
                self.formations.push(f);
                self.formation_weights.push(0.0);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.dictionary.len() + self.formations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight_sum(&self) -> f64 {
        self.dictionary_weights.iter().sum::<f64>() + self.formation_weights.iter().sum::<f64>()
    }

    /// Sets every member to `1 / len`.
    pub fn set_uniform(&mut self) {
        let w = 1.0 / self.len() as f64;
        self.dictionary_weights.iter_mut().for_each(|x| *x = w);
        self.formation_weights.iter_mut().for_each(|x| *x = w);
    }

    /// Divides by the weight sum, or falls back to uniform when the sum is zero.
    pub fn normalize(&mut self) {
        let total = self.weight_sum();
        if total > 0.0 && total.is_finite() {
            self.dictionary_weights.iter_mut().for_each(|x| *x /= total);
            self.formation_weights.iter_mut().for_each(|x| *x /= total);
        } else {
            self.set_uniform();
        }
    }

    /// `(term, weight, is_formation)` for every member.
    pub fn members(&self) -> impl Iterator<Item = (&str, f64, bool)> {
        self.dictionary
            .iter()
            .zip(&self.dictionary_weights)
            .map(|(t, &w)| (t.as_str(), w, false))
            .chain(
                self.formations
                    .iter()
                    .zip(&self.formation_weights)
                    .map(|(f, &w)| (f.surface.as_str(), w, true)),
            )
    }

    pub fn weight_of(&self, term: &str) -> Option<f64> {
        self.members().find(|(t, _, _)| *t == term).map(|(_, w, _)| w)
    }
}

/// Gives every member of term i the weight `1 / (|c_i| + |c̄_i|)`.
pub fn init_weights(sets: &mut [TranslationCandidateSet]) -> Result<()> {
    for s in sets.iter_mut() {
        if s.is_empty() {
            return Err(Error::EmptyCandidateSet(s.query_term.clone()));
        }
        s.set_uniform();
    }
    Ok(())
}
