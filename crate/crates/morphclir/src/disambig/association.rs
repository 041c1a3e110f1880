use crate::corpus::CooccurrenceTable;
use crate::error::{Error, Result};

/// Symmetric, nonnegative association between two target terms.
pub trait EdgeWeights {
    fn edge(&self, a: &str, b: &str) -> f64;
}

impl<F> EdgeWeights for F
where
    F: Fn(&str, &str) -> f64,
{
    fn edge(&self, a: &str, b: &str) -> f64 {
        self(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociationKind {
    /// `max(0, ln(n(a,b) · N / (n(a) · n(b))))` over window counts.
    MutualInformation,
    /// `n(a,b) / N`, the fraction of windows holding both terms.
    JointProbability,
}

/// Edge weights read off a [`CooccurrenceTable`].
#[derive(Debug, Clone, Copy)]
pub struct AssociationModel<'a> {
    cooc: &'a CooccurrenceTable,
    kind: AssociationKind,
}

/// Wraps `cooc` as an association model of the given kind.
pub fn estimate_association(cooc: &CooccurrenceTable, kind: AssociationKind) -> Result<AssociationModel<'_>> {
    if cooc.total_windows() == 0 {
        return Err(Error::EmptyCollection);
    }
    Ok(AssociationModel { cooc, kind })
}

impl AssociationModel<'_> {
    pub fn kind(&self) -> AssociationKind {
        self.kind
    }

    pub fn joint_probability(&self, a: &str, b: &str) -> f64 {
        self.cooc.pair_count(a, b) as f64 / self.cooc.total_windows() as f64
    }

    pub fn mutual_information(&self, a: &str, b: &str) -> f64 {
        let pair = self.cooc.pair_count(a, b);
        if pair == 0 {
            return 0.0;
        }
        let ua = self.cooc.unigram_window_count(a) as f64;
        let ub = self.cooc.unigram_window_count(b) as f64;
        let n = self.cooc.total_windows() as f64;
        (pair as f64 * n / (ua * ub)).ln().max(0.0)
    }
}

impl EdgeWeights for AssociationModel<'_> {
    fn edge(&self, a: &str, b: &str) -> f64 {
        match self.kind {
            AssociationKind::MutualInformation => self.mutual_information(a, b),
            AssociationKind::JointProbability => self.joint_probability(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn table(unigram: &[(&str, u64)], pair: u64, total: u64) -> CooccurrenceTable {
        let terms: Vec<String> = unigram.iter().map(|(t, _)| t.to_string()).collect();
        let counts = unigram.iter().map(|(_, c)| *c).collect();
        CooccurrenceTable::from_parts(10, terms, counts, HashMap::from([((0, 1), pair)]), total)
    }

    #[test]
    fn absent_pair_is_zero() {
        let t = table(&[("a", 3), ("b", 3)], 0, 10);
        for kind in [AssociationKind::MutualInformation, AssociationKind::JointProbability] {
            assert_eq!(estimate_association(&t, kind).unwrap().edge("a", "b"), 0.0);
        }
    }

    #[test]
    fn formulas() {
        let t = table(&[("a", 4), ("b", 5)], 2, 10);
        let jp = estimate_association(&t, AssociationKind::JointProbability).unwrap();
        let mi = estimate_association(&t, AssociationKind::MutualInformation).unwrap();
        assert_eq!(jp.edge("a", "b"), 0.2);
        assert_eq!(mi.edge("a", "b"), 0.0);

        let t = table(&[("a", 4), ("b", 4)], 4, 10);
        let mi = estimate_association(&t, AssociationKind::MutualInformation).unwrap();
        assert!((mi.edge("b", "a") - (40.0f64 / 16.0).ln()).abs() < 1e-15);
        assert!((mi.edge("a", "b") - 0.916).abs() < 1e-3);
    }

    #[test]
    fn needs_windows() {
        let t = table(&[("a", 0), ("b", 0)], 0, 0);
        assert!(estimate_association(&t, AssociationKind::JointProbability).is_err());
    }
}
