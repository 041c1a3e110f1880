use std::collections::BTreeSet;

use morphclir::corpus::{CollectionIndex, CooccurrenceTable, Document, StopwordList, UNKNOWN_TAG};
use morphclir::disambig::{
    baseline_weights, build_weighted_query, estimate_association, init_weights, itd_update, itd_weights,
    itd_weights_observed, joint_weights_2g, plain_2g_weights, AssociationKind, BaselineMethod, BilingualDictionary,
    ItdParams, MorphMode, TranslationCandidateSet, TranslationOptions, TranslationResources, Weighting,
};
use morphclir::morphgen::FormationCandidate;
use morphclir::rules::TransformationRule;
use proptest::prelude::*;

mod common;
use common::{bigram_oracle, hashed_edge};

fn form(source: &str, surface: &str) -> FormationCandidate {
    FormationCandidate {
        source: source.into(),
        surface: surface.into(),
        rule: TransformationRule::new(Vec::new(), UNKNOWN_TAG),
        prob: 1.0,
    }
}

fn set(term: &str, dict: &[&str], forms: &[&str]) -> TranslationCandidateSet {
    let mut s = TranslationCandidateSet::new(term, dict.iter().copied());
    s.add_formations(forms.iter().map(|f| form(dict[0], f)));
    s
}

fn table(docs: &[&str], w: usize) -> CooccurrenceTable {
    let toks: Vec<Vec<&str>> = docs.iter().map(|d| d.split_whitespace().collect()).collect();
    CooccurrenceTable::build(&toks, w).unwrap()
}

/// `terms` query terms with `dict` dictionary candidates and `forms` formations each.
fn grid(terms: usize, dict: usize, forms: usize) -> Vec<TranslationCandidateSet> {
    (0..terms)
        .map(|i| {
            let d: Vec<String> = (0..dict).map(|j| format!("t{i}d{j}")).collect();
            let f: Vec<String> = (0..forms).map(|j| format!("t{i}f{j}")).collect();
            let dr: Vec<&str> = d.iter().map(String::as_str).collect();
            let fr: Vec<&str> = f.iter().map(String::as_str).collect();
            set(&format!("q{i}"), &dr, &fr)
        })
        .collect()
}

fn weights(s: &TranslationCandidateSet) -> Vec<f64> {
    s.members().map(|(_, w, _)| w).collect()
}

#[test]
fn association_examples() {
    // every document fits one window, so counts are per document
    let mut docs = vec!["a b"; 2];
    docs.extend(["a"; 2]);
    docs.extend(["b"; 3]);
    docs.extend(["z"; 3]);
    let t = table(&docs, 10);
    assert_eq!((t.total_windows(), t.pair_count("a", "b")), (10, 2));
    assert_eq!((t.unigram_window_count("a"), t.unigram_window_count("b")), (4, 5));
    let jp = estimate_association(&t, AssociationKind::JointProbability).unwrap();
    let mi = estimate_association(&t, AssociationKind::MutualInformation).unwrap();
    assert_eq!(jp.joint_probability("a", "b"), 0.2);
    assert_eq!(mi.mutual_information("a", "b"), 0.0);
    assert_eq!(
        (jp.joint_probability("a", "z"), mi.mutual_information("a", "z")),
        (0.0, 0.0)
    );

    let mut docs = vec!["a b"; 4];
    docs.extend(["z"; 6]);
    let t = table(&docs, 10);
    let mi = estimate_association(&t, AssociationKind::MutualInformation).unwrap();
    assert!((mi.mutual_information("a", "b") - (40.0f64 / 16.0).ln()).abs() < 1e-15);
    assert!((mi.mutual_information("a", "b") - 0.916).abs() < 1e-3);
    assert_eq!(mi.mutual_information("a", "b"), mi.mutual_information("b", "a"));

    assert!(estimate_association(&table(&[], 2), AssociationKind::JointProbability).is_err());
}

#[test]
fn initialization_examples() {
    let mut sets = vec![
        set("q1", &["x", "y", "z"], &["xs"]),
        set("q2", &["u"], &[]),
        set("q3", &["v", "w"], &["vs", "ws"]),
    ];
    init_weights(&mut sets).unwrap();
    assert_eq!(weights(&sets[0]), [0.25; 4]);
    assert_eq!(weights(&sets[1]), [1.0]);
    assert_eq!(weights(&sets[2]), [0.25; 4]);
    assert!(init_weights(&mut [TranslationCandidateSet::new("q", Vec::<String>::new())]).is_err());
}

#[test]
fn symmetric_edges_are_a_fixed_point() {
    let mut sets = grid(2, 2, 0);
    init_weights(&mut sets).unwrap();
    let params = ItdParams {
        max_iters: 20,
        eps: 0.0,
    };
    itd_weights_observed(&mut sets, &|_: &str, _: &str| 0.7, &params, |_, sets| {
        for s in sets {
            assert_eq!(weights(s), [0.5, 0.5]);
        }
    });
}

#[test]
fn stronger_edge_wins_after_one_iteration() {
    let mut sets = vec![set("qa", &["a1", "a2"], &[]), set("qb", &["b1"], &[])];
    init_weights(&mut sets).unwrap();
    let edge = |a: &str, b: &str| {
        if (a, b) == ("a1", "b1") || (a, b) == ("b1", "a1") {
            1.0
        } else {
            0.0
        }
    };
    let params = ItdParams { max_iters: 1, eps: 0.0 };
    itd_weights(&mut sets, &edge, &params);
    // a1: 0.5 + 1 * 1, a2: 0.5 + 0, normalized by 2; b1: 1 + 0.5 alone in its term
    assert_eq!(weights(&sets[0]), [0.75, 0.25]);
    assert_eq!(weights(&sets[1]), [1.0]);
}

#[test]
fn single_term_keeps_initial_weights() {
    let mut sets = grid(1, 3, 2);
    init_weights(&mut sets).unwrap();
    let report = itd_weights(&mut sets, &hashed_edge(1, 0.1), &ItdParams::default());
    assert!(report.converged);
    assert_eq!(weights(&sets[0]), [0.2; 5]);
}

#[test]
fn formation_updates_ignore_other_formations() {
    let mut sets = grid(3, 2, 2);
    init_weights(&mut sets).unwrap();
    let edge = hashed_edge(7, 0.1);
    let base = itd_update(&sets, &edge);
    for i in 0..sets.len() {
        for f in 0..sets[i].formations.len() {
            let mut perturbed = sets.clone();
            for (k, s) in perturbed.iter_mut().enumerate() {
                for (g, w) in s.formation_weights.iter_mut().enumerate() {
                    if (k, g) != (i, f) {
                        *w += 0.37 + 0.01 * g as f64;
                    }
                }
            }
            let moved = itd_update(&perturbed, &edge);
            assert_eq!(moved[i].1[f].to_bits(), base[i].1[f].to_bits());
            // dictionary candidates do see other terms' formations
            assert_ne!(moved[(i + 1) % 3].0[0], base[(i + 1) % 3].0[0]);
        }
    }
}

#[test]
fn baseline_examples() {
    let x = ["x"; 30].join(" ");
    let y = ["y"; 10].join(" ");
    let index = CollectionIndex::build(
        [Document::new("d1", x), Document::new("d2", y)],
        &StopwordList::default(),
    )
    .unwrap();
    let run = |method, sets: &[TranslationCandidateSet]| {
        let mut sets = sets.to_vec();
        init_weights(&mut sets).unwrap();
        baseline_weights(&mut sets, method, &index);
        sets
    };
    let out = run(BaselineMethod::Top1, &[set("q", &["x", "y", "z"], &["xs"])]);
    assert_eq!(weights(&out[0]), [1.0, 0.0, 0.0, 0.0]);
    let out = run(BaselineMethod::Uniform, &[set("q", &["a", "b", "c", "d"], &[])]);
    assert_eq!(weights(&out[0]), [0.25; 4]);
    let out = run(BaselineMethod::Collection, &[set("q", &["x", "y"], &[])]);
    assert_eq!(weights(&out[0]), [0.75, 0.25]);
}

#[test]
fn bigram_degenerate_cases() {
    let mut sets = grid(2, 3, 1);
    joint_weights_2g(&mut sets, &|_: &str, _: &str| 0.0);
    for s in &sets {
        assert_eq!(weights(s), [0.25; 4]);
    }
    let mut sets = grid(3, 1, 0);
    joint_weights_2g(&mut sets, &hashed_edge(3, 0.0));
    for s in &sets {
        assert_eq!(weights(s), [1.0]);
    }
}

#[test]
fn split_fragments_share_weight_equally() {
    let mut dict = BilingualDictionary::new();
    dict.insert("import", ["imports"]);
    let opts = TranslationOptions {
        mode: MorphMode::Split,
        weighting: Weighting::Unif,
        ..TranslationOptions::default()
    };
    let q = build_weighted_query(
        "1",
        &["import".to_string()],
        &TranslationResources::dictionary_only(&dict),
        &opts,
    )
    .unwrap();
    let terms: BTreeSet<&str> = q.terms.iter().map(|t| t.term.as_str()).collect();
    assert_eq!(terms, BTreeSet::from(["impor", "mport", "ports"]));
    for t in &q.terms {
        assert!((t.weight - 1.0 / 3.0).abs() < 1e-15);
    }
}

#[test]
fn top1_without_morphology_is_dictionary_top1() {
    let mut dict = BilingualDictionary::new();
    dict.insert("cat", ["gorbe", "pishi"]);
    dict.insert("black", ["siah"]);
    let q = build_weighted_query(
        "1",
        &["black".to_string(), "cat".to_string(), "zebra".to_string()],
        &TranslationResources::dictionary_only(&dict),
        &TranslationOptions::default(),
    )
    .unwrap();
    let got: Vec<(&str, f64)> = q.terms.iter().map(|t| (t.term.as_str(), t.weight)).collect();
    assert_eq!(got.len(), 3);
    for (term, w) in got {
        assert!(["siah", "gorbe", "zebra"].contains(&term));
        assert!((w - 1.0 / 3.0).abs() < 1e-15);
    }
}

fn toy_sets() -> impl Strategy<Value = Vec<TranslationCandidateSet>> {
    let words = || prop::sample::subsequence(vec!["a", "b", "c", "d", "e", "f", "g", "h"], 1..5);
    prop::collection::vec((words(), 0usize..3), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .enumerate()
            .map(|(i, (ws, nf))| {
                let nd = ws.len().saturating_sub(nf).max(1);
                let (d, f) = ws.split_at(nd);
                set(&format!("q{i}"), d, f)
            })
            .collect()
    })
}

fn ranking(s: &TranslationCandidateSet) -> Vec<(usize, usize)> {
    let w = weights(s);
    let mut order = Vec::new();
    for a in 0..w.len() {
        for b in 0..w.len() {
            if w[a] > w[b] + 1e-6 {
                order.push((a, b));
            }
        }
    }
    order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bigram_matches_window_enumeration(
        docs in prop::collection::vec(prop::collection::vec("[a-h]", 0..9), 1..=5),
        w in 2usize..6,
        sets in toy_sets(),
    ) {
        let cooc = CooccurrenceTable::build(&docs, w).unwrap();
        prop_assume!(cooc.total_windows() > 0);
        let jp = estimate_association(&cooc, AssociationKind::JointProbability).unwrap();
        let expected = bigram_oracle(&docs, w, &sets);
        let mut got = sets.clone();
        joint_weights_2g(&mut got, &jp);
        for (s, e) in got.iter().zip(&expected) {
            for (a, b) in weights(s).iter().zip(e) {
                prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", a, b);
            }
        }

        let mut bare: Vec<TranslationCandidateSet> =
            sets.iter().map(|s| TranslationCandidateSet::new(&s.query_term, s.dictionary.clone())).collect();
        let mut plain = bare.clone();
        joint_weights_2g(&mut bare, &jp);
        plain_2g_weights(&mut plain, &jp);
        for (a, b) in bare.iter().zip(&plain) {
            let bits = |s: &TranslationCandidateSet| weights(s).iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(a), bits(b));
        }
    }

    #[test]
    fn every_method_normalizes_every_term(seed in any::<u64>(), terms in 1usize..5, dict in 1usize..4, forms in 0usize..3) {
        let edge = hashed_edge(seed, 0.0);
        let index = CollectionIndex::build([Document::new("d", "t0d0 t0d0 t1d1 t2d0")], &StopwordList::default()).unwrap();
        let fresh = || {
            let mut s = grid(terms, dict, forms);
            init_weights(&mut s).unwrap();
            s
        };
        let mut runs = Vec::new();
        let mut s = fresh();
        itd_weights_observed(&mut s, &edge, &ItdParams::default(), |_, sets| {
            for t in sets {
                assert!((t.weight_sum() - 1.0).abs() <= 1e-9);
            }
        });
        runs.push(s);
        let mut s = fresh();
        joint_weights_2g(&mut s, &edge);
        runs.push(s);
        for m in [BaselineMethod::Top1, BaselineMethod::Uniform, BaselineMethod::Collection] {
            let mut s = fresh();
            baseline_weights(&mut s, m, &index);
            runs.push(s);
        }
        for sets in runs {
            for t in sets {
                prop_assert!(t.members().all(|(_, w, _)| w >= 0.0));
                prop_assert!((t.weight_sum() - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn itd_converges_on_random_five_by_five(seed in any::<u64>(), forms in 0usize..=2) {
        let mut sets = grid(5, 5 - forms, forms);
        init_weights(&mut sets).unwrap();
        let report = itd_weights(&mut sets, &hashed_edge(seed, 1e-3), &ItdParams::default());
        prop_assert!(report.converged, "{:?}", report);
        prop_assert!(report.iterations <= 50);
    }

    #[test]
    fn scaling_edges_keeps_rankings(seed in any::<u64>(), scale in 0.05f64..20.0) {
        let base = hashed_edge(seed, 0.0);
        let scaled = |a: &str, b: &str| scale * base(a, b);
        let tight = ItdParams { max_iters: 100_000, eps: 1e-13 };
        let mut one = grid(3, 3, 2);
        init_weights(&mut one).unwrap();
        let mut two = one.clone();
        prop_assert!(itd_weights(&mut one, &base, &tight).converged);
        prop_assert!(itd_weights(&mut two, &scaled, &tight).converged);
        for (a, b) in one.iter().zip(&two) {
            prop_assert_eq!(ranking(a), ranking(b));
        }

        let mut one = grid(3, 3, 2);
        let mut two = one.clone();
        joint_weights_2g(&mut one, &base);
        joint_weights_2g(&mut two, &scaled);
        for (a, b) in one.iter().zip(&two) {
            prop_assert_eq!(ranking(a), ranking(b));
        }
    }
}
