//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use morphclir::commands::{build_collection, retrieve_all, translate_topics};
use morphclir::config::TermTransform;
use morphclir::corpus::{CollectionIndex, CooccurrenceTable, Document, PosLexicon, StopwordList, DEFAULT_WINDOW};
use morphclir::disambig::{
    estimate_association, init_weights, itd_update, itd_weights_observed, joint_weights_2g, plain_2g_weights,
    AssociationKind, ItdParams, MorphMode, Provenance, QueryTerm, TranslationCandidateSet, TranslationOptions,
    TranslationResources, WeightedQuery, Weighting,
};
use morphclir::morphgen::{
    apply_rule, generate_formations, FormationCandidate, IdentityStemmer, NoiseFilterConfig, Vocabulary,
};
use morphclir::retrieval::{evaluate, paired_ttest, score_kl, Qrels, RankedDoc, RetrievalConfig, RunFile};
use morphclir::rules::{extract_rule, indel_distance, mine_rules, MedConfig, TransformationRule};
use morphclir::synthetic::{SyntheticCollection, SyntheticConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{bigram_oracle, brute_force_counts, definition_metrics, exhaustive_formations, lcs};

type Outcome = Result<String, String>;
type Edges = HashMap<(String, String), f64>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[u8], len: std::ops::RangeInclusive<usize>) -> String {
    let n = rng.random_range(len);
    (0..n)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())] as char)
        .collect()
}

fn random_vocab(
    rng: &mut ChaCha8Rng,
    size: usize,
    alphabet: &[u8],
    len: std::ops::RangeInclusive<usize>,
) -> Vec<String> {
    let mut words = BTreeSet::new();
    while words.len() < size {
        words.insert(random_word(rng, alphabet, len.clone()));
    }
    words.into_iter().collect()
}

fn within(limit: Duration, elapsed: Duration) -> Outcome {
    if elapsed < limit {
        Ok(String::new())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn indel_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs = 10_000;
    for _ in 0..pairs {
        let a = random_word(&mut rng, b"abcd", 0..=10);
        let b = random_word(&mut rng, b"abcd", 0..=10);
        let expected = a.len() + b.len() - 2 * lcs(&a, &b);
        check!(
            indel_distance(&a, &b) == expected,
            "{a} {b}: {} vs {expected}",
            indel_distance(&a, &b)
        );
    }
    within(Duration::from_secs(5), start.elapsed())?;
    Ok(format!("{pairs} pairs"))
}

fn rule_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let vocab = random_vocab(&mut rng, 1000, b"abcdef", 2..=8);
    let mut pairs = 0usize;
    for w in &vocab {
        for v in &vocab {
            if w == v || indel_distance(w, v) > 3 {
                continue;
            }
            pairs += 1;
            let rule = extract_rule(w, v, "N").map_err(|e| e.to_string())?;
            check!(apply_rule(w, &rule).contains(v), "{w} -> {v} via {rule} lost");
        }
    }
    check!(pairs > 10_000, "only {pairs} pairs within 3 edits");
    within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!("{pairs} pairs, 100%"))
}

fn mining_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rules = 0;
    for round in 0..4 {
        let vocab = random_vocab(&mut rng, 200, b"abcde", 1..=7);
        let pos = if round % 2 == 0 {
            PosLexicon::new()
        } else {
            PosLexicon::from_pairs(
                vocab
                    .iter()
                    .map(|w| (w.clone(), ["N", "V", "ADJ"][w.len() % 3].to_string())),
            )
        };
        let table = mine_rules(&vocab, &pos, &MedConfig::default()).map_err(|e| e.to_string())?;
        let oracle = brute_force_counts(&vocab, &pos, 3);
        let total: u64 = oracle.values().sum();
        check!(
            table.len() == oracle.len(),
            "{} rules vs {} by enumeration",
            table.len(),
            oracle.len()
        );
        check!(table.total_count() == total, "total {} vs {total}", table.total_count());
        for (rule, &count) in &oracle {
            let got = table.get(rule).ok_or_else(|| format!("{rule} missing"))?;
            check!(got.count == count, "{rule}: count {} vs {count}", got.count);
            check!(got.prob == count as f64 / total as f64, "{rule}: prob {}", got.prob);
        }
        let sum: f64 = table.iter().map(|(_, s)| s.prob).sum();
        check!((sum - 1.0).abs() <= 1e-9, "probabilities sum to {sum}");
        rules += table.len();
    }
    Ok(format!("4 vocabularies, {rules} rules"))
}

fn worked_rule_examples() -> Outcome {
    let rows = [
        ("jhangrd", "jhangrdi", &["i:e:i"][..]),
        ("ksart", "ksarat", &["i:m:a"][..]),
        ("shabe", "ashab", &["i:b:a", "d:e:e"][..]),
    ];
    for (w, v, expected) in rows {
        let rule = extract_rule(w, v, "N_SING").map_err(|e| e.to_string())?;
        let text = rule.to_string();
        let (actions, tag) = text.split_once('@').unwrap();
        let got: BTreeSet<&str> = actions.split('|').collect();
        let want: BTreeSet<&str> = expected.iter().copied().collect();
        check!(got == want && tag == "N_SING", "{w} -> {v}: {text}");
    }
    Ok("3 rows".into())
}

/// Random term sets with positive symmetric edges drawn once per pair.
fn random_instance(
    rng: &mut ChaCha8Rng,
    terms: usize,
    per_term: usize,
    max_forms: usize,
) -> (Vec<TranslationCandidateSet>, Edges) {
    let sets: Vec<TranslationCandidateSet> = (0..terms)
        .map(|i| {
            let forms = rng.random_range(0..=max_forms);
            let dict: Vec<String> = (0..per_term - forms).map(|j| format!("t{i}d{j}")).collect();
            let mut s = TranslationCandidateSet::new(&format!("q{i}"), dict.clone());
            s.add_formations((0..forms).map(|j| FormationCandidate {
                source: dict[0].clone(),
                surface: format!("t{i}f{j}"),
                rule: TransformationRule::new(Vec::new(), "N"),
                prob: 1.0,
            }));
            s
        })
        .collect();
    let names: Vec<String> = sets
        .iter()
        .flat_map(|s| s.members().map(|(n, _, _)| n.to_string()).collect::<Vec<_>>())
        .collect();
    let mut edges = HashMap::new();
    for a in &names {
        for b in &names {
            if a < b {
                let w = rng.random_range(1e-3..1.0);
                edges.insert((a.clone(), b.clone()), w);
                edges.insert((b.clone(), a.clone()), w);
            }
        }
    }
    (sets, edges)
}

fn itd_contracts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let weights = |s: &TranslationCandidateSet| s.members().map(|(_, w, _)| w).collect::<Vec<f64>>();

    for _ in 0..100 {
        let shape: Vec<usize> = (0..rng.random_range(1..=5)).map(|_| rng.random_range(1..=5)).collect();
        let mut sets: Vec<TranslationCandidateSet> = shape
            .iter()
            .enumerate()
            .map(|(i, &n)| TranslationCandidateSet::new(&format!("q{i}"), (0..n).map(|j| format!("t{i}d{j}"))))
            .collect();
        init_weights(&mut sets).map_err(|e| e.to_string())?;
        let c: f64 = rng.random_range(0.01..10.0);
        let mut broken = None;
        itd_weights_observed(
            &mut sets,
            &|_: &str, _: &str| c,
            &ItdParams {
                max_iters: 20,
                eps: 0.0,
            },
            |it, sets| {
                // equal bits within a term; 1/n itself is one rounding away
                for s in sets {
                    let w = weights(s);
                    if w.iter()
                        .any(|x| x.to_bits() != w[0].to_bits() || (x - 1.0 / s.len() as f64).abs() > 1e-15)
                    {
                        broken.get_or_insert(format!("shape {shape:?}, edge {c}, iteration {it}: {:?}", weights(s)));
                    }
                }
            },
        );
        check!(broken.is_none(), "{}", broken.unwrap());
    }

    let instances = 1000;
    let mut worst_iters = 0;
    for _ in 0..instances {
        let (mut sets, edges) = random_instance(&mut rng, 5, 5, 2);
        let edge = |a: &str, b: &str| edges[&(a.to_string(), b.to_string())];
        init_weights(&mut sets).map_err(|e| e.to_string())?;

        let base = itd_update(&sets, &edge);
        for i in 0..sets.len() {
            for f in 0..sets[i].formations.len() {
                let mut perturbed = sets.clone();
                for (k, s) in perturbed.iter_mut().enumerate() {
                    for (g, w) in s.formation_weights.iter_mut().enumerate() {
                        if (k, g) != (i, f) {
                            *w += rng.random_range(0.1..1.0);
                        }
                    }
                }
                let moved = itd_update(&perturbed, &edge);
                check!(
                    moved[i].1[f].to_bits() == base[i].1[f].to_bits(),
                    "formation {f} of term {i} moved with other formations"
                );
            }
        }

        let mut off = None;
        let report = itd_weights_observed(&mut sets, &edge, &ItdParams::default(), |it, sets| {
            for s in sets {
                if (s.weight_sum() - 1.0).abs() > 1e-9 {
                    off.get_or_insert(format!("iteration {it}: sum {}", s.weight_sum()));
                }
            }
        });
        check!(off.is_none(), "{}", off.unwrap());
        check!(report.converged && report.iterations <= 50, "{report:?}");
        worst_iters = worst_iters.max(report.iterations);
    }
    Ok(format!(
        "{instances} random 5x5 instances, at most {worst_iters} iterations"
    ))
}

fn bigram_oracle_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let mut checked = 0;
    for _ in 0..500 {
        let docs: Vec<Vec<String>> = (0..rng.random_range(1..=5))
            .map(|_| {
                (0..rng.random_range(0..9))
                    .map(|_| letters[rng.random_range(0..8)].to_string())
                    .collect()
            })
            .collect();
        let w = rng.random_range(2..6);
        let cooc = CooccurrenceTable::build(&docs, w).map_err(|e| e.to_string())?;
        if cooc.total_windows() == 0 {
            continue;
        }
        let sets: Vec<TranslationCandidateSet> = (0..rng.random_range(1..4))
            .map(|i| {
                let mut pool = letters.to_vec();
                pool.shuffle(&mut rng);
                let n = rng.random_range(1..5);
                let nf = rng.random_range(0..n);
                let mut s = TranslationCandidateSet::new(&format!("q{i}"), pool[nf..n].iter().copied());
                s.add_formations(pool[..nf].iter().map(|f| FormationCandidate {
                    source: pool[nf].to_string(),
                    surface: f.to_string(),
                    rule: TransformationRule::new(Vec::new(), "N"),
                    prob: 1.0,
                }));
                s
            })
            .collect();
        let jp = estimate_association(&cooc, AssociationKind::JointProbability).map_err(|e| e.to_string())?;
        let expected = bigram_oracle(&docs, w, &sets);
        let mut got = sets.clone();
        joint_weights_2g(&mut got, &jp);
        for (s, e) in got.iter().zip(&expected) {
            for ((name, a, _), b) in s.members().zip(e) {
                check!((a - b).abs() <= 1e-12, "{name}: {a} vs {b}");
            }
        }
        let mut bare: Vec<TranslationCandidateSet> = sets
            .iter()
            .map(|s| TranslationCandidateSet::new(&s.query_term, s.dictionary.clone()))
            .collect();
        let mut plain = bare.clone();
        joint_weights_2g(&mut bare, &jp);
        plain_2g_weights(&mut plain, &jp);
        for (a, b) in bare.iter().zip(&plain) {
            check!(
                a.members()
                    .zip(b.members())
                    .all(|(x, y)| x.1.to_bits() == y.1.to_bits()),
                "differs from plain weighting without formations"
            );
        }
        checked += 1;
    }
    Ok(format!("{checked} toy collections"))
}

fn retrieval_oracles() -> Outcome {
    let idx = CollectionIndex::build(
        [
            Document::new("d1", "a b a"),
            Document::new("d2", "b c"),
            Document::new("d3", "c c c a"),
        ],
        &StopwordList::default(),
    )
    .map_err(|e| e.to_string())?;
    let query = WeightedQuery::from_terms(
        "q",
        [("a", 0.5), ("c", 0.5)].map(|(t, w)| QueryTerm {
            term: t.into(),
            weight: w,
            provenance: Provenance::Dictionary,
        }),
    );
    let mu = 100.0;
    let cfg = RetrievalConfig {
        mu,
        feedback: false,
        ..RetrievalConfig::default()
    };
    // collection: a 3/9, c 4/9; lengths 3, 2, 4
    let smoothed = |tf: f64, cf: f64, len: f64| ((tf + mu * cf / 9.0) / (len + mu)).ln();
    let hand = BTreeMap::from([
        ("d1", 0.5 * smoothed(2.0, 3.0, 3.0) + 0.5 * smoothed(0.0, 4.0, 3.0)),
        ("d2", 0.5 * smoothed(0.0, 3.0, 2.0) + 0.5 * smoothed(1.0, 4.0, 2.0)),
        ("d3", 0.5 * smoothed(1.0, 3.0, 4.0) + 0.5 * smoothed(3.0, 4.0, 4.0)),
    ]);
    let got = score_kl(&query, &idx, &cfg).map_err(|e| e.to_string())?;
    check!(got.len() == 3, "{} documents scored", got.len());
    for r in &got {
        let want = hand[r.doc_id.as_str()];
        check!((r.score - want).abs() <= 1e-9, "{}: {} vs {want}", r.doc_id, r.score);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let runs = 600;
    for _ in 0..runs {
        let mut run = RunFile::new("r");
        let mut qrels = Qrels::new();
        let mut expected = Vec::new();
        for q in 0..rng.random_range(1..6) {
            let mut pool: Vec<usize> = (0..40).collect();
            pool.shuffle(&mut rng);
            let ids: Vec<String> = pool[..rng.random_range(0..30)]
                .iter()
                .map(|d| format!("doc{d}"))
                .collect();
            let rel: BTreeSet<String> = (0..rng.random_range(1..8))
                .map(|_| format!("doc{}", rng.random_range(0..40)))
                .collect();
            for r in &rel {
                qrels.add(&q.to_string(), r, true);
            }
            let ranking = if rng.random::<f64>() < 0.2 {
                Vec::new()
            } else {
                run.insert(
                    q.to_string(),
                    ids.iter()
                        .enumerate()
                        .map(|(i, d)| RankedDoc {
                            doc_id: d.clone(),
                            score: -(i as f64),
                        })
                        .collect(),
                );
                ids
            };
            expected.push((q.to_string(), definition_metrics(&ranking, &rel)));
        }
        let res = evaluate(&run, &qrels);
        for (q, (ap, p5, p10, curve)) in &expected {
            let m = res.per_query.get(q).ok_or_else(|| format!("query {q} missing"))?;
            check!((m.ap - ap).abs() < 1e-12, "AP {} vs {ap}", m.ap);
            check!((m.p5 - p5).abs() < 1e-12 && (m.p10 - p10).abs() < 1e-12, "P@k for {q}");
            check!(
                m.interpolated.iter().zip(curve).all(|(a, b)| (a - b).abs() < 1e-12),
                "curve for {q}"
            );
        }
        let map = expected.iter().map(|e| e.1 .0).sum::<f64>() / expected.len() as f64;
        check!((res.map - map).abs() < 1e-12, "MAP {} vs {map}", res.map);
    }

    let mut run = RunFile::new("r");
    run.insert(
        "1",
        vec![RankedDoc {
            doc_id: "r".into(),
            score: 0.0,
        }],
    );
    let mut qrels = Qrels::new();
    qrels.add("1", "r", true);
    let map = evaluate(&run, &qrels).map;
    check!(map == 1.0, "single relevant at rank 1 gives MAP {map}");
    Ok(format!("3-doc scores, {runs} random runs, rank-1 MAP 1"))
}

fn synthetic_clir() -> Outcome {
    let start = Instant::now();
    let coll = SyntheticCollection::generate(&SyntheticConfig::default());
    check!(coll.documents.len() == 500, "{} documents", coll.documents.len());
    check!(
        coll.dictionary.len() == 50,
        "{} dictionary entries",
        coll.dictionary.len()
    );
    check!(coll.topics.len() == 20, "{} queries", coll.topics.len());
    for q in coll.qrels.query_ids() {
        let bases: BTreeSet<&str> = coll.bases.iter().map(String::as_str).collect();
        for d in &coll.documents {
            if coll.qrels.is_relevant(q, &d.doc_id) {
                check!(
                    !d.text.split(' ').any(|t| bases.contains(t)),
                    "relevant {} mentions a base form",
                    d.doc_id
                );
            }
        }
    }

    let (index, cooc) = build_collection(
        &coll.documents,
        &StopwordList::default(),
        TermTransform::None,
        &IdentityStemmer,
        DEFAULT_WINDOW,
    )
    .map_err(|e| e.to_string())?;
    let pos = PosLexicon::new();
    let med = MedConfig::default();
    let rules = mine_rules(index.vocabulary(), &pos, &med).map_err(|e| e.to_string())?;
    let top: Vec<&TransformationRule> = rules.sorted().into_iter().take(20).map(|(r, _)| r).collect();
    let planted = coll.planted_rules();
    check!(planted.len() == 10, "{} planted rules", planted.len());
    let missing: Vec<String> = planted
        .iter()
        .filter(|r| !top.contains(r))
        .map(|r| r.to_string())
        .collect();
    check!(missing.is_empty(), "planted rules outside the top 20: {missing:?}");

    let vocab = Vocabulary::new(index.vocabulary(), med.k_max);
    let res = TranslationResources {
        dictionary: &coll.dictionary,
        index: Some(&index),
        cooccurrence: Some(&cooc),
        rules: Some(&rules),
        vocabulary: Some(&vocab),
        pos: &pos,
        stemmer: &IdentityStemmer,
    };
    let rcfg = RetrievalConfig::default();
    let mut evals = Vec::new();
    let (mut found, mut total) = (0usize, 0usize);
    for mode in [MorphMode::None, MorphMode::Ag] {
        let opts = TranslationOptions {
            mode,
            weighting: Weighting::Bigram,
            ..Default::default()
        };
        let queries = translate_topics(&coll.topics, &res, &opts).map_err(|e| e.to_string())?;
        if mode == MorphMode::Ag {
            for q in &queries {
                for b in &coll.query_bases[&q.query_id] {
                    for v in &coll.variants[b] {
                        total += 1;
                        found += usize::from(q.weight_of(v) > 0.0);
                    }
                }
            }
        }
        let run = retrieve_all(&queries, &index, &rcfg, &format!("{mode}:2g")).map_err(|e| e.to_string())?;
        evals.push(evaluate(&run, &coll.qrels));
    }
    let recovery = found as f64 / total as f64;
    check!(recovery >= 0.9, "variant recovery {found}/{total}");
    let (ids, ag, none) = evals[1].paired_aps(&evals[0]);
    check!(ids.len() == 20, "{} paired queries", ids.len());
    let t = paired_ttest(&ag, &none);
    let (map_ag, map_none) = (evals[1].map, evals[0].map);
    check!(map_ag > map_none, "MAP ag {map_ag:.4} vs none {map_none:.4}");
    check!(t.p < 0.05, "p = {:e}", t.p);
    within(Duration::from_secs(300), start.elapsed())?;
    Ok(format!(
        "planted rules in top 20, variants {found}/{total}, MAP {map_ag:.4} vs {map_none:.4}, p = {:.2e}",
        t.p
    ))
}

fn filter_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pos = PosLexicon::new();
    let configs = 100;
    let mut compared = 0;
    for _ in 0..configs {
        let size = rng.random_range(20..150);
        let vocab = random_vocab(&mut rng, size, b"abc", 1..=7);
        let rules = mine_rules(&vocab, &pos, &MedConfig::default()).map_err(|e| e.to_string())?;
        let index = Vocabulary::new(&vocab, 3);
        let filters = |tau: f64, floors: [usize; 3]| NoiseFilterConfig {
            rule_prob_threshold: tau,
            min_len: BTreeMap::from([(1, floors[0]), (2, floors[1]), (3, floors[2])]),
            ..NoiseFilterConfig::default()
        };
        let tau: f64 = rng.random_range(0.0..0.03);
        let floors = [rng.random_range(0..6), rng.random_range(0..7), rng.random_range(0..8)];
        let higher_tau = tau + rng.random_range(0.0..0.03);
        let higher_floors = floors.map(|f| f + rng.random_range(0..3));
        let loose_cfg = filters(tau, floors);
        for _ in 0..5 {
            let source = random_word(&mut rng, b"abc", 1..=7);
            let loose: BTreeSet<String> = generate_formations(&source, &pos, &index, &rules, &loose_cfg)
                .into_iter()
                .map(|c| c.surface)
                .collect();
            let reference: BTreeSet<String> = exhaustive_formations(&source, &pos, &vocab, &rules, &loose_cfg)
                .into_iter()
                .map(|c| c.0)
                .collect();
            check!(
                loose == reference,
                "{source}: pruned generation differs from enumeration"
            );
            for strict in [
                filters(higher_tau, floors),
                filters(tau, higher_floors),
                filters(higher_tau, higher_floors),
            ] {
                for c in generate_formations(&source, &pos, &index, &rules, &strict) {
                    check!(
                        loose.contains(&c.surface),
                        "{source}: {} appeared under a stricter filter",
                        c.surface
                    );
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{configs} configurations, {compared} comparisons"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("indel distance equals the LCS identity", indel_identity),
        ("extracted rules regenerate their target", rule_round_trip),
        ("mined table equals pair enumeration", mining_oracle),
        ("worked rule examples", worked_rule_examples),
        ("ITD contracts", itd_contracts),
        ("bigram weighting oracle", bigram_oracle_check),
        ("retrieval and evaluation oracles", retrieval_oracles),
        ("synthetic CLIR end to end", synthetic_clir),
        ("stricter filters never add formations", filter_monotonicity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
