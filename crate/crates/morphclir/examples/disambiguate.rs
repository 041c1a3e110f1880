//! Weight ambiguous dictionary translations with each method: TOP-1,
//! uniform, collection frequency, iterative disambiguation and 2G.
//!
//! cargo run --example disambiguate

use morphclir::corpus::{tokenize, CollectionIndex, CooccurrenceTable, Document, StopwordList};
use morphclir::disambig::{
    baseline_weights, estimate_association, init_weights, itd_weights, joint_weights_2g, AssociationKind,
    BaselineMethod, ItdParams, TranslationCandidateSet,
};

fn show(label: &str, sets: &[TranslationCandidateSet]) {
    let cells: Vec<String> = sets
        .iter()
        .flat_map(|s| s.members().map(|(t, w, _)| format!("{t}={w:.3}")))
        .collect();
    println!("{label:<5} {}", cells.join("  "));
}

fn main() -> morphclir::Result<()> {
    let texts = [
        "bank interest rate loan",
        "bank loan rate rise",
        "river bank water flow",
        "interest rate policy",
        "shore water sand",
    ];
    let sw = StopwordList::default();
    let docs: Vec<Document> = texts
        .iter()
        .enumerate()
        .map(|(i, t)| Document::new(format!("d{i}"), *t))
        .collect();
    let index = CollectionIndex::build(docs, &sw)?;
    let streams: Vec<Vec<String>> = texts.iter().map(|t| tokenize(t, &sw)).collect();
    let cooc = CooccurrenceTable::build(&streams, 4)?;

    // an ambiguous source term and an unambiguous one
    let fresh = || {
        vec![
            TranslationCandidateSet::new("src-bank", ["shore", "bank"]),
            TranslationCandidateSet::new("src-rate", ["rate", "interest"]),
        ]
    };
    for (label, method) in [
        ("top1", BaselineMethod::Top1),
        ("unif", BaselineMethod::Uniform),
        ("coll", BaselineMethod::Collection),
    ] {
        let mut sets = fresh();
        init_weights(&mut sets)?;
        baseline_weights(&mut sets, method, &index);
        show(label, &sets);
    }
    let mut sets = fresh();
    init_weights(&mut sets)?;
    let mi = estimate_association(&cooc, AssociationKind::MutualInformation)?;
    let report = itd_weights(&mut sets, &mi, &ItdParams::default());
    show("itd", &sets);
    println!(
        "      ({} iterations, converged: {})",
        report.iterations, report.converged
    );

    let mut sets = fresh();
    init_weights(&mut sets)?;
    joint_weights_2g(
        &mut sets,
        &estimate_association(&cooc, AssociationKind::JointProbability)?,
    );
    show("2g", &sets);
    Ok(())
}
