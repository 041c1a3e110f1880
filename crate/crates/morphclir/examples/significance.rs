//! Paired two-tailed t-test on per-query average precision.
//!
//! cargo run --example significance

use morphclir::retrieval::paired_ttest;

fn main() {
    let baseline = [0.21, 0.35, 0.10, 0.44, 0.30, 0.27, 0.19, 0.52];
    let expanded = [0.25, 0.41, 0.12, 0.43, 0.38, 0.33, 0.22, 0.58];
    let r = paired_ttest(&expanded, &baseline);
    println!("n={} mean diff={:.4} t={:.4} p={:.4}", r.n, r.mean_difference, r.t, r.p);
    println!("significant at 95%: {}", r.significant(0.05));
}
