use statrs::distribution::{ContinuousCDF, StudentsT};

/// Outcome of a two-tailed paired t-test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    pub n: usize,
    pub mean_difference: f64,
    pub t: f64,
    pub p: f64,
}

impl TTest {
    pub fn significant(&self, alpha: f64) -> bool {
        self.p < alpha
    }
}

/// Paired t-test on `a[i] - b[i]` with `n - 1` degrees of freedom.
///
/// Fewer than two pairs, or differences that are all zero, give `t = 0`
/// and `p = 1`. Constant non-zero differences give an infinite `t` and the
/// smallest positive `f64` as `p`.
///
/// # Panics
/// If the slices differ in length.
pub fn paired_ttest(a: &[f64], b: &[f64]) -> TTest {
    assert_eq!(a.len(), b.len(), "paired samples must align");
    let n = a.len();
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = if n == 0 {
        0.0
    } else {
        diffs.iter().sum::<f64>() / n as f64
    };
    let flat = TTest {
        n,
        mean_difference: mean,
        t: 0.0,
        p: 1.0,
    };
    if n < 2 {
        return flat;
    }
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    // differences equal up to rounding count as constant
    let scale = diffs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    if var.sqrt() <= 1e-12 * scale || var == 0.0 {
        if mean == 0.0 {
            return flat;
        }
        return TTest {
            t: f64::INFINITY.copysign(mean),
            p: f64::MIN_POSITIVE,
            ..flat
        };
    }
    let t = mean / (var / n as f64).sqrt();
    let dist = StudentsT::new(0.0, 1.0, (n - 1) as f64).expect("positive degrees of freedom");
    let p = (2.0 * dist.sf(t.abs())).clamp(f64::MIN_POSITIVE, 1.0);
    TTest { t, p, ..flat }
}
