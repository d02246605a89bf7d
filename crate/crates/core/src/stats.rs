//! Spearman rank correlation and order statistics.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SpearmanError {
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least 3 paired observations, got {0}")]
    TooFewSamples(usize),
    #[error("constant series: correlation is undefined")]
    ConstantSeries,
    #[error("series contains a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpearmanResult {
    pub rho: f64,
    pub n: usize,
    /// Two-tailed p-value from the normal approximation
    /// `z = rho * sqrt(n - 1)`. Approximate; unreliable for small `n`.
    pub p_approx: f64,
}

/// 1-based ranks; tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = alloc::vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Spearman's rho: the Pearson correlation of the average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<SpearmanResult, SpearmanError> {
    if xs.len() != ys.len() {
        return Err(SpearmanError::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 3 {
        return Err(SpearmanError::TooFewSamples(n));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(SpearmanError::NonFinite);
    }

    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    // Average ranks always sum to n(n+1)/2.
    let mean = (n + 1) as f64 / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (dx, dy) = (a - mean, b - mean);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(SpearmanError::ConstantSeries);
    }
    let rho = (sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0);
    let z = rho * libm::sqrt((n - 1) as f64);
    let p_approx = libm::erfc(libm::fabs(z) / core::f64::consts::SQRT_2).min(1.0);
    Ok(SpearmanResult { rho, n, p_approx })
}

/// Median of a sorted slice; the mean of the middle two when even.
pub fn median_sorted(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(sorted[n / 2]),
        _ => Some((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0),
    }
}

pub fn median(values: &[f64]) -> Option<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    median_sorted(&v)
}

/// Minimum, quartiles and maximum of a distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiveNumber {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl FiveNumber {
    /// Quartiles are the medians of the lower and upper halves, excluding
    /// the middle value when `n` is odd.
    pub fn of(values: &[f64]) -> Option<Self> {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = median_sorted(&v)?;
        let half = n / 2;
        let (q1, q3) =
            if half == 0 { (median, median) } else { (median_sorted(&v[..half])?, median_sorted(&v[n - half..])?) };
        Some(Self { n, min: v[0], q1, median, q3, max: v[n - 1] })
    }
}
