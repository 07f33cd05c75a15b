//! Gross-artifact detection via a per-attribute median ± t·IQR band.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::math;

/// Outlier band width. An instance is an outlier when any attribute value
/// falls outside [median − t·IQR, median + t·IQR] for that attribute.
///
/// The default t=100 is deliberately wide: it isolates gross recording
/// artifacts (values orders of magnitude off) while leaving ordinary
/// signal variation alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutlierPolicy {
    pub t: f64,
}

impl Default for OutlierPolicy {
    fn default() -> Self {
        OutlierPolicy { t: 100.0 }
    }
}

/// Indices (ascending) of instances with at least one out-of-band value.
///
/// Bands derive from order statistics of each attribute column, so the
/// flagged instances are invariant under row permutation. A constant
/// attribute has IQR 0 and a zero-width band containing the constant, so
/// it never flags anything.
pub fn detect_outliers(ds: &Dataset, policy: &OutlierPolicy) -> Vec<usize> {
    if ds.is_empty() {
        return Vec::new();
    }
    let bands: Vec<(f64, f64)> = (0..ds.num_attributes())
        .map(|j| {
            let mut column = ds.column(j);
            column.sort_unstable_by(f64::total_cmp);
            let median = percentile(&column, 0.5);
            let iqr = percentile(&column, 0.75) - percentile(&column, 0.25);
            (median - policy.t * iqr, median + policy.t * iqr)
        })
        .collect();

    ds.instances()
        .iter()
        .enumerate()
        .filter(|(_, inst)| {
            inst.features
                .iter()
                .zip(&bands)
                .any(|(&v, &(lo, hi))| v < lo || v > hi)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Linear-interpolation percentile of a sorted, non-empty slice: the value
/// at rank q·(n−1), interpolating between neighbors.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let pos = q * (n - 1) as f64;
    let lo = math::floor(pos) as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}
