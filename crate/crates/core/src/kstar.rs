//! The K* instance-based classifier for real attributes.
//!
//! For each query and each attribute, a scale x0 is chosen so that the
//! effective instance count of the transformation probabilities
//! pᵢ = exp(−|vᵢ − query| / x0) hits a target controlled by the blend
//! parameter: n_target = 1 + (b/100)·(N − 1). Blend 0 reduces to nearest
//! neighbor, blend 100 to a uniform vote. Per-attribute weights are
//! multiplied across attributes and summed per class.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{FitError, PredictError};
use crate::math;
use crate::metrics::ProbabilityVector;

/// Blend parameter, an integer percent in [0, 100].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KStarConfig {
    pub blend: u8,
}

impl Default for KStarConfig {
    fn default() -> Self {
        KStarConfig { blend: 20 }
    }
}

impl KStarConfig {
    pub(crate) fn validate(&self) -> Result<(), FitError> {
        if self.blend > 100 {
            return Err(FitError::InvalidConfig(alloc::format!(
                "kstar blend {} outside [0, 100]",
                self.blend
            )));
        }
        Ok(())
    }
}

/// A fitted K* model: the training data in column-major layout plus the
/// blend. Fitting is lazy; all work happens per query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KStarModel {
    /// columns[a][j] = attribute a of training instance j.
    columns: Vec<Vec<f64>>,
    labels: Vec<Label>,
    config: KStarConfig,
}

/// Result of the per-attribute scale solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleSolution {
    pub x0: f64,
    pub n_eff: f64,
    pub iterations: u32,
}

/// Effective instance count (Σp)²/Σp² for pᵢ = exp(−eᵢ/x0), where `shifted`
/// holds distances reduced by their minimum. The shift cancels in the ratio
/// and keeps Σp ≥ 1, so nothing underflows to 0/0.
fn n_eff(shifted: &[f64], x0: f64) -> f64 {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &e in shifted {
        let p = math::exp(-e / x0);
        sum += p;
        sum_sq += p * p;
    }
    sum * sum / sum_sq
}

/// Solves for the scale x0 at which the effective instance count reaches
/// n_target = 1 + (blend/100)·(N − 1).
///
/// Pure bisection in log-space over [1e-12·range, 1e6·range], range =
/// max|vᵢ − query|, run to a fixed bracket width so the result is
/// reproducible against an independent bisection oracle. n_eff is monotone
/// increasing in x0, so the root is unique; unreachable targets (blend 100,
/// or a tied nearest distance with blend 0) converge to the bracket edge.
/// Degenerate inputs (all distances equal) short-circuit to a uniform
/// solution with x0 = 1.
pub fn solve_scale(values: &[f64], query: f64, blend: u8) -> ScaleSolution {
    debug_assert!(!values.is_empty() && blend <= 100);
    let n = values.len();
    let mut shifted: Vec<f64> = values.iter().map(|&v| math::abs(v - query)).collect();
    let range = shifted.iter().copied().fold(0.0, f64::max);
    let d_min = shifted.iter().copied().fold(f64::INFINITY, f64::min);
    for e in &mut shifted {
        *e -= d_min;
    }
    if shifted.iter().all(|&e| e == 0.0) {
        // Every training value is equidistant from the query (in particular:
        // all equal to it). n_eff is N for every x0; weights are uniform.
        return ScaleSolution {
            x0: 1.0,
            n_eff: n as f64,
            iterations: 0,
        };
    }
    let target = 1.0 + (blend as f64 / 100.0) * (n as f64 - 1.0);

    let mut lo = math::ln(1e-12 * range);
    let mut hi = math::ln(1e6 * range);
    let mut iterations = 0;
    while hi - lo > 1e-9 && iterations < 128 {
        let mid = 0.5 * (lo + hi);
        if n_eff(&shifted, math::exp(mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let x0 = math::exp(0.5 * (lo + hi));
    ScaleSolution {
        x0,
        n_eff: n_eff(&shifted, x0),
        iterations,
    }
}

/// Normalized transformation probabilities wᵢ = pᵢ / Σⱼ pⱼ for
/// pᵢ = exp(−|vᵢ − query| / x0). Computed on shifted distances, which
/// leaves the ratio unchanged and avoids Σp underflowing to zero.
pub fn attribute_weights(values: &[f64], query: f64, x0: f64) -> Vec<f64> {
    debug_assert!(x0 > 0.0);
    let mut weights: Vec<f64> = values.iter().map(|&v| math::abs(v - query)).collect();
    let d_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let mut total = 0.0;
    for w in &mut weights {
        *w = math::exp(-(*w - d_min) / x0);
        total += *w;
    }
    for w in &mut weights {
        *w /= total;
    }
    weights
}

/// Fits a K* model: validates the dataset and stores it column-major.
pub fn fit(ds: &Dataset, config: KStarConfig) -> Result<KStarModel, FitError> {
    config.validate()?;
    if ds.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    let counts = ds.class_counts();
    if let Some(sole) = Label::ALL.iter().find(|l| counts[l.index()] == ds.len()) {
        return Err(FitError::SingleClass(*sole));
    }
    let columns = (0..ds.num_attributes()).map(|j| ds.column(j)).collect();
    let labels = ds.instances().iter().map(|inst| inst.label).collect();
    Ok(KStarModel {
        columns,
        labels,
        config,
    })
}

impl KStarModel {
    pub fn num_attributes(&self) -> usize {
        self.columns.len()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn config(&self) -> KStarConfig {
        self.config
    }

    /// Class probabilities for one query.
    ///
    /// Per instance j the weight is Πₐ wₐ[j] over the per-attribute
    /// normalized weights; classes sum their instances' weights and the pair
    /// is normalized. The product is accumulated in log-space, and the
    /// per-attribute normalizers are skipped: they are constant across
    /// instances, so they cancel in the final normalization. A per-instance
    /// max is subtracted before exponentiation so 14 small factors cannot
    /// underflow.
    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        if features.len() != self.columns.len() {
            return Err(PredictError::ArityMismatch {
                expected: self.columns.len(),
                found: features.len(),
            });
        }
        let n = self.labels.len();
        let mut log_w = vec![0.0f64; n];
        for (column, &query) in self.columns.iter().zip(features) {
            let solution = solve_scale(column, query, self.config.blend);
            let inv_x0 = 1.0 / solution.x0;
            let d_min = column
                .iter()
                .map(|&v| math::abs(v - query))
                .fold(f64::INFINITY, f64::min);
            for (lw, &v) in log_w.iter_mut().zip(column) {
                *lw -= (math::abs(v - query) - d_min) * inv_x0;
            }
        }
        let max_log = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max_log.is_finite() {
            // Unreachable for finite data; guards the all-underflow corner.
            return Ok(ProbabilityVector::uniform());
        }
        let mut mass = [0.0f64; 2];
        for (&lw, &label) in log_w.iter().zip(&self.labels) {
            mass[label.index()] += math::exp(lw - max_log);
        }
        Ok(ProbabilityVector::normalized(mass[0], mass[1]))
    }
}
