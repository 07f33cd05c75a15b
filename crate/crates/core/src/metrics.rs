//! Classification metrics: probability vectors, confusion matrices,
//! accuracy, and the probability-based MAE.

use serde::{Deserialize, Serialize};

use crate::data::{Label, NUM_CLASSES};
use crate::error::MetricsError;
use crate::math;

/// A binary class-probability pair ordered (Open, Closed).
///
/// Construction through [`ProbabilityVector::new`] is the validation gate:
/// entries must lie in [0,1] and sum to 1 within [`ProbabilityVector::SUM_TOLERANCE`].
/// Downstream consumers (argmax, MAE) rely on that and never re-reject.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector {
    open: f64,
    closed: f64,
}

impl ProbabilityVector {
    pub const SUM_TOLERANCE: f64 = 1e-6;

    pub fn new(open: f64, closed: f64) -> Result<ProbabilityVector, MetricsError> {
        let in_unit = |p: f64| (0.0..=1.0).contains(&p);
        if !in_unit(open) || !in_unit(closed) || math::abs(open + closed - 1.0) > Self::SUM_TOLERANCE
        {
            return Err(MetricsError::MalformedProbability { open, closed });
        }
        Ok(ProbabilityVector { open, closed })
    }

    /// The (0.5, 0.5) vector.
    pub fn uniform() -> ProbabilityVector {
        ProbabilityVector {
            open: 0.5,
            closed: 0.5,
        }
    }

    /// All mass on one label: (1,0) or (0,1).
    pub fn hard(label: Label) -> ProbabilityVector {
        match label {
            Label::Open => ProbabilityVector { open: 1.0, closed: 0.0 },
            Label::Closed => ProbabilityVector { open: 0.0, closed: 1.0 },
        }
    }

    /// Normalizes a pair of nonnegative masses with positive total.
    ///
    /// Panics in debug builds on negative or zero-total mass; callers
    /// accumulate exponentials or counts, which cannot go negative.
    pub(crate) fn normalized(open_mass: f64, closed_mass: f64) -> ProbabilityVector {
        debug_assert!(open_mass >= 0.0 && closed_mass >= 0.0);
        let total = open_mass + closed_mass;
        debug_assert!(total > 0.0);
        ProbabilityVector {
            open: open_mass / total,
            closed: closed_mass / total,
        }
    }

    pub fn open(&self) -> f64 {
        self.open
    }

    pub fn closed(&self) -> f64 {
        self.closed
    }

    pub fn get(&self, label: Label) -> f64 {
        match label {
            Label::Open => self.open,
            Label::Closed => self.closed,
        }
    }

    /// Label of the maximal entry; an exact tie resolves to Open.
    pub fn argmax(&self) -> Label {
        if self.closed > self.open {
            Label::Closed
        } else {
            Label::Open
        }
    }
}

/// 2x2 confusion counts, `counts[actual][predicted]`, both ordered
/// (Open, Closed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    counts: [[u64; NUM_CLASSES]; NUM_CLASSES],
}

impl ConfusionMatrix {
    pub fn zero() -> ConfusionMatrix {
        ConfusionMatrix::default()
    }

    pub fn from_pairs<I>(pairs: I) -> ConfusionMatrix
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let mut cm = ConfusionMatrix::zero();
        for (actual, predicted) in pairs {
            cm.record(actual, predicted);
        }
        cm
    }

    pub fn from_counts(counts: [[u64; NUM_CLASSES]; NUM_CLASSES]) -> ConfusionMatrix {
        ConfusionMatrix { counts }
    }

    pub fn record(&mut self, actual: Label, predicted: Label) {
        self.counts[actual.index()][predicted.index()] += 1;
    }

    pub fn count(&self, actual: Label, predicted: Label) -> u64 {
        self.counts[actual.index()][predicted.index()]
    }

    pub fn counts(&self) -> [[u64; NUM_CLASSES]; NUM_CLASSES] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..NUM_CLASSES).map(|i| self.counts[i][i]).sum()
    }

    /// Instances of `label` in the test data (row sum).
    pub fn actual_count(&self, label: Label) -> u64 {
        self.counts[label.index()].iter().sum()
    }

    /// Elementwise sum, for pooling per-fold matrices.
    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (row, other_row) in self.counts.iter_mut().zip(&other.counts) {
            for (cell, &v) in row.iter_mut().zip(other_row) {
                *cell += v;
            }
        }
    }

    /// trace / total.
    pub fn accuracy(&self) -> Result<f64, MetricsError> {
        let total = self.total();
        if total == 0 {
            return Err(MetricsError::EmptyInput);
        }
        Ok(self.correct() as f64 / total as f64)
    }
}

/// Mean absolute error over class probabilities:
/// MAE = (1/N) Σᵢ (1/K) Σ_c |pᵢ(c) − 1[actualᵢ = c]|, K = 2.
///
/// For hard binary predictions this equals the misclassification rate;
/// a constant (0.5, 0.5) predictor scores exactly 0.5.
pub fn mae(rows: &[(ProbabilityVector, Label)]) -> Result<f64, MetricsError> {
    if rows.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let total: f64 = rows
        .iter()
        .map(|&(p, actual)| {
            Label::ALL
                .iter()
                .map(|&c| {
                    let indicator = if actual == c { 1.0 } else { 0.0 };
                    math::abs(p.get(c) - indicator)
                })
                .sum::<f64>()
                / NUM_CLASSES as f64
        })
        .sum();
    Ok(total / rows.len() as f64)
}
