//! Majority-class baseline.
//!
//! Predicts a constant probability vector for every query. Two modes share
//! the model type: the standard mode emits the training class proportions;
//! the uniform mode emits (0.5, 0.5), which reproduces the degenerate
//! constant-prediction behavior of an uninformative sequence model (MAE
//! exactly 0.5) while still argmax-ing to Open.

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{FitError, PredictError};
use crate::metrics::ProbabilityVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRModel {
    majority: Label,
    output: ProbabilityVector,
    arity: usize,
}

/// Fits the proportion-emitting majority baseline. Single-class data is
/// fine; the sole class gets probability 1.
pub fn fit(ds: &Dataset) -> Result<ZeroRModel, FitError> {
    fit_mode(ds, false)
}

/// Fits the uniform-output variant: same majority label, constant
/// (0.5, 0.5) predictions.
pub fn fit_uniform(ds: &Dataset) -> Result<ZeroRModel, FitError> {
    fit_mode(ds, true)
}

fn fit_mode(ds: &Dataset, uniform: bool) -> Result<ZeroRModel, FitError> {
    if ds.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    let dist = ds.class_distribution();
    let output = if uniform {
        ProbabilityVector::uniform()
    } else {
        ProbabilityVector::new(dist.proportions[0], dist.proportions[1])
            .expect("class proportions sum to 1")
    };
    Ok(ZeroRModel {
        majority: ds.majority_label(),
        output,
        arity: ds.num_attributes(),
    })
}

impl ZeroRModel {
    pub fn majority(&self) -> Label {
        self.majority
    }

    pub fn num_attributes(&self) -> usize {
        self.arity
    }

    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        if features.len() != self.arity {
            return Err(PredictError::ArityMismatch {
                expected: self.arity,
                found: features.len(),
            });
        }
        Ok(self.output)
    }
}
