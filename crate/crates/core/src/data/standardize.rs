//! Per-attribute feature standardization for margin-based models.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::FitError;
use crate::math;

/// Affine transform (v − mean) / stddev per attribute, fitted on training
/// data only. Stddev is population (divide by N) and floored at 1e-6 so a
/// constant column maps to 0 instead of dividing by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    means: Vec<f64>,
    stddevs: Vec<f64>,
}

const STDDEV_FLOOR: f64 = 1e-6;

impl Standardization {
    pub fn fit(ds: &Dataset) -> Result<Standardization, FitError> {
        if ds.is_empty() {
            return Err(FitError::EmptyDataset);
        }
        let n = ds.len() as f64;
        let m = ds.num_attributes();
        let mut means = Vec::with_capacity(m);
        let mut stddevs = Vec::with_capacity(m);
        for j in 0..m {
            let column = ds.column(j);
            let mean = column.iter().sum::<f64>() / n;
            let var = column.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            means.push(mean);
            stddevs.push(math::sqrt(var).max(STDDEV_FLOOR));
        }
        Ok(Standardization { means, stddevs })
    }

    pub fn num_attributes(&self) -> usize {
        self.means.len()
    }

    pub fn apply(&self, features: &[f64]) -> Vec<f64> {
        assert_eq!(features.len(), self.means.len());
        features
            .iter()
            .zip(self.means.iter().zip(&self.stddevs))
            .map(|(&v, (&mean, &sd))| (v - mean) / sd)
            .collect()
    }

    /// Standardizes every instance of a dataset into a dense row list.
    pub fn apply_all(&self, ds: &Dataset) -> Vec<Vec<f64>> {
        ds.instances()
            .iter()
            .map(|inst| self.apply(&inst.features))
            .collect()
    }
}
