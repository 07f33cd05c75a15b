//! Linear SVM trained by the Pegasos stochastic subgradient method.
//!
//! Hinge loss with L2 regularization λ on standardized features; one
//! uniformly random instance per step, step size 1/(λ·t). Predictions are
//! hard: all mass on the sign of the margin, with a zero margin resolving
//! to Open.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label, Standardization};
use crate::error::{FitError, PredictError};
use crate::metrics::ProbabilityVector;
use crate::rng::stream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            lambda: 1e-4,
            epochs: 100,
            seed: 0,
        }
    }
}

impl SvmConfig {
    fn validate(&self) -> Result<(), FitError> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(FitError::InvalidConfig(alloc::format!(
                "lambda {} must be positive and finite",
                self.lambda
            )));
        }
        if self.epochs == 0 {
            return Err(FitError::InvalidConfig("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    weights: Vec<f64>,
    bias: f64,
    standardization: Standardization,
    config: SvmConfig,
}

/// Class sign: Open trains as +1 so a nonnegative margin argmaxes to Open.
fn sign_of(label: Label) -> f64 {
    match label {
        Label::Open => 1.0,
        Label::Closed => -1.0,
    }
}

pub fn fit(ds: &Dataset, config: SvmConfig) -> Result<SvmModel, FitError> {
    config.validate()?;
    if ds.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    let counts = ds.class_counts();
    if let Some(sole) = Label::ALL.iter().find(|l| counts[l.index()] == ds.len()) {
        return Err(FitError::SingleClass(*sole));
    }
    let standardization = Standardization::fit(ds)?;
    let rows = standardization.apply_all(ds);
    let signs: Vec<f64> = ds.instances().iter().map(|i| sign_of(i.label)).collect();

    let n = rows.len();
    let m = ds.num_attributes();
    let mut weights = vec![0.0f64; m];
    let mut bias = 0.0f64;
    let mut rng = stream(config.seed, 0);
    let mut t = 0u64;
    for _ in 0..config.epochs {
        for _ in 0..n {
            t += 1;
            let i = rng.gen_range(0..n);
            let eta = 1.0 / (config.lambda * t as f64);
            let margin = dot(&weights, &rows[i]) + bias;
            let decay = 1.0 - eta * config.lambda;
            for w in &mut weights {
                *w *= decay;
            }
            if signs[i] * margin < 1.0 {
                let scale = eta * signs[i];
                for (w, &x) in weights.iter_mut().zip(&rows[i]) {
                    *w += scale * x;
                }
                bias += scale;
            }
        }
    }
    Ok(SvmModel {
        weights,
        bias,
        standardization,
        config,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

impl SvmModel {
    /// Signed distance proxy: w·standardize(features) + b. Standardization
    /// is applied exactly once, here.
    pub fn margin(&self, features: &[f64]) -> Result<f64, PredictError> {
        if features.len() != self.weights.len() {
            return Err(PredictError::ArityMismatch {
                expected: self.weights.len(),
                found: features.len(),
            });
        }
        let z = self.standardization.apply(features);
        Ok(dot(&self.weights, &z) + self.bias)
    }

    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        let margin = self.margin(features)?;
        Ok(ProbabilityVector::hard(if margin >= 0.0 {
            Label::Open
        } else {
            Label::Closed
        }))
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn standardization(&self) -> &Standardization {
        &self.standardization
    }

    pub fn num_attributes(&self) -> usize {
        self.weights.len()
    }
}
