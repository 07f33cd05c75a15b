//! Cross-validation engine and comparison tables.
//!
//! Fold plans come from the core stratifier seeded with the run seed; the
//! model trained for fold f is reseeded with `mix64(seed, f + 1)` (stream 0
//! belongs to the fold shuffle), so a run is fully determined by
//! (spec, dataset, k, seed) at any thread count.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use eyestate_core::data::{stratified_folds, Dataset};
use eyestate_core::metrics::{mae, ConfusionMatrix, ProbabilityVector};
use eyestate_core::model::{Classifier, ModelConfig};
use eyestate_core::rng::mix64;
use eyestate_core::Label;

#[derive(Debug)]
pub enum EvalError {
    Folds(eyestate_core::FoldError),
    Fit { fold: usize, source: eyestate_core::FitError },
    Predict { fold: usize, source: eyestate_core::PredictError },
    /// A result violated an internal accounting invariant; never expected.
    Invariant(String),
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Folds(e) => write!(f, "fold construction: {e}"),
            EvalError::Fit { fold, source } => write!(f, "fold {fold}: fit failed: {source}"),
            EvalError::Predict { fold, source } => {
                write!(f, "fold {fold}: prediction failed: {source}")
            }
            EvalError::Invariant(message) => write!(f, "internal invariant violated: {message}"),
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Debug, Clone, Serialize)]
pub struct FoldOutcome {
    pub accuracy: f64,
    pub mae: f64,
    pub confusion: ConfusionMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub spec: String,
    pub n: usize,
    pub dataset_digest: String,
    pub seed: u64,
    pub folds: usize,
    pub accuracy: f64,
    pub mae: f64,
    pub confusion: ConfusionMatrix,
    pub per_fold: Vec<FoldOutcome>,
    pub fit_seconds: f64,
    pub predict_seconds: f64,
}

pub fn cross_validate(
    spec_text: &str,
    config: &ModelConfig,
    ds: &Dataset,
    k: usize,
    seed: u64,
) -> Result<EvalReport, EvalError> {
    let plan = stratified_folds(ds, k, seed).map_err(EvalError::Folds)?;
    let mut pooled: Vec<(ProbabilityVector, Label)> = Vec::with_capacity(ds.len());
    let mut pooled_confusion = ConfusionMatrix::zero();
    let mut per_fold = Vec::with_capacity(k);
    let mut fit_seconds = 0.0;
    let mut predict_seconds = 0.0;

    for (fold_index, fold) in plan.folds.iter().enumerate() {
        let train = ds.subset(&fold.train);
        let started = Instant::now();
        let model = config
            .with_seed(mix64(seed, fold_index as u64 + 1))
            .fit(&train)
            .map_err(|source| EvalError::Fit { fold: fold_index, source })?;
        fit_seconds += started.elapsed().as_secs_f64();

        let started = Instant::now();
        let outputs: Vec<Result<ProbabilityVector, _>> = fold
            .test
            .par_iter()
            .map(|&i| model.predict(&ds.instances()[i].features))
            .collect();
        predict_seconds += started.elapsed().as_secs_f64();

        let mut fold_rows = Vec::with_capacity(fold.test.len());
        let mut fold_confusion = ConfusionMatrix::zero();
        for (&i, output) in fold.test.iter().zip(outputs) {
            let p = output.map_err(|source| EvalError::Predict { fold: fold_index, source })?;
            let actual = ds.instances()[i].label;
            fold_confusion.record(actual, p.argmax());
            fold_rows.push((p, actual));
        }
        let fold_mae = mae(&fold_rows)
            .map_err(|e| EvalError::Invariant(format!("fold {fold_index} metrics: {e}")))?;
        let fold_accuracy = fold_confusion
            .accuracy()
            .map_err(|e| EvalError::Invariant(format!("fold {fold_index} metrics: {e}")))?;
        per_fold.push(FoldOutcome {
            accuracy: fold_accuracy,
            mae: fold_mae,
            confusion: fold_confusion,
        });
        pooled_confusion.merge(&fold_confusion);
        pooled.extend(fold_rows);
    }

    // pooled counts must re-derive from scratch; anything else means the
    // accounting above lost a row
    if pooled_confusion.total() != ds.len() as u64 {
        return Err(EvalError::Invariant(format!(
            "pooled confusion covers {} of {} instances",
            pooled_confusion.total(),
            ds.len()
        )));
    }
    let accuracy = pooled_confusion
        .accuracy()
        .map_err(|e| EvalError::Invariant(format!("pooled metrics: {e}")))?;
    let pooled_mae =
        mae(&pooled).map_err(|e| EvalError::Invariant(format!("pooled metrics: {e}")))?;

    Ok(EvalReport {
        spec: spec_text.to_string(),
        n: ds.len(),
        dataset_digest: format!("{:016x}", ds.digest()),
        seed,
        folds: k,
        accuracy,
        mae: pooled_mae,
        confusion: pooled_confusion,
        per_fold,
        fit_seconds,
        predict_seconds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub spec: String,
    pub accuracy_pct: f64,
    pub mae: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonTable {
    pub dataset_digest: String,
    pub rows: Vec<ComparisonRow>,
    /// index of the maximum-accuracy row
    pub best: usize,
}

pub fn compare_report(reports: &[EvalReport]) -> Result<ComparisonTable, EvalError> {
    let digest = match reports.first() {
        None => return Err(EvalError::Invariant("no reports to compare".to_string())),
        Some(first) => first.dataset_digest.clone(),
    };
    for report in reports {
        if report.dataset_digest != digest {
            return Err(EvalError::Invariant(format!(
                "dataset digest mismatch: {} vs {}",
                report.dataset_digest, digest
            )));
        }
    }
    let rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|r| ComparisonRow {
            spec: r.spec.clone(),
            accuracy_pct: r.accuracy * 100.0,
            mae: r.mae,
        })
        .collect();
    let best = rows
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.accuracy_pct.total_cmp(&b.accuracy_pct))
        .map(|(i, _)| i)
        .unwrap_or(0);
    Ok(ComparisonTable {
        dataset_digest: digest,
        rows,
        best,
    })
}
