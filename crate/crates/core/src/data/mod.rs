//! Datasets, file formats, fold plans, and preprocessing.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::DataError;

pub mod arff;
pub mod csv;
pub mod folds;
pub mod outliers;
pub mod standardize;

pub use folds::{stratified_folds, FoldPlan};
pub use outliers::{detect_outliers, OutlierPolicy};
pub use standardize::Standardization;

/// Number of classes in the eye-state problem.
pub const NUM_CLASSES: usize = 2;

/// Eye-state class label.
///
/// The numeric mapping (Open=0, Closed=1) follows the corpus encoding and is
/// load-bearing: probability vectors are ordered (Open, Closed) and argmax
/// ties resolve toward the lower index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Open = 0,
    Closed = 1,
}

impl Label {
    pub const ALL: [Label; NUM_CLASSES] = [Label::Open, Label::Closed];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Label> {
        match index {
            0 => Some(Label::Open),
            1 => Some(Label::Closed),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Open => "Open",
            Label::Closed => "Closed",
        }
    }
}

/// A single labelled observation: one row of the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub features: Vec<f64>,
    pub label: Label,
}

impl Instance {
    pub fn new(features: Vec<f64>, label: Label) -> Instance {
        Instance { features, label }
    }
}

/// Per-class counts and proportions, ordered (Open, Closed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassDistribution {
    pub counts: [usize; NUM_CLASSES],
    pub proportions: [f64; NUM_CLASSES],
}

/// An immutable labelled dataset.
///
/// Constructed through [`Dataset::new`], which enforces uniform arity and
/// finiteness; all downstream code relies on those invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    attribute_names: Vec<String>,
    instances: Vec<Instance>,
    class_counts: [usize; NUM_CLASSES],
}

impl Dataset {
    /// Builds a dataset, validating that every instance has one feature per
    /// attribute name and that all features are finite.
    pub fn new(attribute_names: Vec<String>, instances: Vec<Instance>) -> Result<Dataset, DataError> {
        let arity = attribute_names.len();
        let mut class_counts = [0usize; NUM_CLASSES];
        for (index, inst) in instances.iter().enumerate() {
            if inst.features.len() != arity {
                return Err(DataError::ArityMismatch {
                    index,
                    expected: arity,
                    found: inst.features.len(),
                });
            }
            for (attribute, &v) in inst.features.iter().enumerate() {
                if !v.is_finite() {
                    return Err(DataError::NonFinite { index, attribute });
                }
            }
            class_counts[inst.label.index()] += 1;
        }
        Ok(Dataset {
            attribute_names,
            instances,
            class_counts,
        })
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    /// Number of features per instance.
    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn class_counts(&self) -> [usize; NUM_CLASSES] {
        self.class_counts
    }

    /// Counts and proportions per class. Proportions are 0 on an empty
    /// dataset rather than NaN.
    pub fn class_distribution(&self) -> ClassDistribution {
        let n = self.len();
        let mut proportions = [0.0; NUM_CLASSES];
        if n > 0 {
            for (p, &c) in proportions.iter_mut().zip(self.class_counts.iter()) {
                *p = c as f64 / n as f64;
            }
        }
        ClassDistribution {
            counts: self.class_counts,
            proportions,
        }
    }

    /// Majority class; ties resolve toward Open (lower index).
    pub fn majority_label(&self) -> Label {
        if self.class_counts[Label::Closed.index()] > self.class_counts[Label::Open.index()] {
            Label::Closed
        } else {
            Label::Open
        }
    }

    /// New dataset holding clones of the rows at `indices`, in `indices` order.
    ///
    /// Panics if an index is out of bounds; callers pass indices produced by
    /// fold plans or outlier scans over this same dataset.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let instances: Vec<Instance> = indices.iter().map(|&i| self.instances[i].clone()).collect();
        let mut class_counts = [0usize; NUM_CLASSES];
        for inst in &instances {
            class_counts[inst.label.index()] += 1;
        }
        Dataset {
            attribute_names: self.attribute_names.clone(),
            instances,
            class_counts,
        }
    }

    /// New dataset with the rows at `excluded` removed. `excluded` must be
    /// sorted ascending.
    pub fn without(&self, excluded: &[usize]) -> Dataset {
        let mut keep = Vec::with_capacity(self.len().saturating_sub(excluded.len()));
        let mut skip = excluded.iter().copied().peekable();
        for i in 0..self.len() {
            if skip.peek() == Some(&i) {
                skip.next();
            } else {
                keep.push(i);
            }
        }
        self.subset(&keep)
    }

    /// All values of attribute `j`, in instance order.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.instances.iter().map(|inst| inst.features[j]).collect()
    }

    /// Content digest: FNV-1a 64 over each instance's feature bits
    /// (little-endian `f64::to_bits`) followed by its label byte.
    ///
    /// Identifies the exact numeric content independent of source format, so
    /// a model file can detect being applied to a different corpus.
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut hash = OFFSET;
        let mut eat = |byte: u8| {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(PRIME);
        };
        for inst in &self.instances {
            for &v in &inst.features {
                for byte in v.to_bits().to_le_bytes() {
                    eat(byte);
                }
            }
            eat(inst.label.index() as u8);
        }
        hash
    }
}
