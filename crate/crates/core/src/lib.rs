//! Classifiers and evaluation primitives for EEG eye-state detection.
//!
//! The crate implements six binary classifiers behind one prediction
//! contract — majority-class (ZeroR), linear SVM, an RBF network, the
//! instance-based K* classifier, a random forest, and an
//! average-of-probabilities voting ensemble — together with the data
//! handling they need: ARFF/CSV parsing, stratified fold planning, an
//! IQR outlier filter, feature standardization, and classification
//! metrics (accuracy, MAE, confusion matrices).
//!
//! Everything is deterministic. Models are fitted from a [`Dataset`] and
//! an explicit 64-bit seed; randomized components draw from per-component
//! ChaCha8 streams derived in [`rng`], so results do not depend on thread
//! scheduling. Prediction is pure and reentrant.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature only switches float math from `libm` to the platform intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod baselines;
pub mod data;
pub mod ensemble;
pub mod error;
pub mod forest;
pub mod kstar;
pub mod metrics;
pub mod model;
pub mod rng;

mod math;

pub use data::{Dataset, Instance, Label};
pub use error::{DataError, FitError, FoldError, MetricsError, ParseError, PredictError};
pub use metrics::{ConfusionMatrix, ProbabilityVector};
pub use model::{Classifier, ModelConfig, TrainedModel};
