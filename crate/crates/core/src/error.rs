//! Error types shared across the crate.

use alloc::string::String;
use thiserror::Error;

use crate::data::Label;

/// Failure while parsing an ARFF or CSV document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number in the input text.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed declaration: {0}")]
    MalformedDeclaration(String),
    #[error("expected {expected} values, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("non-numeric feature token `{0}`")]
    NonNumericToken(String),
    #[error("non-finite feature value `{0}`")]
    NonFiniteValue(String),
    #[error("unknown class token `{0}`")]
    UnknownClassToken(String),
    #[error("missing values (`?`) are not supported")]
    MissingValue,
    #[error("missing @data section")]
    MissingDataSection,
    #[error("unterminated quoted field")]
    UnterminatedQuote,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

/// Failure while constructing a [`Dataset`](crate::data::Dataset) in memory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("instance {index} has {found} features, dataset declares {expected}")]
    ArityMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("instance {index}, attribute {attribute}: non-finite feature value")]
    NonFinite { index: usize, attribute: usize },
}

/// Failure while building a stratified fold plan.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("fold count {k} out of range (need 2 <= k <= n)")]
    KOutOfRange { k: usize },
    #[error("class {label:?} has {count} members, fewer than {k} folds")]
    ClassTooSmall { label: Label, count: usize, k: usize },
}

/// Failure while fitting a classifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("cannot fit on an empty dataset")]
    EmptyDataset,
    #[error("training data contains a single class ({0:?})")]
    SingleClass(Label),
    #[error("class {label:?} has {count} members, fewer than {requested} requested clusters")]
    ClassSmallerThanClusters {
        label: Label,
        count: usize,
        requested: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Failure while predicting with a fitted classifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredictError {
    #[error("query has {found} features, model was trained on {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

/// Failure in a metric computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("metric is undefined on empty input")]
    EmptyInput,
    #[error("malformed probability vector ({open}, {closed})")]
    MalformedProbability { open: f64, closed: f64 },
}
