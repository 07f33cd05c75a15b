//! Stratified k-fold planning.

use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;

use crate::data::{Dataset, Label};
use crate::error::FoldError;
use crate::rng::stream;

/// One train/test split. Index lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// A stratified cross-validation plan over one dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<Fold>,
}

/// Builds a stratified k-fold plan.
///
/// Each class's members are shuffled, then dealt round-robin with a fold
/// cursor that carries over between classes. The carry-over keeps totals
/// balanced: every fold tests floor(N/k) or ceil(N/k) instances while each
/// class's per-fold count stays within 1 of its k-proportional ideal.
pub fn stratified_folds(ds: &Dataset, k: usize, seed: u64) -> Result<FoldPlan, FoldError> {
    let n = ds.len();
    if k < 2 || k > n {
        return Err(FoldError::KOutOfRange { k });
    }
    let mut members: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, inst) in ds.instances().iter().enumerate() {
        members[inst.label.index()].push(i);
    }
    for label in Label::ALL {
        let count = members[label.index()].len();
        if count > 0 && count < k {
            return Err(FoldError::ClassTooSmall { label, count, k });
        }
    }

    let mut rng = stream(seed, 0);
    let mut tests: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cursor = 0usize;
    for class in &mut members {
        class.shuffle(&mut rng);
        for &index in class.iter() {
            tests[cursor].push(index);
            cursor = (cursor + 1) % k;
        }
    }

    let mut fold_of = vec![0usize; n];
    for (f, test) in tests.iter().enumerate() {
        for &index in test {
            fold_of[index] = f;
        }
    }
    let folds = tests
        .into_iter()
        .enumerate()
        .map(|(f, mut test)| {
            test.sort_unstable();
            let train = (0..n).filter(|&i| fold_of[i] != f).collect();
            Fold { train, test }
        })
        .collect();

    Ok(FoldPlan { k, seed, folds })
}
