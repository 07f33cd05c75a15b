//! Random forest: bagged, feature-subsampled decision trees with
//! probability averaging.
//!
//! Tree i draws everything it needs from its own RNG stream derived from
//! (seed, i): first the size-N bootstrap sample, then the per-node feature
//! subsets in preorder (node, left subtree, right subtree). Fixing the draw
//! order makes training schedule-independent and lets tests replay exact
//! transcripts.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label, NUM_CLASSES};
use crate::error::{FitError, PredictError};
use crate::math;
use crate::metrics::ProbabilityVector;
use crate::rng::{sample_indices, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub n_trees: usize,
    /// Attributes examined per node; `None` means floor(log2 M) + 1.
    pub feature_subset_size: Option<usize>,
    pub min_leaf: usize,
    /// `None` means unlimited.
    pub max_depth: Option<usize>,
    pub seed: u64,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            n_trees: 180,
            feature_subset_size: None,
            min_leaf: 1,
            max_depth: None,
            seed: 0,
        }
    }
}

impl ForestConfig {
    fn validate(&self, num_attributes: usize) -> Result<(), FitError> {
        if self.n_trees == 0 {
            return Err(FitError::InvalidConfig("forest needs at least one tree".into()));
        }
        if self.min_leaf == 0 {
            return Err(FitError::InvalidConfig("min_leaf must be at least 1".into()));
        }
        if let Some(k) = self.feature_subset_size {
            if k == 0 || k > num_attributes {
                return Err(FitError::InvalidConfig(alloc::format!(
                    "feature subset size {k} outside [1, {num_attributes}]"
                )));
            }
        }
        Ok(())
    }

    fn resolved_subset_size(&self, num_attributes: usize) -> usize {
        match self.feature_subset_size {
            Some(k) => k,
            None => ((num_attributes as u32).ilog2() as usize + 1).min(num_attributes),
        }
    }
}

/// One tree node in the arena; children are arena indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        attribute: u32,
        threshold: f64,
        left: u32,
        right: u32,
    },
    Leaf {
        counts: [u64; NUM_CLASSES],
    },
}

/// A decision tree stored as a flat arena, root at index 0. The flat layout
/// keeps prediction allocation-free and serialization non-recursive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    arity: usize,
    nodes: Vec<TreeNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    trees: Vec<Tree>,
    config: ForestConfig,
    num_attributes: usize,
    num_training: usize,
}

#[derive(Clone, Copy)]
struct SplitChoice {
    attribute: usize,
    threshold: f64,
    gain: f64,
}

fn class_counts(ds: &Dataset, sample: &[usize]) -> [u64; NUM_CLASSES] {
    let mut counts = [0u64; NUM_CLASSES];
    for &i in sample {
        counts[ds.instances()[i].label.index()] += 1;
    }
    counts
}

/// Shannon entropy in nats; the base only scales gains, never their order.
fn entropy(counts: [u64; NUM_CLASSES], total: u64) -> f64 {
    let mut h = 0.0;
    for &c in &counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * math::ln(p);
        }
    }
    h
}

/// Information gain of splitting `total_counts` into `left` and the
/// remainder.
fn gain(
    total_counts: [u64; NUM_CLASSES],
    left: [u64; NUM_CLASSES],
    parent_entropy: f64,
) -> f64 {
    let right = [total_counts[0] - left[0], total_counts[1] - left[1]];
    let n = (total_counts[0] + total_counts[1]) as f64;
    let n_left = (left[0] + left[1]) as f64;
    let n_right = n - n_left;
    parent_entropy
        - (n_left / n) * entropy(left, n_left as u64)
        - (n_right / n) * entropy(right, n_right as u64)
}

/// Best (attribute, threshold) over the candidate attributes, or `None`
/// when no threshold clears gain 0 (e.g. all candidate values constant).
///
/// Thresholds are midpoints between consecutive distinct sorted values;
/// when a midpoint rounds onto the lower value it snaps to the upper so
/// that routing `feature < threshold` reproduces the counted partition.
/// Gain ties break toward the lower attribute index, then lower threshold.
fn best_split(
    ds: &Dataset,
    sample: &[usize],
    candidates: &[usize],
    total_counts: [u64; NUM_CLASSES],
    min_leaf: usize,
) -> Option<SplitChoice> {
    let n = sample.len();
    let parent_entropy = entropy(total_counts, n as u64);
    let mut best: Option<SplitChoice> = None;
    let mut pairs: Vec<(f64, Label)> = Vec::with_capacity(n);
    for &attribute in candidates {
        pairs.clear();
        pairs.extend(sample.iter().map(|&i| {
            let inst = &ds.instances()[i];
            (inst.features[attribute], inst.label)
        }));
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

        let mut left = [0u64; NUM_CLASSES];
        for i in 1..n {
            left[pairs[i - 1].1.index()] += 1;
            let (prev, cur) = (pairs[i - 1].0, pairs[i].0);
            if prev == cur {
                continue;
            }
            if i < min_leaf || n - i < min_leaf {
                continue;
            }
            let mut threshold = 0.5 * (prev + cur);
            if threshold <= prev {
                threshold = cur;
            }
            let g = gain(total_counts, left, parent_entropy);
            if g <= 0.0 {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    g > b.gain
                        || (g == b.gain
                            && (attribute < b.attribute
                                || (attribute == b.attribute && threshold < b.threshold)))
                }
            };
            if better {
                best = Some(SplitChoice {
                    attribute,
                    threshold,
                    gain: g,
                });
            }
        }
    }
    best
}

/// Trains one tree on `sample` (a multiset of instance indices).
///
/// Nodes are produced in preorder and feature subsets are drawn from `rng`
/// in that same order. Stops at purity, depth, size < 2·min_leaf, or no
/// positive-gain split among the drawn candidates.
pub fn tree_fit<R: Rng + ?Sized>(
    ds: &Dataset,
    sample: &[usize],
    rng: &mut R,
    config: &ForestConfig,
) -> Tree {
    assert!(!sample.is_empty(), "tree sample must be non-empty");
    let num_attributes = ds.num_attributes();
    let subset_size = config.resolved_subset_size(num_attributes);

    struct Work {
        slot: usize,
        sample: Vec<usize>,
        depth: usize,
    }

    let mut nodes = vec![TreeNode::Leaf { counts: [0, 0] }];
    let mut stack = vec![Work {
        slot: 0,
        sample: sample.to_vec(),
        depth: 0,
    }];
    while let Some(Work { slot, sample, depth }) = stack.pop() {
        let counts = class_counts(ds, &sample);
        let n = sample.len();
        let pure = counts.iter().any(|&c| c == n as u64);
        let too_deep = config.max_depth.is_some_and(|d| depth >= d);
        let choice = if pure || too_deep || n < 2 * config.min_leaf {
            None
        } else {
            let candidates = sample_indices(rng, num_attributes, subset_size);
            best_split(ds, &sample, &candidates, counts, config.min_leaf)
        };
        match choice {
            None => nodes[slot] = TreeNode::Leaf { counts },
            Some(c) => {
                debug_assert!(c.gain > 0.0);
                let (left_sample, right_sample): (Vec<usize>, Vec<usize>) = sample
                    .iter()
                    .partition(|&&i| ds.instances()[i].features[c.attribute] < c.threshold);
                debug_assert!(!left_sample.is_empty() && !right_sample.is_empty());
                let left = nodes.len();
                nodes.push(TreeNode::Leaf { counts: [0, 0] });
                let right = nodes.len();
                nodes.push(TreeNode::Leaf { counts: [0, 0] });
                nodes[slot] = TreeNode::Split {
                    attribute: c.attribute as u32,
                    threshold: c.threshold,
                    left: left as u32,
                    right: right as u32,
                };
                // push right first so the left subtree is built next,
                // keeping RNG draws in preorder
                stack.push(Work {
                    slot: right,
                    sample: right_sample,
                    depth: depth + 1,
                });
                stack.push(Work {
                    slot: left,
                    sample: left_sample,
                    depth: depth + 1,
                });
            }
        }
    }
    Tree {
        arity: num_attributes,
        nodes,
    }
}

impl Tree {
    /// Routes to a leaf and returns its Laplace-smoothed distribution
    /// (countᵢ + 1) / (total + 2).
    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        if features.len() != self.arity {
            return Err(PredictError::ArityMismatch {
                expected: self.arity,
                found: features.len(),
            });
        }
        let mut index = 0usize;
        loop {
            match &self.nodes[index] {
                TreeNode::Split {
                    attribute,
                    threshold,
                    left,
                    right,
                } => {
                    index = if features[*attribute as usize] < *threshold {
                        *left as usize
                    } else {
                        *right as usize
                    };
                }
                TreeNode::Leaf { counts } => {
                    return Ok(ProbabilityVector::normalized(
                        (counts[0] + 1) as f64,
                        (counts[1] + 1) as f64,
                    ));
                }
            }
        }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }
}

/// Size-N bootstrap sample (with replacement), the first draws of a tree's
/// stream.
fn bootstrap_sample<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// Trains the forest. Tree i derives its stream from (config.seed, i), so
/// the result is identical whether trees are built sequentially or in
/// parallel (`rayon` feature).
///
/// A single-class dataset is accepted: every tree degenerates to one pure
/// leaf and predictions argmax to that class.
pub fn fit(ds: &Dataset, config: ForestConfig) -> Result<ForestModel, FitError> {
    config.validate(ds.num_attributes())?;
    if ds.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    let n = ds.len();
    let train_one = |i: usize| {
        let mut rng = stream(config.seed, i as u64);
        let sample = bootstrap_sample(&mut rng, n);
        tree_fit(ds, &sample, &mut rng, &config)
    };

    #[cfg(feature = "rayon")]
    let trees: Vec<Tree> = {
        use rayon::prelude::*;
        (0..config.n_trees).into_par_iter().map(train_one).collect()
    };
    #[cfg(not(feature = "rayon"))]
    let trees: Vec<Tree> = (0..config.n_trees).map(train_one).collect();

    Ok(ForestModel {
        trees,
        config,
        num_attributes: ds.num_attributes(),
        num_training: n,
    })
}

impl ForestModel {
    /// Arithmetic mean of the tree probability vectors, accumulated
    /// left-to-right. The division result is clamped to the unit interval
    /// to absorb last-ulp accumulation drift.
    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        if features.len() != self.num_attributes {
            return Err(PredictError::ArityMismatch {
                expected: self.num_attributes,
                found: features.len(),
            });
        }
        let mut sum_open = 0.0;
        let mut sum_closed = 0.0;
        for tree in &self.trees {
            let p = tree.predict(features)?;
            sum_open += p.open();
            sum_closed += p.closed();
        }
        let t = self.trees.len() as f64;
        Ok(ProbabilityVector::new(
            (sum_open / t).clamp(0.0, 1.0),
            (sum_closed / t).clamp(0.0, 1.0),
        )
        .expect("mean of probability vectors stays on the simplex"))
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn config(&self) -> &ForestConfig {
        &self.config
    }

    pub fn num_attributes(&self) -> usize {
        self.num_attributes
    }

    pub fn num_training(&self) -> usize {
        self.num_training
    }
}
