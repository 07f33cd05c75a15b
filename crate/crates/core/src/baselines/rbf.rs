//! RBF network: per-class k-means centers, Gaussian activations, and a
//! logistic output layer.
//!
//! Centers come from k-means (k-means++ seeding, at most 100 Lloyd
//! iterations, empty clusters reseeded at the point farthest from its
//! center) run separately on each class's standardized rows. Each center's
//! width is its cluster's RMS radius floored at 0.1. The output layer is a
//! binary logistic regression over the activations, trained by full-batch
//! gradient descent: 500 epochs, learning rate 0.01, L2 ridge on the
//! weights.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label, Standardization};
use crate::error::{FitError, PredictError};
use crate::math;
use crate::metrics::ProbabilityVector;
use crate::rng::stream;

const KMEANS_MAX_ITERS: usize = 100;
const EPOCHS: usize = 500;
const LEARNING_RATE: f64 = 0.01;
const SIGMA_MIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RbfConfig {
    pub clusters_per_class: usize,
    pub ridge: f64,
    pub seed: u64,
}

impl Default for RbfConfig {
    fn default() -> Self {
        RbfConfig {
            clusters_per_class: 2,
            ridge: 1e-8,
            seed: 0,
        }
    }
}

impl RbfConfig {
    fn validate(&self) -> Result<(), FitError> {
        if self.clusters_per_class == 0 {
            return Err(FitError::InvalidConfig(
                "clusters_per_class must be at least 1".into(),
            ));
        }
        if !(self.ridge >= 0.0 && self.ridge.is_finite()) {
            return Err(FitError::InvalidConfig(alloc::format!(
                "ridge {} must be nonnegative and finite",
                self.ridge
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Center {
    position: Vec<f64>,
    sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RbfModel {
    centers: Vec<Center>,
    weights: Vec<f64>,
    bias: f64,
    standardization: Standardization,
    config: RbfConfig,
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + math::exp(-z))
}

/// k-means++ seeding: D²-weighted draws after a uniform first pick.
fn seed_centers(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    centers.push(points[rng.gen_range(0..n)].clone());
    while centers.len() < k {
        let d2: Vec<f64> = points
            .iter()
            .map(|p| {
                centers
                    .iter()
                    .map(|c| dist_sq(p, c))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let total: f64 = d2.iter().sum();
        let index = if total > 0.0 {
            let mut r = rng.gen::<f64>() * total;
            let mut chosen = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                r -= w;
                if r <= 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        } else {
            // all points coincide with a center; any duplicate will do
            rng.gen_range(0..n)
        };
        centers.push(points[index].clone());
    }
    centers
}

/// Lloyd iterations with deterministic tie-breaking (nearest center, lowest
/// index) and farthest-point reseeding of empty clusters. Returns centers
/// and the final assignment.
fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<usize>) {
    let n = points.len();
    let dim = points[0].len();
    let mut centers = seed_centers(points, k, rng);
    let mut assignment = vec![usize::MAX; n];
    for _ in 0..KMEANS_MAX_ITERS {
        let mut next: Vec<usize> = points
            .iter()
            .map(|p| {
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for (j, c) in centers.iter().enumerate() {
                    let d = dist_sq(p, c);
                    if d < best_d {
                        best_d = d;
                        best = j;
                    }
                }
                best
            })
            .collect();

        let mut counts = vec![0usize; k];
        for &a in &next {
            counts[a] += 1;
        }
        for j in 0..k {
            if counts[j] > 0 {
                continue;
            }
            // reseed at the point farthest from its current center
            let far = (0..n)
                .filter(|&i| counts[next[i]] > 1)
                .max_by(|&a, &b| {
                    dist_sq(&points[a], &centers[next[a]])
                        .total_cmp(&dist_sq(&points[b], &centers[next[b]]))
                });
            if let Some(i) = far {
                counts[next[i]] -= 1;
                centers[j] = points[i].clone();
                next[i] = j;
                counts[j] = 1;
            }
        }

        if next == assignment {
            break;
        }
        assignment = next;
        let mut sums = vec![vec![0.0f64; dim]; k];
        for (p, &a) in points.iter().zip(&assignment) {
            for (s, &v) in sums[a].iter_mut().zip(p) {
                *s += v;
            }
        }
        for j in 0..k {
            if counts[j] > 0 {
                for (c, s) in centers[j].iter_mut().zip(&sums[j]) {
                    *c = s / counts[j] as f64;
                }
            }
        }
    }
    (centers, assignment)
}

pub fn fit(ds: &Dataset, config: RbfConfig) -> Result<RbfModel, FitError> {
    config.validate()?;
    if ds.is_empty() {
        return Err(FitError::EmptyDataset);
    }
    let counts = ds.class_counts();
    if let Some(sole) = Label::ALL.iter().find(|l| counts[l.index()] == ds.len()) {
        return Err(FitError::SingleClass(*sole));
    }
    for label in Label::ALL {
        let count = counts[label.index()];
        if count < config.clusters_per_class {
            return Err(FitError::ClassSmallerThanClusters {
                label,
                count,
                requested: config.clusters_per_class,
            });
        }
    }

    let standardization = Standardization::fit(ds)?;
    let rows = standardization.apply_all(ds);
    let mut rng = stream(config.seed, 0);

    // centers in (class order, cluster index) order: Open's clusters first
    let mut centers: Vec<Center> = Vec::with_capacity(2 * config.clusters_per_class);
    for label in Label::ALL {
        let class_rows: Vec<Vec<f64>> = rows
            .iter()
            .zip(ds.instances())
            .filter(|(_, inst)| inst.label == label)
            .map(|(r, _)| r.clone())
            .collect();
        let (positions, assignment) = kmeans(&class_rows, config.clusters_per_class, &mut rng);
        for (j, position) in positions.into_iter().enumerate() {
            let members: Vec<&Vec<f64>> = class_rows
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a == j)
                .map(|(r, _)| r)
                .collect();
            let sigma = if members.is_empty() {
                SIGMA_MIN
            } else {
                let mean_sq = members
                    .iter()
                    .map(|r| dist_sq(r, &position))
                    .sum::<f64>()
                    / members.len() as f64;
                math::sqrt(mean_sq).max(SIGMA_MIN)
            };
            centers.push(Center { position, sigma });
        }
    }

    let activations: Vec<Vec<f64>> = rows.iter().map(|r| activate(&centers, r)).collect();
    let targets: Vec<f64> = ds
        .instances()
        .iter()
        .map(|inst| inst.label.index() as f64)
        .collect();
    let (weights, bias) = train_logistic(&activations, &targets, config.ridge, EPOCHS, LEARNING_RATE);

    Ok(RbfModel {
        centers,
        weights,
        bias,
        standardization,
        config,
    })
}

fn activate(centers: &[Center], row: &[f64]) -> Vec<f64> {
    centers
        .iter()
        .map(|c| math::exp(-dist_sq(row, &c.position) / (2.0 * c.sigma * c.sigma)))
        .collect()
}

/// Full-batch gradient descent on the ridge-regularized cross-entropy of
/// sigmoid(w·phi + b) against 0/1 targets (1 = Closed).
fn train_logistic(
    activations: &[Vec<f64>],
    targets: &[f64],
    ridge: f64,
    epochs: usize,
    learning_rate: f64,
) -> (Vec<f64>, f64) {
    let n = activations.len();
    let dim = activations[0].len();
    let mut weights = vec![0.0f64; dim];
    let mut bias = 0.0f64;
    let mut grad = vec![0.0f64; dim];
    for _ in 0..epochs {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_bias = 0.0;
        for (phi, &y) in activations.iter().zip(targets) {
            let s = sigmoid(dot(&weights, phi) + bias);
            let err = s - y;
            for (g, &p) in grad.iter_mut().zip(phi) {
                *g += err * p;
            }
            grad_bias += err;
        }
        let inv_n = 1.0 / n as f64;
        for (w, &g) in weights.iter_mut().zip(&grad) {
            *w -= learning_rate * (g * inv_n + ridge * *w);
        }
        bias -= learning_rate * grad_bias * inv_n;
    }
    (weights, bias)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

impl RbfModel {
    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        let expected = self.standardization.num_attributes();
        if features.len() != expected {
            return Err(PredictError::ArityMismatch {
                expected,
                found: features.len(),
            });
        }
        let row = self.standardization.apply(features);
        let phi = activate(&self.centers, &row);
        let closed = sigmoid(dot(&self.weights, &phi) + self.bias);
        Ok(ProbabilityVector::new(1.0 - closed, closed)
            .expect("sigmoid output pair is a probability vector"))
    }

    pub fn centers(&self) -> &[Center] {
        &self.centers
    }

    pub fn num_attributes(&self) -> usize {
        self.standardization.num_attributes()
    }
}

impl Center {
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn position(&self) -> &[f64] {
        &self.position
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{stratified_folds, Instance};
    use alloc::string::String;

    fn blobs(per_class: usize, spread: f64) -> Dataset {
        let mut rng = stream(41, 0);
        let mut instances = Vec::new();
        for _ in 0..per_class {
            instances.push(Instance::new(
                vec![
                    rng.gen_range(-spread..spread) - 5.0,
                    rng.gen_range(-spread..spread) - 5.0,
                ],
                Label::Open,
            ));
        }
        for _ in 0..per_class {
            instances.push(Instance::new(
                vec![
                    rng.gen_range(-spread..spread) + 5.0,
                    rng.gen_range(-spread..spread) + 5.0,
                ],
                Label::Closed,
            ));
        }
        Dataset::new(vec![String::from("x"), String::from("y")], instances).unwrap()
    }

    #[test]
    fn separated_blobs_cross_validate_above_95() {
        let ds = blobs(50, 1.0);
        let plan = stratified_folds(&ds, 5, 3).unwrap();
        let mut correct = 0usize;
        let mut total = 0usize;
        for fold in &plan.folds {
            let train = ds.subset(&fold.train);
            let model = fit(&train, RbfConfig { seed: 5, ..RbfConfig::default() }).unwrap();
            for &i in &fold.test {
                let inst = &ds.instances()[i];
                if model.predict(&inst.features).unwrap().argmax() == inst.label {
                    correct += 1;
                }
                total += 1;
            }
        }
        let accuracy = correct as f64 / total as f64;
        assert!(accuracy >= 0.95, "CV accuracy {accuracy}");
    }

    #[test]
    fn probabilities_sum_to_one() {
        let ds = blobs(20, 2.0);
        let model = fit(&ds, RbfConfig::default()).unwrap();
        let mut rng = stream(42, 0);
        for _ in 0..40 {
            let q = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
            let p = model.predict(&q).unwrap();
            assert!((p.open() + p.closed() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sigma_respects_floor() {
        // tight duplicate clusters force zero RMS radius
        let ds = Dataset::new(
            vec![String::from("a")],
            vec![
                Instance::new(vec![0.0], Label::Open),
                Instance::new(vec![0.0], Label::Open),
                Instance::new(vec![1.0], Label::Closed),
                Instance::new(vec![1.0], Label::Closed),
            ],
        )
        .unwrap();
        let model = fit(&ds, RbfConfig { clusters_per_class: 1, ..RbfConfig::default() }).unwrap();
        for center in model.centers() {
            assert!(center.sigma() >= SIGMA_MIN);
        }
        assert_eq!(model.centers().len(), 2);
    }

    #[test]
    fn center_count_is_classes_times_clusters() {
        let ds = blobs(10, 1.0);
        let model = fit(&ds, RbfConfig::default()).unwrap();
        assert_eq!(model.centers().len(), 4);
        for center in model.centers() {
            assert_eq!(center.position().len(), 2);
        }
    }

    #[test]
    fn training_is_deterministic() {
        let ds = blobs(15, 1.5);
        let a = fit(&ds, RbfConfig { seed: 11, ..RbfConfig::default() }).unwrap();
        let b = fit(&ds, RbfConfig { seed: 11, ..RbfConfig::default() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn logistic_loss_decreases_monotonically() {
        let ds = blobs(10, 2.0);
        let standardization = Standardization::fit(&ds).unwrap();
        let rows = standardization.apply_all(&ds);
        let mut rng = stream(43, 0);
        let (centers_pos, _) = kmeans(&rows, 3, &mut rng);
        let centers: Vec<Center> = centers_pos
            .into_iter()
            .map(|position| Center { position, sigma: 1.0 })
            .collect();
        let activations: Vec<Vec<f64>> = rows.iter().map(|r| activate(&centers, r)).collect();
        let targets: Vec<f64> = ds
            .instances()
            .iter()
            .map(|i| i.label.index() as f64)
            .collect();

        let ridge = 1e-6;
        let lr = 1e-3;
        let loss = |w: &[f64], b: f64| -> f64 {
            let mut l = 0.0;
            for (phi, &y) in activations.iter().zip(&targets) {
                let s = sigmoid(dot(w, phi) + b);
                l -= y * math::ln(s) + (1.0 - y) * math::ln(1.0 - s);
            }
            l / activations.len() as f64 + 0.5 * ridge * w.iter().map(|x| x * x).sum::<f64>()
        };

        let mut prev = loss(&vec![0.0; centers.len()], 0.0);
        for epochs in 1..=100 {
            let (w, b) = train_logistic(&activations, &targets, ridge, epochs, lr);
            let cur = loss(&w, b);
            assert!(cur <= prev + 1e-9, "loss rose at epoch {epochs}: {prev} -> {cur}");
            prev = cur;
        }
    }

    #[test]
    fn kmeans_survives_identical_points() {
        let points = vec![vec![1.0, 1.0]; 6];
        let mut rng = stream(44, 0);
        let (centers, assignment) = kmeans(&points, 2, &mut rng);
        assert_eq!(centers.len(), 2);
        assert_eq!(assignment.len(), 6);
        // degenerate data must still produce a usable fitted model
        let ds = Dataset::new(
            vec![String::from("a")],
            vec![
                Instance::new(vec![2.0], Label::Open),
                Instance::new(vec![2.0], Label::Open),
                Instance::new(vec![2.0], Label::Closed),
                Instance::new(vec![2.0], Label::Closed),
            ],
        )
        .unwrap();
        let model = fit(&ds, RbfConfig { ..RbfConfig::default() }).unwrap();
        let p = model.predict(&[2.0]).unwrap();
        assert!((p.open() + p.closed() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn errors_on_degenerate_configurations() {
        let ds = blobs(5, 1.0);
        assert!(matches!(
            fit(&ds, RbfConfig { clusters_per_class: 0, ..RbfConfig::default() }),
            Err(FitError::InvalidConfig(_))
        ));
        assert_eq!(
            fit(&ds, RbfConfig { clusters_per_class: 6, ..RbfConfig::default() }).unwrap_err(),
            FitError::ClassSmallerThanClusters {
                label: Label::Open,
                count: 5,
                requested: 6
            }
        );
        let empty = Dataset::new(vec![String::from("a")], vec![]).unwrap();
        assert_eq!(fit(&empty, RbfConfig::default()).unwrap_err(), FitError::EmptyDataset);

        let single = Dataset::new(
            vec![String::from("a")],
            vec![
                Instance::new(vec![0.0], Label::Open),
                Instance::new(vec![1.0], Label::Open),
            ],
        )
        .unwrap();
        assert_eq!(
            fit(&single, RbfConfig::default()).unwrap_err(),
            FitError::SingleClass(Label::Open)
        );
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let ds = blobs(5, 1.0);
        let model = fit(&ds, RbfConfig { clusters_per_class: 2, ..RbfConfig::default() }).unwrap();
        assert!(matches!(
            model.predict(&[1.0]),
            Err(PredictError::ArityMismatch { expected: 2, found: 1 })
        ));
    }
}
