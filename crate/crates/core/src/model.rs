//! Uniform handle over every classifier in the crate: a config enum that
//! fits into a trained enum, both serializable so a trained model can be
//! frozen to disk and reloaded.

use serde::{Deserialize, Serialize};

use crate::baselines::{RbfConfig, RbfModel, SvmConfig, SvmModel, ZeroRModel};
use crate::data::Dataset;
use crate::ensemble::{self, VoteConfig, VoteModel};
use crate::error::{FitError, PredictError};
use crate::forest::{ForestConfig, ForestModel};
use crate::kstar::{KStarConfig, KStarModel};
use crate::metrics::ProbabilityVector;

pub trait Classifier {
    fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelConfig {
    ZeroR,
    /// ZeroR in uniform-probability mode: constant (0.5, 0.5) output, so the
    /// classification MAE is exactly 0.5 while argmax still lands on the
    /// majority tie-break. Stands in for an uninformative sequence model.
    HmmStandin,
    Svm(SvmConfig),
    Rbf(RbfConfig),
    KStar(KStarConfig),
    Forest(ForestConfig),
    Vote(VoteConfig),
}

impl ModelConfig {
    pub fn fit(&self, ds: &Dataset) -> Result<TrainedModel, FitError> {
        Ok(match self {
            ModelConfig::ZeroR => TrainedModel::ZeroR(crate::baselines::zeror::fit(ds)?),
            ModelConfig::HmmStandin => {
                TrainedModel::HmmStandin(crate::baselines::zeror::fit_uniform(ds)?)
            }
            ModelConfig::Svm(config) => TrainedModel::Svm(crate::baselines::svm::fit(ds, *config)?),
            ModelConfig::Rbf(config) => TrainedModel::Rbf(crate::baselines::rbf::fit(ds, *config)?),
            ModelConfig::KStar(config) => TrainedModel::KStar(crate::kstar::fit(ds, *config)?),
            ModelConfig::Forest(config) => {
                TrainedModel::Forest(crate::forest::fit(ds, config.clone())?)
            }
            ModelConfig::Vote(config) => TrainedModel::Vote(ensemble::fit(ds, config)?),
        })
    }

    /// Same configuration with its RNG seed replaced. Seedless models are
    /// returned unchanged; a vote keeps its member list and reseeds members
    /// at fit time from the new ensemble seed.
    pub fn with_seed(&self, seed: u64) -> ModelConfig {
        match self {
            ModelConfig::ZeroR => ModelConfig::ZeroR,
            ModelConfig::HmmStandin => ModelConfig::HmmStandin,
            ModelConfig::KStar(config) => ModelConfig::KStar(*config),
            ModelConfig::Svm(config) => ModelConfig::Svm(SvmConfig { seed, ..*config }),
            ModelConfig::Rbf(config) => ModelConfig::Rbf(RbfConfig { seed, ..*config }),
            ModelConfig::Forest(config) => {
                ModelConfig::Forest(ForestConfig { seed, ..config.clone() })
            }
            ModelConfig::Vote(config) => {
                ModelConfig::Vote(VoteConfig { seed, ..config.clone() })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TrainedModel {
    ZeroR(ZeroRModel),
    HmmStandin(ZeroRModel),
    Svm(SvmModel),
    Rbf(RbfModel),
    KStar(KStarModel),
    Forest(ForestModel),
    Vote(VoteModel),
}

impl TrainedModel {
    pub fn num_attributes(&self) -> usize {
        match self {
            TrainedModel::ZeroR(m) | TrainedModel::HmmStandin(m) => m.num_attributes(),
            TrainedModel::Svm(m) => m.num_attributes(),
            TrainedModel::Rbf(m) => m.num_attributes(),
            TrainedModel::KStar(m) => m.num_attributes(),
            TrainedModel::Forest(m) => m.num_attributes(),
            TrainedModel::Vote(m) => m
                .members()
                .first()
                .map(TrainedModel::num_attributes)
                .unwrap_or(0),
        }
    }
}

impl Classifier for TrainedModel {
    fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        match self {
            TrainedModel::ZeroR(m) | TrainedModel::HmmStandin(m) => m.predict(features),
            TrainedModel::Svm(m) => m.predict(features),
            TrainedModel::Rbf(m) => m.predict(features),
            TrainedModel::KStar(m) => m.predict(features),
            TrainedModel::Forest(m) => m.predict(features),
            TrainedModel::Vote(m) => m.predict(features),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Instance, Label};
    use alloc::string::String;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::Rng;

    fn fixture() -> Dataset {
        let mut rng = crate::rng::stream(17, 0);
        let mut instances = Vec::new();
        for i in 0..24 {
            let base = if i % 2 == 0 { -1.0 } else { 1.0 };
            let label = if i % 2 == 0 { Label::Open } else { Label::Closed };
            instances.push(Instance::new(
                vec![base + rng.gen_range(-0.3..0.3), rng.gen_range(-1.0..1.0)],
                label,
            ));
        }
        Dataset::new(vec![String::from("x"), String::from("y")], instances).unwrap()
    }

    fn all_configs() -> Vec<ModelConfig> {
        vec![
            ModelConfig::ZeroR,
            ModelConfig::HmmStandin,
            ModelConfig::Svm(SvmConfig::default()),
            ModelConfig::Rbf(RbfConfig::default()),
            ModelConfig::KStar(KStarConfig::default()),
            ModelConfig::Forest(ForestConfig { n_trees: 6, ..ForestConfig::default() }),
            ModelConfig::Vote(VoteConfig::new(vec![
                ModelConfig::KStar(KStarConfig::default()),
                ModelConfig::Forest(ForestConfig { n_trees: 6, ..ForestConfig::default() }),
            ])),
        ]
    }

    #[test]
    fn every_config_fits_and_predicts() {
        let ds = fixture();
        for config in all_configs() {
            let model = config.fit(&ds).unwrap();
            assert_eq!(model.num_attributes(), 2);
            let p = model.predict(&[0.5, 0.0]).unwrap();
            assert!((p.open() + p.closed() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn with_seed_rewrites_only_the_seed() {
        let forest = ModelConfig::Forest(ForestConfig { n_trees: 9, ..ForestConfig::default() });
        match forest.with_seed(123) {
            ModelConfig::Forest(c) => {
                assert_eq!(c.seed, 123);
                assert_eq!(c.n_trees, 9);
            }
            other => panic!("unexpected variant {other:?}"),
        }
        assert_eq!(ModelConfig::ZeroR.with_seed(9), ModelConfig::ZeroR);
        let kstar = ModelConfig::KStar(KStarConfig { blend: 35 });
        assert_eq!(kstar.with_seed(77), kstar);
    }

    #[test]
    fn hmm_standin_is_uniform_even_on_skewed_data() {
        let instances = (0..10)
            .map(|i| {
                let label = if i < 8 { Label::Open } else { Label::Closed };
                Instance::new(vec![i as f64], label)
            })
            .collect();
        let ds = Dataset::new(vec![String::from("a")], instances).unwrap();
        let standin = ModelConfig::HmmStandin.fit(&ds).unwrap();
        let p = standin.predict(&[3.0]).unwrap();
        assert_eq!(p.open(), 0.5);
        assert_eq!(p.closed(), 0.5);
        // plain ZeroR on the same data reports the 0.8/0.2 proportions
        let zeror = ModelConfig::ZeroR.fit(&ds).unwrap();
        let q = zeror.predict(&[3.0]).unwrap();
        assert_eq!(q.open(), 0.8);
        assert_eq!(q.closed(), 0.2);
    }

    #[test]
    fn trained_models_round_trip_through_serde() {
        let ds = fixture();
        for config in all_configs() {
            let model = config.fit(&ds).unwrap();
            let bytes = serde_json::to_vec(&model).unwrap();
            let back: TrainedModel = serde_json::from_slice(&bytes).unwrap();
            assert_eq!(model, back);
            let a = model.predict(&[0.1, -0.2]).unwrap();
            let b = back.predict(&[0.1, -0.2]).unwrap();
            assert_eq!(a.open().to_bits(), b.open().to_bits());
        }
    }

    #[test]
    fn predict_errors_propagate_arity() {
        let ds = fixture();
        let model = ModelConfig::Vote(VoteConfig::new(vec![ModelConfig::ZeroR]))
            .fit(&ds)
            .unwrap();
        assert!(matches!(
            model.predict(&[1.0]),
            Err(PredictError::ArityMismatch { expected: 2, found: 1 })
        ));
    }
}
