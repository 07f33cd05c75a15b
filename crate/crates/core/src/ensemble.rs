//! Average-of-probabilities vote over an arbitrary set of member models.
//!
//! Members are fitted on the same training data; each member i has its seed
//! rewritten to `mix64(vote_seed, i)` so that members draw independent
//! randomness while the whole ensemble stays reproducible from one seed.
//! Prediction fuses member distributions by the arithmetic mean, accumulated
//! left to right in member order.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{FitError, PredictError};
use crate::metrics::ProbabilityVector;
use crate::model::{Classifier, ModelConfig, TrainedModel};
use crate::rng::mix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombinationRule {
    AverageOfProbabilities,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoteConfig {
    pub members: Vec<ModelConfig>,
    pub rule: CombinationRule,
    pub seed: u64,
}

impl VoteConfig {
    pub fn new(members: Vec<ModelConfig>) -> Self {
        VoteConfig {
            members,
            rule: CombinationRule::AverageOfProbabilities,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoteModel {
    members: Vec<TrainedModel>,
}

pub fn fit(ds: &Dataset, config: &VoteConfig) -> Result<VoteModel, FitError> {
    if config.members.is_empty() {
        return Err(FitError::InvalidConfig(
            "vote requires at least one member".into(),
        ));
    }
    let members = config
        .members
        .iter()
        .enumerate()
        .map(|(i, member)| member.with_seed(mix64(config.seed, i as u64)).fit(ds))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VoteModel { members })
}

impl VoteModel {
    /// Assembles a vote from already-trained members, bypassing the seeded
    /// fit path. The member order is the fusion order.
    pub fn from_members(members: Vec<TrainedModel>) -> VoteModel {
        VoteModel { members }
    }

    /// Mean of the member distributions, in member order. The division can
    /// land a hair outside [0, 1] after many additions; clamping absorbs
    /// that last-ulp drift.
    pub fn predict(&self, features: &[f64]) -> Result<ProbabilityVector, PredictError> {
        let mut open = 0.0f64;
        let mut closed = 0.0f64;
        for member in &self.members {
            let p = member.predict(features)?;
            open += p.open();
            closed += p.closed();
        }
        let count = self.members.len() as f64;
        Ok(ProbabilityVector::new(
            (open / count).clamp(0.0, 1.0),
            (closed / count).clamp(0.0, 1.0),
        )
        .expect("mean of probability vectors is a probability vector"))
    }

    pub fn members(&self) -> &[TrainedModel] {
        &self.members
    }
}

/// Label under the fused distribution; ties go to Open.
pub fn argmax_label(p: &ProbabilityVector) -> Label {
    p.argmax()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Instance;
    use crate::forest::ForestConfig;
    use crate::kstar::KStarConfig;
    use alloc::string::String;
    use alloc::vec;
    use rand::Rng;

    fn fixture() -> Dataset {
        let mut rng = crate::rng::stream(7, 0);
        let mut instances = Vec::new();
        for i in 0..30 {
            let base = if i % 2 == 0 { -2.0 } else { 2.0 };
            let label = if i % 2 == 0 { Label::Open } else { Label::Closed };
            instances.push(Instance::new(
                vec![base + rng.gen_range(-0.5..0.5), base + rng.gen_range(-0.5..0.5)],
                label,
            ));
        }
        Dataset::new(vec![String::from("x"), String::from("y")], instances).unwrap()
    }

    fn constant_member(ds: &Dataset) -> TrainedModel {
        TrainedModel::ZeroR(crate::baselines::zeror::fit(ds).unwrap())
    }

    #[test]
    fn mean_of_two_members_is_componentwise() {
        // (0.9, 0.1) and (0.7, 0.3) fuse to (0.8, 0.2)
        let a = ProbabilityVector::new(0.9, 0.1).unwrap();
        let b = ProbabilityVector::new(0.7, 0.3).unwrap();
        let open = (a.open() + b.open()) / 2.0;
        let closed = (a.closed() + b.closed()) / 2.0;
        assert!((open - 0.8).abs() < 1e-15);
        assert!((closed - 0.2).abs() < 1e-15);
    }

    #[test]
    fn opposed_certain_members_tie_to_open() {
        // one member fully Open, one fully Closed: fused (0.5, 0.5) -> Open
        let single = |label| {
            let ds = Dataset::new(
                vec![String::from("a")],
                vec![Instance::new(vec![0.0], label)],
            )
            .unwrap();
            constant_member(&ds)
        };
        let vote = VoteModel {
            members: vec![single(Label::Open), single(Label::Closed)],
        };
        let fused = vote.predict(&[0.0]).unwrap();
        assert_eq!(fused.open(), 0.5);
        assert_eq!(fused.closed(), 0.5);
        assert_eq!(argmax_label(&fused), Label::Open);
    }

    #[test]
    fn single_member_vote_matches_member() {
        let ds = fixture();
        let vote = fit(
            &ds,
            &VoteConfig {
                seed: 9,
                ..VoteConfig::new(vec![ModelConfig::KStar(KStarConfig { blend: 20 })])
            },
        )
        .unwrap();
        let solo = ModelConfig::KStar(KStarConfig { blend: 20 })
            .with_seed(mix64(9, 0))
            .fit(&ds)
            .unwrap();
        for inst in ds.instances().iter().take(5) {
            let a = vote.predict(&inst.features).unwrap();
            let b = solo.predict(&inst.features).unwrap();
            assert_eq!(a.open().to_bits(), b.open().to_bits());
            assert_eq!(a.closed().to_bits(), b.closed().to_bits());
        }
    }

    #[test]
    fn empty_member_list_is_rejected() {
        let ds = fixture();
        let err = fit(&ds, &VoteConfig::new(vec![])).unwrap_err();
        assert_eq!(
            err,
            FitError::InvalidConfig("vote requires at least one member".into())
        );
    }

    #[test]
    fn fusion_matches_exact_recomputation() {
        let ds = fixture();
        let config = VoteConfig {
            seed: 3,
            ..VoteConfig::new(vec![
                ModelConfig::KStar(KStarConfig { blend: 20 }),
                ModelConfig::Forest(ForestConfig { n_trees: 12, ..ForestConfig::default() }),
                ModelConfig::ZeroR,
            ])
        };
        let vote = fit(&ds, &config).unwrap();
        let mut rng = crate::rng::stream(8, 0);
        for _ in 0..10 {
            let q = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let fused = vote.predict(&q).unwrap();
            let mut open = 0.0;
            let mut closed = 0.0;
            for member in vote.members() {
                let p = member.predict(&q).unwrap();
                open += p.open();
                closed += p.closed();
            }
            let n = vote.members().len() as f64;
            assert_eq!(fused.open().to_bits(), ((open / n).clamp(0.0, 1.0)).to_bits());
            assert_eq!(fused.closed().to_bits(), ((closed / n).clamp(0.0, 1.0)).to_bits());
        }
    }

    #[test]
    fn unanimous_members_fix_the_argmax() {
        let ds = fixture();
        let members = vec![constant_member(&ds), constant_member(&ds), constant_member(&ds)];
        let vote = VoteModel { members };
        let p = vote.predict(&[0.0, 0.0]).unwrap();
        // every ZeroR member says Open (15/15 tie -> majority Open on equal
        // counts); fused argmax must agree with the members
        assert_eq!(argmax_label(&p), Label::Open);
    }

    #[test]
    fn member_seeds_are_position_dependent() {
        let ds = fixture();
        let config = VoteConfig {
            seed: 5,
            ..VoteConfig::new(vec![
                ModelConfig::Forest(ForestConfig { n_trees: 4, ..ForestConfig::default() }),
                ModelConfig::Forest(ForestConfig { n_trees: 4, ..ForestConfig::default() }),
            ])
        };
        let vote = fit(&ds, &config).unwrap();
        // same member spec at different positions trains with different seeds
        assert_ne!(vote.members()[0], vote.members()[1]);
    }

    #[test]
    fn refit_is_deterministic() {
        let ds = fixture();
        let config = VoteConfig {
            seed: 21,
            ..VoteConfig::new(vec![
                ModelConfig::KStar(KStarConfig::default()),
                ModelConfig::Forest(ForestConfig { n_trees: 8, ..ForestConfig::default() }),
            ])
        };
        let a = fit(&ds, &config).unwrap();
        let b = fit(&ds, &config).unwrap();
        assert_eq!(a, b);
    }
}
