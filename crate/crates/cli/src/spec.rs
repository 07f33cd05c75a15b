//! Classifier spec grammar:
//!
//! ```text
//! zeror | hmm-standin | svm[:k=v,...] | rbf[:k=v,...] | kstar[:b=INT]
//!       | forest[:trees=INT,...] | vote(SPEC,SPEC,...)
//! ```
//!
//! Inside `vote(...)` the member separator is also a comma, so a segment of
//! the form `key=value` (no colon) attaches to the previous member's option
//! list: `vote(forest:trees=10,subset=2,kstar:b=20)` is a two-member vote.
//! Votes cannot nest.

use std::fmt;

use eyestate_core::baselines::{RbfConfig, SvmConfig};
use eyestate_core::ensemble::VoteConfig;
use eyestate_core::forest::ForestConfig;
use eyestate_core::kstar::KStarConfig;
use eyestate_core::model::ModelConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid classifier spec: {}", self.0)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError(message.into()))
}

pub fn parse_spec(text: &str) -> Result<ModelConfig, SpecError> {
    let text = text.trim();
    if text.is_empty() {
        return err("empty spec");
    }
    if let Some(rest) = text.strip_prefix("vote") {
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| SpecError(format!("vote takes a parenthesized member list, got `{text}`")))?;
        return parse_vote(inner);
    }
    parse_member(text)
}

fn parse_vote(inner: &str) -> Result<ModelConfig, SpecError> {
    let inner = inner.trim();
    if inner.is_empty() {
        return err("vote requires at least one member");
    }
    // split member list; `key=value` segments extend the previous member
    let mut members: Vec<String> = Vec::new();
    for segment in inner.split(',') {
        let segment = segment.trim();
        if segment.contains('=') && !segment.contains(':') {
            match members.last_mut() {
                Some(last) => {
                    last.push(',');
                    last.push_str(segment);
                }
                None => return err(format!("option `{segment}` appears before any vote member")),
            }
        } else {
            members.push(segment.to_string());
        }
    }
    let configs = members
        .iter()
        .map(|m| {
            if m.trim() == "vote" || m.trim_start().starts_with("vote(") || m.trim_start().starts_with("vote ") {
                return err(format!("vote members cannot be votes: `{m}`"));
            }
            parse_member(m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModelConfig::Vote(VoteConfig::new(configs)))
}

/// One non-vote spec: `name` or `name:key=value,key=value`.
fn parse_member(text: &str) -> Result<ModelConfig, SpecError> {
    let text = text.trim();
    let (name, options) = match text.split_once(':') {
        Some((n, o)) => (n.trim(), parse_options(o)?),
        None => (text, Vec::new()),
    };
    match name {
        "zeror" => {
            reject_options(name, &options)?;
            Ok(ModelConfig::ZeroR)
        }
        "hmm-standin" => {
            reject_options(name, &options)?;
            Ok(ModelConfig::HmmStandin)
        }
        "svm" => {
            let mut config = SvmConfig::default();
            for (key, value) in &options {
                match key.as_str() {
                    "lambda" => config.lambda = parse_number(key, value)?,
                    "epochs" => config.epochs = parse_integer(key, value)?,
                    _ => return err(format!("unknown svm option `{key}`")),
                }
            }
            Ok(ModelConfig::Svm(config))
        }
        "rbf" => {
            let mut config = RbfConfig::default();
            for (key, value) in &options {
                match key.as_str() {
                    "clusters" => config.clusters_per_class = parse_integer(key, value)?,
                    "ridge" => config.ridge = parse_number(key, value)?,
                    _ => return err(format!("unknown rbf option `{key}`")),
                }
            }
            Ok(ModelConfig::Rbf(config))
        }
        "kstar" => {
            let mut config = KStarConfig::default();
            for (key, value) in &options {
                match key.as_str() {
                    "b" => {
                        let b: u8 = parse_integer(key, value)?;
                        if b > 100 {
                            return err(format!("kstar blend {b} is outside [0, 100]"));
                        }
                        config.blend = b;
                    }
                    _ => return err(format!("unknown kstar option `{key}`")),
                }
            }
            Ok(ModelConfig::KStar(config))
        }
        "forest" => {
            let mut config = ForestConfig::default();
            for (key, value) in &options {
                match key.as_str() {
                    "trees" => config.n_trees = parse_integer(key, value)?,
                    "subset" => config.feature_subset_size = Some(parse_integer(key, value)?),
                    "min_leaf" => config.min_leaf = parse_integer(key, value)?,
                    "max_depth" => config.max_depth = Some(parse_integer(key, value)?),
                    _ => return err(format!("unknown forest option `{key}`")),
                }
            }
            Ok(ModelConfig::Forest(config))
        }
        "vote" => err("vote members cannot be votes"),
        other => err(format!("unknown classifier `{other}`")),
    }
}

fn parse_options(text: &str) -> Result<Vec<(String, String)>, SpecError> {
    text.split(',')
        .map(|pair| {
            let pair = pair.trim();
            match pair.split_once('=') {
                Some((k, v)) if !k.trim().is_empty() && !v.trim().is_empty() => {
                    Ok((k.trim().to_string(), v.trim().to_string()))
                }
                _ => err(format!("malformed option `{pair}`, expected key=value")),
            }
        })
        .collect()
}

fn reject_options(name: &str, options: &[(String, String)]) -> Result<(), SpecError> {
    match options.first() {
        Some((key, _)) => err(format!("{name} takes no options, got `{key}`")),
        None => Ok(()),
    }
}

fn parse_integer<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, SpecError> {
    value
        .parse()
        .map_err(|_| SpecError(format!("option `{key}` needs an integer, got `{value}`")))
}

fn parse_number(key: &str, value: &str) -> Result<f64, SpecError> {
    let parsed: f64 = value
        .parse()
        .map_err(|_| SpecError(format!("option `{key}` needs a number, got `{value}`")))?;
    if !parsed.is_finite() {
        return Err(SpecError(format!("option `{key}` must be finite, got `{value}`")));
    }
    Ok(parsed)
}
