//! Versioned model container: magic bytes `EEGM`, one format version byte,
//! then a JSON payload with the originating spec, seed, and the fitted
//! model. JSON is parsed with float_roundtrip, so reloaded weights are
//! bit-identical.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use eyestate_core::model::TrainedModel;

const MAGIC: &[u8; 4] = b"EEGM";
const VERSION: u8 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub spec: String,
    pub seed: u64,
    pub model: TrainedModel,
}

#[derive(Debug)]
pub enum ModelFileError {
    Io(std::path::PathBuf, std::io::Error),
    NotAModelFile(std::path::PathBuf),
    VersionMismatch { path: std::path::PathBuf, found: u8 },
    Payload(std::path::PathBuf, serde_json::Error),
}

impl fmt::Display for ModelFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelFileError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            ModelFileError::NotAModelFile(path) => {
                write!(f, "{}: not a model file (missing EEGM magic)", path.display())
            }
            ModelFileError::VersionMismatch { path, found } => write!(
                f,
                "{}: model format version {found} unsupported (this build reads version {VERSION})",
                path.display()
            ),
            ModelFileError::Payload(path, e) => {
                write!(f, "{}: model payload corrupt: {e}", path.display())
            }
        }
    }
}

impl std::error::Error for ModelFileError {}

pub fn save(path: &Path, file: &ModelFile) -> Result<(), ModelFileError> {
    let payload = serde_json::to_vec(file).expect("model serialization is infallible");
    let mut bytes = Vec::with_capacity(payload.len() + 5);
    bytes.extend_from_slice(MAGIC);
    bytes.push(VERSION);
    bytes.extend_from_slice(&payload);
    std::fs::write(path, bytes).map_err(|e| ModelFileError::Io(path.to_path_buf(), e))
}

pub fn load(path: &Path) -> Result<ModelFile, ModelFileError> {
    let bytes = std::fs::read(path).map_err(|e| ModelFileError::Io(path.to_path_buf(), e))?;
    if bytes.len() < 5 || &bytes[..4] != MAGIC {
        return Err(ModelFileError::NotAModelFile(path.to_path_buf()));
    }
    if bytes[4] != VERSION {
        return Err(ModelFileError::VersionMismatch {
            path: path.to_path_buf(),
            found: bytes[4],
        });
    }
    serde_json::from_slice(&bytes[5..]).map_err(|e| ModelFileError::Payload(path.to_path_buf(), e))
}
