//! File-level dataset loading: extension dispatch and CSV header detection.

use std::fmt;
use std::path::Path;

use eyestate_core::data::{arff, csv, Dataset};

#[derive(Debug)]
pub enum LoadError {
    Io(std::path::PathBuf, std::io::Error),
    Parse(std::path::PathBuf, eyestate_core::ParseError),
    UnknownFormat(std::path::PathBuf),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            LoadError::Parse(path, e) => write!(f, "{}: {e}", path.display()),
            LoadError::UnknownFormat(path) => write!(
                f,
                "{}: unsupported dataset format (expected .arff or .csv)",
                path.display()
            ),
        }
    }
}

impl std::error::Error for LoadError {}

pub fn load(path: &Path) -> Result<Dataset, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io(path.to_path_buf(), e))?;
    let extension = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    match extension.as_deref() {
        Some("arff") => arff::parse(&text).map_err(|e| LoadError::Parse(path.to_path_buf(), e)),
        Some("csv") => {
            let has_header = csv_has_header(&text);
            csv::parse(&text, has_header).map_err(|e| LoadError::Parse(path.to_path_buf(), e))
        }
        _ => Err(LoadError::UnknownFormat(path.to_path_buf())),
    }
}

/// A CSV first line whose fields are not all numeric (or '?') is a header.
fn csv_has_header(text: &str) -> bool {
    match text.lines().find(|l| !l.trim().is_empty()) {
        None => false,
        Some(first) => first
            .split(',')
            .any(|field| {
                let field = field.trim();
                field != "?" && field.parse::<f64>().is_err()
            }),
    }
}

/// Writes a predictions CSV or dataset file; plain io::Error wrapper.
pub fn write_file(path: &Path, contents: &str) -> Result<(), LoadError> {
    std::fs::write(path, contents).map_err(|e| LoadError::Io(path.to_path_buf(), e))
}
