//! Library side of the `eyestate` tool: classifier-spec parsing, dataset
//! loading, cross-validation orchestration, report rendering, and the
//! model-file container. The binary in `main.rs` is a thin command layer
//! over these modules; integration tests drive them directly.

pub mod dataset_io;
pub mod eval;
pub mod modelfile;
pub mod report;
pub mod spec;
