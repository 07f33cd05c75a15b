//! Comparison classifiers: majority-class (ZeroR), linear SVM, and an RBF
//! network.

pub mod rbf;
pub mod svm;
pub mod zeror;

pub use rbf::{RbfConfig, RbfModel};
pub use svm::{SvmConfig, SvmModel};
pub use zeror::ZeroRModel;
