//! Exact character and OPE computations for exceptional W-algebras.

pub mod charengine;
pub mod cli;
pub mod error;
pub mod golden;
pub mod grading;
pub mod isomorphism;
pub mod linalg;
pub mod opecalc;
pub mod qseries;
pub mod report;
pub mod rootdata;
pub mod virmod;

pub use error::{Error, Result};
pub use qseries::{Comparison, ProductSpec, QSeries};
