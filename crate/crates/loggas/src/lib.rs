//! Numerical toolkit for beta-ensembles with analytic r-body mean-field
//! interactions: equilibrium measures on multi-cut supports, the
//! Schwinger-Dyson 1/N expansion of correlators, Theta-function assembly
//! of the multi-cut partition function, fluctuation laws of linear
//! statistics, and a finite-N Metropolis sampler to validate it all.

pub mod config;
pub mod contour;
pub mod cuts;
pub mod domain;
pub mod equilibrium;
pub mod error;
pub mod expansion;
pub mod mc;
pub mod measure;
pub mod operators;
pub mod partition_fn;
pub mod poly;
pub mod potential;
pub mod quad;

pub use config::ModelConfig;
pub use domain::{Domain, Segment};
pub use error::{Error, Result};
