//! Front end for the `hochschild` engine: the algebra DSL, jobs, charts,
//! reference series and the on-disk rank cache.

pub mod cache;
pub mod chart;
pub mod dsl;
pub mod jobs;
pub mod series;
