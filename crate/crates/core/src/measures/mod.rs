//! Monotone block sensitivity, hitting-set complexity and their fractional
//! versions, locally at a point and globally.

mod classic;
mod family;
mod report;
mod smooth;
mod witness;

pub use classic::{block_collapse, block_sensitivity, degree, sensitivity};
pub use family::{minimal_blocks, sensitive_family, sensitive_family_by_scan, sensitive_family_with_table, SensitiveFamily};
pub use report::{
    check_chain, global_measures, global_measures_cached, local_measures, local_measures_cached, MeasureCache, MeasureReport,
    ReportPoint, SystemMeasures,
};
pub use smooth::{disjointify, sample_count, smooth_flip_probability, Disjointified};
pub use witness::{CoverWitness, DistributionWitness, HittingSetWitness, PackingWitness, SmoothDistribution, Witnesses};
