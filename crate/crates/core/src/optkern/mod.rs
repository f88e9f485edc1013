//! Exact LP and ILP machinery for set packing and covering.

pub mod exhaustive;
mod greedy;
mod ilp;
mod setsystem;
mod simplex;

pub use greedy::{greedy_cover, GreedyCover, GreedyStep};
pub use ilp::{
    covering_number, fractional_cover, fractional_pack, integral_cover, integral_pack, packing_number, verify_hitting_set,
    verify_packing,
};
pub use setsystem::{minimal_indices, SetSystem};
pub use simplex::{Constraint, LinearProgram, LpResult, RowSense, Sense};
