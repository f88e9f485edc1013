//! Exact computation of monotone block sensitivity, hitting-set measures,
//! AND-decision trees and communication matrices for boolean functions
//! given as multilinear polynomials over ℚ.

pub mod bitvec;
pub mod bounds;
pub mod capacity;
pub mod comm;
pub mod error;
pub mod harness;
pub mod measures;
pub mod optkern;
pub mod poly;
pub mod rational;
pub mod trees;
pub mod zoo;

pub use bitvec::BitVec;
pub use error::{Error, Result};
pub use measures::{MeasureReport, PackingWitness, SmoothDistribution};
pub use optkern::{LpResult, SetSystem};
pub use poly::{MultilinearPoly, TruthTable};
pub use rational::Rational;
pub use trees::{AndDecisionTree, DecisionTree};
