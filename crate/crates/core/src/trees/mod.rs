//! Decision trees over single variables and over conjunctions.

mod build;
mod randomized;
mod text;

use crate::bitvec::{all_inputs, BitVec};
use crate::capacity;
use crate::error::Result;
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

pub use build::{adt_to_dt, build_zero_dt, zero_dt_to_adt};
pub use randomized::{threshold_error, threshold_error_at, threshold_randomized_adt, RandomizedAndDt};
pub use text::{format_adt, format_dt, parse_adt, parse_dt};

/// A standard decision tree. Variables are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DecisionTree {
    Leaf(Rational),
    Node { var: usize, zero: Box<DecisionTree>, one: Box<DecisionTree> },
}

impl DecisionTree {
    pub fn leaf(v: Rational) -> Self {
        DecisionTree::Leaf(v)
    }

    pub fn node(var: usize, zero: DecisionTree, one: DecisionTree) -> Self {
        DecisionTree::Node { var, zero: Box::new(zero), one: Box::new(one) }
    }

    pub fn evaluate(&self, z: &BitVec) -> &Rational {
        let mut t = self;
        loop {
            match t {
                DecisionTree::Leaf(v) => return v,
                DecisionTree::Node { var, zero, one } => t = if z.contains(*var) { one } else { zero },
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// Largest number of 0-edges on a root-to-leaf path.
    pub fn zero_depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { zero, one, .. } => (1 + zero.zero_depth()).max(one.zero_depth()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Node { zero, one, .. } => zero.leaf_count() + one.leaf_count(),
        }
    }

    /// True when no path queries a variable twice and all variables are `< n`.
    pub fn is_valid(&self, n: usize) -> bool {
        fn go(t: &DecisionTree, n: usize, seen: &mut Vec<bool>) -> bool {
            match t {
                DecisionTree::Leaf(_) => true,
                DecisionTree::Node { var, zero, one } => {
                    if *var >= n || seen[*var] {
                        return false;
                    }
                    seen[*var] = true;
                    let ok = go(zero, n, seen) && go(one, n, seen);
                    seen[*var] = false;
                    ok
                }
            }
        }
        go(self, n, &mut vec![false; n])
    }

    /// Agrees with `f` on all `2^n` inputs.
    pub fn computes(&self, f: &MultilinearPoly) -> Result<bool> {
        let table = f.to_truth_table()?;
        capacity::check_enumeration("tree verification", f.n())?;
        Ok(all_inputs(f.n()).all(|z| self.evaluate(&z) == table.value(&z)))
    }
}

/// A decision tree whose nodes query `∧_{i∈S} z_i` (true for empty `S`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AndDecisionTree {
    Leaf(Rational),
    Node { query: BitVec, if_false: Box<AndDecisionTree>, if_true: Box<AndDecisionTree> },
}

impl AndDecisionTree {
    pub fn leaf(v: Rational) -> Self {
        AndDecisionTree::Leaf(v)
    }

    pub fn node(query: BitVec, if_false: AndDecisionTree, if_true: AndDecisionTree) -> Self {
        AndDecisionTree::Node { query, if_false: Box::new(if_false), if_true: Box::new(if_true) }
    }

    pub fn evaluate(&self, z: &BitVec) -> &Rational {
        let mut t = self;
        loop {
            match t {
                AndDecisionTree::Leaf(v) => return v,
                AndDecisionTree::Node { query, if_false, if_true } => {
                    t = if query.is_subset(z) { if_true } else { if_false };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            AndDecisionTree::Leaf(_) => 0,
            AndDecisionTree::Node { if_false, if_true, .. } => 1 + if_false.depth().max(if_true.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            AndDecisionTree::Leaf(_) => 0,
            AndDecisionTree::Node { if_false, if_true, .. } => 1 + if_false.node_count() + if_true.node_count(),
        }
    }

    /// Agrees with `f` on all `2^n` inputs.
    pub fn computes(&self, f: &MultilinearPoly) -> Result<bool> {
        capacity::check_enumeration("tree verification", f.n())?;
        let table = f.to_truth_table()?;
        Ok(all_inputs(f.n()).all(|z| self.evaluate(&z) == table.value(&z)))
    }
}

pub fn adt_evaluate(t: &AndDecisionTree, z: &BitVec) -> Rational {
    t.evaluate(z).clone()
}

pub fn adt_verify(t: &AndDecisionTree, f: &MultilinearPoly) -> Result<bool> {
    t.computes(f)
}
