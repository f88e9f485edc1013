use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::trees::AndDecisionTree;

/// One AND query: Alice sends `∧_S x`, Bob sends `∧_S y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub alice: bool,
    pub bob: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    pub rounds: Vec<Round>,
    pub output: Rational,
}

impl ProtocolTranscript {
    /// Bits exchanged.
    pub fn cost(&self) -> usize {
        2 * self.rounds.len()
    }
}

impl fmt::Display for ProtocolTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rounds.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "A:{} B:{}", r.alice as u8, r.bob as u8)?;
        }
        if !self.rounds.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "-> {}", self.output)
    }
}

/// Runs the two-party protocol in which both players answer every AND query
/// of `t` on their own input. `x` and `y` must have the same length.
pub fn simulate_protocol(t: &AndDecisionTree, x: &BitVec, y: &BitVec) -> ProtocolTranscript {
    let mut rounds = Vec::new();
    let mut node = t;
    loop {
        match node {
            AndDecisionTree::Leaf(v) => return ProtocolTranscript { rounds, output: v.clone() },
            AndDecisionTree::Node { query, if_false, if_true } => {
                let r = Round { alice: query.is_subset(x), bob: query.is_subset(y) };
                node = if r.alice && r.bob { if_true } else { if_false };
                rounds.push(r);
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Compiled {
    Leaf(usize),
    Query { mask: u64, if_false: usize, if_true: usize },
}

/// An AND tree flattened to `u64` masks, for exhaustive simulation.
#[derive(Clone, Debug)]
pub struct CompiledAdt {
    nodes: Vec<Compiled>,
    leaves: Vec<Rational>,
}

impl CompiledAdt {
    pub fn new(t: &AndDecisionTree, n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidInput(format!("compiled trees take n <= 64, got {n}")));
        }
        let mut out = CompiledAdt { nodes: Vec::new(), leaves: Vec::new() };
        out.push(t);
        Ok(out)
    }

    fn push(&mut self, t: &AndDecisionTree) -> usize {
        let id = self.nodes.len();
        match t {
            AndDecisionTree::Leaf(v) => {
                let leaf = match self.leaves.iter().position(|u| u == v) {
                    Some(k) => k,
                    None => {
                        self.leaves.push(v.clone());
                        self.leaves.len() - 1
                    }
                };
                self.nodes.push(Compiled::Leaf(leaf));
            }
            AndDecisionTree::Node { query, if_false, if_true } => {
                self.nodes.push(Compiled::Leaf(0));
                let f = self.push(if_false);
                let t = self.push(if_true);
                self.nodes[id] = Compiled::Query { mask: query.low_word(), if_false: f, if_true: t };
            }
        }
        id
    }

    /// Distinct leaf values, indexed by the first result of [`Self::run`].
    pub fn leaves(&self) -> &[Rational] {
        &self.leaves
    }

    /// `(leaf index, bits exchanged)` for inputs given as truth-table indices.
    pub fn run(&self, x: u64, y: u64) -> (usize, usize) {
        let mut k = 0;
        let mut cost = 0;
        loop {
            match self.nodes[k] {
                Compiled::Leaf(v) => return (v, cost),
                Compiled::Query { mask, if_false, if_true } => {
                    cost += 2;
                    k = if x & mask == mask && y & mask == mask { if_true } else { if_false };
                }
            }
        }
    }
}
