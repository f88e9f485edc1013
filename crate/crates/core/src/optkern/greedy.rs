use serde::{Deserialize, Serialize};

use super::setsystem::SetSystem;
use crate::bitvec::BitVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    /// 0-based element chosen at this step.
    pub element: usize,
    /// Sets still unhit after choosing it.
    pub remaining: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyCover {
    pub hitting_set: BitVec,
    pub steps: Vec<GreedyStep>,
}

/// Repeatedly takes the element meeting the most unhit sets, lowest index
/// on ties.
pub fn greedy_cover(s: &SetSystem) -> GreedyCover {
    let n = s.n();
    let mut unhit: Vec<&BitVec> = s.sets().iter().collect();
    let mut hitting_set = BitVec::empty(n);
    let mut steps = Vec::new();
    let mut counts = vec![0usize; n];
    while !unhit.is_empty() {
        counts.iter_mut().for_each(|c| *c = 0);
        for w in &unhit {
            for i in w.iter() {
                counts[i] += 1;
            }
        }
        let element = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("unhit sets are nonempty");
        hitting_set.insert(element);
        unhit.retain(|w| !w.contains(element));
        steps.push(GreedyStep { element, remaining: unhit.len() });
    }
    debug_assert!(s.is_hit_by(&hitting_set));
    GreedyCover { hitting_set, steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::new(n, sets.iter().map(|s| BitVec::from_indices(n, s.iter().map(|i| i - 1))).collect()).unwrap()
    }

    #[test]
    fn nested_sets_need_one_element() {
        let g = greedy_cover(&sys(3, &[&[1], &[1, 2], &[1, 2, 3]]));
        assert_eq!(g.hitting_set, BitVec::from_indices(3, [0]));
        assert_eq!(g.steps, vec![GreedyStep { element: 0, remaining: 0 }]);
    }

    #[test]
    fn singletons_need_everything() {
        let g = greedy_cover(&sys(4, &[&[1], &[2], &[3], &[4]]));
        assert_eq!(g.hitting_set.count(), 4);
        assert_eq!(g.steps.iter().map(|s| s.element).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(g.steps.iter().map(|s| s.remaining).collect::<Vec<_>>(), vec![3, 2, 1, 0]);
    }

    #[test]
    fn fano_within_bound() {
        let fano = sys(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]]);
        let g = greedy_cover(&fano);
        assert!(fano.is_hit_by(&g.hitting_set));
        // (7/3) ln 7 ≈ 4.54
        assert!(g.hitting_set.count() <= 5);
        assert!(g.hitting_set.count() >= 3);
    }

    #[test]
    fn empty_system() {
        let g = greedy_cover(&SetSystem::empty(3));
        assert!(g.hitting_set.is_empty() && g.steps.is_empty());
    }
}
