use super::{AndDecisionTree, DecisionTree};
use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::Result;
use crate::poly::MultilinearPoly;

/// Greedy tree of small 0-depth: query the variable in the most monomials
/// (lowest index on ties), recurse on both restrictions, stop once the
/// restriction is constant.
pub fn build_zero_dt(f: &MultilinearPoly) -> Result<DecisionTree> {
    capacity::check_enumeration("zero decision tree", f.n())?;
    Ok(build(f))
}

fn build(g: &MultilinearPoly) -> DecisionTree {
    if g.is_constant() {
        return DecisionTree::leaf(g.constant_term());
    }
    let mut counts = vec![0usize; g.n()];
    for (s, _) in g.terms() {
        for i in s.iter() {
            counts[i] += 1;
        }
    }
    let var = (0..g.n()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("nonconstant means n > 0");
    let zero = build(&g.restrict_zero(var));
    let one = build(&g.restrict_ones(&BitVec::from_indices(g.n(), [var])));
    DecisionTree::node(var, zero, one)
}

/// Converts a tree of 0-depth `d` into an AND tree of depth at most
/// `d·⌈log2(n+1)⌉`.
///
/// Follow the all-ones path `i_0, i_1, …` from the root. Where it first
/// reads a 0 (or that it never does) is found by binary search with AND
/// queries over prefixes `{i_0..i_j}`; then convert the subtree entered
/// there. Adjacent stopping points whose converted subtrees coincide are
/// searched as one.
pub fn zero_dt_to_adt(t: &DecisionTree, n: usize) -> AndDecisionTree {
    if let DecisionTree::Leaf(v) = t {
        return AndDecisionTree::leaf(v.clone());
    }
    let mut path = Vec::new();
    let mut options = Vec::new();
    let mut cur = t;
    while let DecisionTree::Node { var, zero, one } = cur {
        path.push(*var);
        options.push(zero_dt_to_adt(zero, n));
        cur = one;
    }
    let DecisionTree::Leaf(v) = cur else { unreachable!() };
    options.push(AndDecisionTree::leaf(v.clone()));

    // groups[g] = (last option index in group, subtree)
    let mut groups: Vec<(usize, AndDecisionTree)> = Vec::new();
    for (j, opt) in options.into_iter().enumerate() {
        match groups.last_mut() {
            Some((end, tree)) if *tree == opt => *end = j,
            _ => groups.push((j, opt)),
        }
    }
    search(&path, &mut groups.into_iter().map(Some).collect::<Vec<_>>(), n)
}

/// Option `j < path.len()` means the first 0 on the path is at `path[j]`;
/// option `path.len()` means the path is all ones.
fn search(path: &[usize], groups: &mut [Option<(usize, AndDecisionTree)>], n: usize) -> AndDecisionTree {
    if groups.len() == 1 {
        return groups[0].take().expect("each group is used once").1;
    }
    let mid = (groups.len() - 1) / 2;
    let end = groups[mid].as_ref().expect("unused").0;
    let query = BitVec::from_indices(n, path[..=end].iter().copied());
    let (left, right) = groups.split_at_mut(mid + 1);
    let if_false = search(path, left, n);
    let if_true = search(path, right, n);
    AndDecisionTree::node(query, if_false, if_true)
}

/// Simulates each AND query by reading its unknown variables one at a time,
/// stopping at the first 0. Each AND query costs at most one 0-edge.
pub fn adt_to_dt(t: &AndDecisionTree, n: usize) -> DecisionTree {
    simulate(t, &BitVec::empty(n), &BitVec::empty(n))
}

fn simulate(t: &AndDecisionTree, ones: &BitVec, zeros: &BitVec) -> DecisionTree {
    match t {
        AndDecisionTree::Leaf(v) => DecisionTree::leaf(v.clone()),
        AndDecisionTree::Node { query, if_false, if_true } => {
            if query.intersects(zeros) {
                return simulate(if_false, ones, zeros);
            }
            let unknown: Vec<usize> = query.difference(ones).iter().collect();
            chain(&unknown, query, if_false, if_true, ones, zeros)
        }
    }
}

fn chain(
    unknown: &[usize],
    query: &BitVec,
    if_false: &AndDecisionTree,
    if_true: &AndDecisionTree,
    ones: &BitVec,
    zeros: &BitVec,
) -> DecisionTree {
    match unknown.split_first() {
        None => simulate(if_true, &ones.union(query), zeros),
        Some((&i, rest)) => {
            let zero = simulate(if_false, ones, &zeros.with(i));
            let one = chain(rest, query, if_false, if_true, &ones.with(i), zeros);
            DecisionTree::node(i, zero, one)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;
    use crate::poly::TruthTable;
    use crate::rational::Rational;

    fn log_ceil(n: usize) -> usize {
        (usize::BITS - n.leading_zeros()) as usize
    }

    fn poly(n: usize, pred: impl FnMut(&BitVec) -> bool) -> MultilinearPoly {
        TruthTable::from_predicate(n, pred).unwrap().to_poly().unwrap()
    }

    #[test]
    fn and_or_shapes() {
        for n in 1..=8 {
            let and = poly(n, |z| z.count() == n);
            let t = build_zero_dt(&and).unwrap();
            assert_eq!(t.zero_depth(), 1);
            assert!(t.computes(&and).unwrap());
            let adt = zero_dt_to_adt(&t, n);
            assert_eq!(adt.depth(), 1);
            assert!(adt.computes(&and).unwrap());

            let or = poly(n, |z| !z.is_empty());
            let t = build_zero_dt(&or).unwrap();
            assert_eq!(t.zero_depth(), n);
            let adt = zero_dt_to_adt(&t, n);
            assert!(adt.depth() <= n * log_ceil(n));
            assert!(adt.computes(&or).unwrap());
        }
    }

    #[test]
    fn conversion_bounds_on_all_small_functions() {
        for n in 0..=3usize {
            for bits in 0..1u64 << (1 << n) {
                let f = TruthTable::from_bits(n, bits).to_poly().unwrap();
                let t = build_zero_dt(&f).unwrap();
                assert!(t.is_valid(n));
                assert!(t.computes(&f).unwrap());
                let adt = zero_dt_to_adt(&t, n);
                assert!(adt.computes(&f).unwrap());
                assert!(adt.depth() <= t.zero_depth() * log_ceil(n));
                let back = adt_to_dt(&adt, n);
                assert!(back.is_valid(n));
                assert!(back.computes(&f).unwrap());
                assert!(back.zero_depth() <= adt.depth());
            }
        }
    }

    #[test]
    fn conversion_of_hand_built_trees() {
        // a tree that is not greedy: reads x3 first, then x1, x2
        let q = |v| DecisionTree::leaf(Rational::from_integer(v));
        let t = DecisionTree::node(
            2,
            DecisionTree::node(0, q(0), q(1)),
            DecisionTree::node(0, DecisionTree::node(1, q(1), q(0)), DecisionTree::node(1, q(0), q(1))),
        );
        let adt = zero_dt_to_adt(&t, 3);
        for z in all_inputs(3) {
            assert_eq!(adt.evaluate(&z), t.evaluate(&z));
        }
        assert!(adt.depth() <= t.zero_depth() * 2);
    }

    #[test]
    fn leaf_tree_converts_to_leaf() {
        let t = DecisionTree::leaf(Rational::from_integer(7));
        assert_eq!(zero_dt_to_adt(&t, 4), AndDecisionTree::leaf(Rational::from_integer(7)));
        assert_eq!(adt_to_dt(&AndDecisionTree::leaf(Rational::one()), 2), DecisionTree::leaf(Rational::one()));
    }
}
