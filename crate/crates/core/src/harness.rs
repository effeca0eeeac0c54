//! Deterministic non-repeating black-box search and exhaustive NFL checks.
//!
//! An algorithm sees only the trace of `(point, value)` pairs so far and
//! proposes an unvisited point. Running it for `m` steps on `f` yields the
//! value sequence `Y(f, m, a)`. Every performance measure is a function of
//! that sequence, so two algorithms perform identically on a set `F` for all
//! measures iff the multisets `{ Y(f, m, ·) : f ∈ F }` coincide.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::landscape::Neighborhood;
use crate::space::{Caps, FiniteFunction, FunctionSet, SpaceSignature};

/// Replacement state for seed 0, which xorshift cannot leave.
pub const ZERO_SEED_REPLACEMENT: u64 = 0x9E37_79B9_7F4A_7C15;
const XORSHIFT_MULTIPLIER: u64 = 2_685_821_657_736_338_717;

/// One xorshift64* step. Returns the rank (in `0..unvisited_count`) of the
/// chosen point among the unvisited points in ascending order, and the new state.
pub fn seeded_random_next(state: u64, unvisited_count: usize) -> (usize, u64) {
    assert!(unvisited_count >= 1, "no unvisited point to choose from");
    let mut s = if state == 0 { ZERO_SEED_REPLACEMENT } else { state };
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    let output = s.wrapping_mul(XORSHIFT_MULTIPLIER);
    ((output % unvisited_count as u64) as usize, s)
}

/// The history `T_m` of distinct visited points and their values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trace {
    steps: Vec<(usize, usize)>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|&(x, _)| x)
    }

    pub fn visits(&self, x: usize) -> bool {
        self.points().any(|p| p == x)
    }

    pub fn values(&self) -> ValueSequence {
        ValueSequence(self.steps.iter().map(|&(_, y)| y).collect())
    }

    fn visited_mask(&self, domain_size: usize) -> Vec<bool> {
        let mut mask = vec![false; domain_size];
        for x in self.points() {
            mask[x] = true;
        }
        mask
    }
}

/// `Y(f, m, a)`: the observed cost values in visiting order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSequence(pub Vec<usize>);

impl fmt::Display for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// A deterministic algorithm given as a tree keyed by the observed value
/// prefix: `nodes[prefix]` is the point queried after observing `prefix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionTree {
    nodes: BTreeMap<Vec<usize>, usize>,
}

impl DecisionTree {
    pub fn new(nodes: BTreeMap<Vec<usize>, usize>) -> Self {
        DecisionTree { nodes }
    }

    pub fn nodes(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.nodes
    }

    pub fn choice(&self, prefix: &[usize]) -> Option<usize> {
        self.nodes.get(prefix).copied()
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (prefix, x)) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}->{x}", ValueSequence(prefix.clone()))?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SearchAlgorithm {
    /// Visits `0, 1, 2, …`.
    Lexicographic,
    /// Visits `n-1, n-2, …`.
    ReverseLexicographic,
    /// Picks uniformly (xorshift64*) among the unvisited points; one seed is
    /// one deterministic algorithm.
    SeededRandom { seed: u64 },
    /// Starts at 0; then takes the lowest unvisited neighbor of the best
    /// visited point that still has one (lowest value, then lowest index),
    /// falling back to the lowest unvisited point.
    GreedyNeighbor(Neighborhood),
    DecisionTree(DecisionTree),
}

impl SearchAlgorithm {
    /// The next point to query after `trace`. Returns whatever the rule says;
    /// [`run`] checks it is new and in range.
    pub fn next_point(&self, trace: &Trace, domain_size: usize) -> Result<usize> {
        let visited = trace.visited_mask(domain_size);
        let unvisited = || (0..domain_size).filter(|&x| !visited[x]);
        let exhausted = || Error::ProtocolViolation("no unvisited point left".into());
        match self {
            SearchAlgorithm::Lexicographic => unvisited().next().ok_or_else(exhausted),
            SearchAlgorithm::ReverseLexicographic => unvisited().next_back().ok_or_else(exhausted),
            SearchAlgorithm::SeededRandom { seed } => {
                let mut state = *seed;
                let mut rank = 0;
                // The state advances once per step, so step t uses the t-th output.
                for step in 0..=trace.len() {
                    let (r, s) = seeded_random_next(state, domain_size.saturating_sub(step).max(1));
                    rank = r;
                    state = s;
                }
                unvisited().nth(rank).ok_or_else(exhausted)
            }
            SearchAlgorithm::GreedyNeighbor(nb) => {
                if nb.size() != domain_size {
                    return Err(Error::SignatureMismatch {
                        expected: format!("neighborhood on {domain_size} points"),
                        found: format!("neighborhood on {} points", nb.size()),
                    });
                }
                if trace.is_empty() {
                    return Ok(0);
                }
                let mut ranked: Vec<(usize, usize)> = trace.steps().iter().map(|&(x, y)| (y, x)).collect();
                ranked.sort_unstable();
                ranked
                    .iter()
                    .find_map(|&(_, x)| nb.neighbors(x).find(|&n| !visited[n]))
                    .or_else(|| unvisited().next())
                    .ok_or_else(exhausted)
            }
            SearchAlgorithm::DecisionTree(tree) => tree.choice(&trace.values().0).ok_or_else(|| {
                Error::ProtocolViolation(format!("decision tree has no node for prefix {}", trace.values()))
            }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SearchAlgorithm::Lexicographic => "lexicographic".into(),
            SearchAlgorithm::ReverseLexicographic => "reverse-lexicographic".into(),
            SearchAlgorithm::SeededRandom { seed } => format!("seeded-random({seed})"),
            SearchAlgorithm::GreedyNeighbor(_) => "greedy-neighbor".into(),
            SearchAlgorithm::DecisionTree(tree) => format!("tree{tree}"),
        }
    }
}

/// Runs `algorithm` on `f` for `m` steps.
pub fn run(algorithm: &SearchAlgorithm, f: &FiniteFunction, m: usize) -> Result<(Trace, ValueSequence)> {
    let n = f.signature().domain_size();
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds domain size {n}")));
    }
    let mut trace = Trace::new();
    for _ in 0..m {
        let x = algorithm.next_point(&trace, n)?;
        if x >= n {
            return Err(Error::ProtocolViolation(format!(
                "{} proposed point {x} outside 0..{n}",
                algorithm.label()
            )));
        }
        if trace.visits(x) {
            return Err(Error::ProtocolViolation(format!(
                "{} revisited point {x}",
                algorithm.label()
            )));
        }
        trace.steps.push((x, f.value(x)));
    }
    let values = trace.values();
    Ok((trace, values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PerformanceMeasure {
    MinimumValue,
    /// The value observed at step `j` (1-indexed).
    ValueAtStep(usize),
    SumOfValues,
}

impl fmt::Display for PerformanceMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerformanceMeasure::MinimumValue => f.write_str("minimum-value"),
            PerformanceMeasure::ValueAtStep(j) => write!(f, "value-at-step({j})"),
            PerformanceMeasure::SumOfValues => f.write_str("sum-of-values"),
        }
    }
}

pub fn performance(measure: PerformanceMeasure, values: &ValueSequence) -> Result<Rational64> {
    let ys = &values.0;
    let as_rational = |v: usize| Rational64::from_integer(v as i64);
    match measure {
        PerformanceMeasure::MinimumValue => ys
            .iter()
            .min()
            .map(|&v| as_rational(v))
            .ok_or_else(|| Error::InvalidArgument("minimum of an empty sequence".into())),
        PerformanceMeasure::ValueAtStep(j) => match j.checked_sub(1).and_then(|i| ys.get(i)) {
            Some(&v) => Ok(as_rational(v)),
            None => Err(Error::InvalidArgument(format!(
                "step {j} out of range for a sequence of length {}",
                ys.len()
            ))),
        },
        PerformanceMeasure::SumOfValues => Ok(as_rational(ys.iter().sum())),
    }
}

/// Performance value `k` ↦ number of functions reaching it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerformanceTable {
    pub entries: BTreeMap<Rational64, BigUint>,
}

impl PerformanceTable {
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    fn add(&mut self, k: Rational64, count: BigUint) {
        *self.entries.entry(k).or_default() += count;
    }
}

impl fmt::Display for PerformanceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {c}")?;
        }
        f.write_str("}")
    }
}

pub fn performance_table(
    algorithm: &SearchAlgorithm,
    set: &FunctionSet,
    m: usize,
    measure: PerformanceMeasure,
) -> Result<PerformanceTable> {
    let mut table = PerformanceTable::default();
    for f in set {
        let (_, ys) = run(algorithm, f, m)?;
        table.add(performance(measure, &ys)?, BigUint::one());
    }
    Ok(table)
}

/// `{ Y(f, m, a) : f ∈ F }` with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SequenceMultiset {
    pub counts: BTreeMap<ValueSequence, u64>,
}

impl SequenceMultiset {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The performance table for `measure`, derived from the multiset alone.
    pub fn performance_table(&self, measure: PerformanceMeasure) -> Result<PerformanceTable> {
        let mut table = PerformanceTable::default();
        for (ys, &c) in &self.counts {
            table.add(performance(measure, ys)?, BigUint::from(c));
        }
        Ok(table)
    }
}

pub fn sequence_multiset(algorithm: &SearchAlgorithm, set: &FunctionSet, m: usize) -> Result<SequenceMultiset> {
    let mut ms = SequenceMultiset::default();
    for f in set {
        let (_, ys) = run(algorithm, f, m)?;
        *ms.counts.entry(ys).or_insert(0) += 1;
    }
    Ok(ms)
}

/// Number of depth-`m` decision trees, `Π_{i<m} (n-i)^{|Y|^i}`, or `None`
/// when the count is too large to write down (more than `2^(2^32)`).
pub fn count_decision_trees(signature: SpaceSignature, m: usize) -> Option<BigUint> {
    let n = signature.domain_size();
    if m > n {
        return Some(BigUint::from(0u8));
    }
    let mut total = BigUint::one();
    for i in 0..m {
        let choices = n - i;
        if choices == 1 {
            continue;
        }
        let nodes = u32::try_from(i)
            .ok()
            .and_then(|i| (signature.codomain_size() as u64).checked_pow(i))
            .and_then(|k| u32::try_from(k).ok())?;
        total *= BigUint::from(choices).pow(nodes);
        if total.bits() > 1 << 32 {
            return None;
        }
    }
    Some(total)
}

/// Every deterministic non-repeating depth-`m` decision tree, each once.
pub fn enumerate_algorithms(
    signature: SpaceSignature,
    m: usize,
    caps: &Caps,
) -> Result<std::vec::IntoIter<SearchAlgorithm>> {
    let n = signature.domain_size();
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("depth {m} must be in 1..={n}")));
    }
    match count_decision_trees(signature, m) {
        Some(count) if count <= BigUint::from(caps.max_algorithms) => {}
        Some(count) => return Err(Error::capacity("decision-tree count", count, caps.max_algorithms)),
        None => return Err(Error::capacity("decision-tree count", "more than 2^(2^32)", caps.max_algorithms)),
    }
    let trees = subtrees(&[], &mut vec![false; n], m, signature.codomain_size());
    Ok(trees
        .into_iter()
        .map(|nodes| SearchAlgorithm::DecisionTree(DecisionTree { nodes }))
        .collect::<Vec<_>>()
        .into_iter())
}

type Nodes = BTreeMap<Vec<usize>, usize>;

/// All subtrees rooted at `prefix` with `depth` levels left.
fn subtrees(prefix: &[usize], visited: &mut [bool], depth: usize, codomain: usize) -> Vec<Nodes> {
    let mut out = Vec::new();
    for x in 0..visited.len() {
        if visited[x] {
            continue;
        }
        let mut partial = vec![Nodes::from([(prefix.to_vec(), x)])];
        if depth > 1 {
            visited[x] = true;
            for y in 0..codomain {
                let mut child_prefix = prefix.to_vec();
                child_prefix.push(y);
                let children = subtrees(&child_prefix, visited, depth - 1, codomain);
                partial = partial
                    .iter()
                    .flat_map(|base| {
                        children.iter().map(move |child| {
                            let mut merged = base.clone();
                            merged.extend(child.iter().map(|(k, v)| (k.clone(), *v)));
                            merged
                        })
                    })
                    .collect();
            }
            visited[x] = false;
        }
        out.extend(partial);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NflReport {
    pub equal_for_all_pairs: bool,
    /// Indices `(a, b)` of two algorithms whose sequence multisets differ.
    pub witness: Option<(usize, usize)>,
}

/// Compares the sequence multisets of every algorithm pair on `set`.
pub fn verify_nfl(set: &FunctionSet, m: usize, algorithms: &[SearchAlgorithm]) -> Result<NflReport> {
    let multisets = algorithms
        .iter()
        .map(|a| sequence_multiset(a, set, m))
        .collect::<Result<Vec<_>>>()?;
    // Equality is an equivalence, so comparing against the first suffices.
    let witness = multisets
        .iter()
        .position(|ms| ms != &multisets[0])
        .map(|j| (0, j));
    Ok(NflReport {
        equal_for_all_pairs: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::hypercube_neighborhood;

    fn func(codomain: usize, values: &[usize]) -> FiniteFunction {
        FiniteFunction::from_values(codomain, values.to_vec()).unwrap()
    }

    fn sig(x: usize, y: usize) -> SpaceSignature {
        SpaceSignature::new(x, y).unwrap()
    }

    fn set(s: SpaceSignature, arrays: &[&[usize]]) -> FunctionSet {
        FunctionSet::from_value_arrays(s, arrays.iter().map(|a| a.to_vec())).unwrap()
    }

    fn r(v: i64) -> Rational64 {
        Rational64::from_integer(v)
    }

    #[test]
    fn run_examples() {
        let f = func(4, &[3, 1, 2]);
        let (_, ys) = run(&SearchAlgorithm::Lexicographic, &f, 3).unwrap();
        assert_eq!(ys.0, vec![3, 1, 2]);
        let (trace, ys) = run(&SearchAlgorithm::ReverseLexicographic, &f, 2).unwrap();
        assert_eq!(ys.0, vec![2, 1]);
        assert_eq!(trace.steps(), &[(2, 2), (1, 1)]);
        assert!(run(&SearchAlgorithm::Lexicographic, &f, 4).is_err());
    }

    #[test]
    fn greedy_hand_simulation() {
        // 0 (value 0) -> its lowest unvisited neighbor 1 -> 0 still has 2 ->
        // 0 is exhausted, 1 (value 1) has 3.
        let nb = hypercube_neighborhood(2, &Caps::default()).unwrap();
        let greedy = SearchAlgorithm::GreedyNeighbor(nb);
        let (trace, ys) = run(&greedy, &func(2, &[0, 1, 1, 0]), 4).unwrap();
        assert_eq!(trace.points().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(ys.0, vec![0, 1, 1, 0]);
        // Prefers neighbors of the lowest-valued point.
        let (trace, _) = run(&greedy, &func(3, &[2, 0, 1, 1]), 4).unwrap();
        assert_eq!(trace.points().collect::<Vec<_>>(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn greedy_falls_back_to_lowest_unvisited() {
        let nb = Neighborhood::from_edges(4, &[(2, 3)]).unwrap();
        let greedy = SearchAlgorithm::GreedyNeighbor(nb);
        let (trace, _) = run(&greedy, &func(2, &[1, 0, 0, 1]), 4).unwrap();
        assert_eq!(trace.points().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn xorshift_golden_values() {
        // Frozen from an independent evaluation of the xorshift64* recurrence.
        let (rank, state) = seeded_random_next(1, 4);
        assert_eq!(state, 0x0000_0000_0200_0001);
        assert_eq!(rank, 1);
        assert_eq!(seeded_random_next(1, 1).0, 0);
        assert_eq!(seeded_random_next(12345, 1).0, 0);
        assert_eq!(seeded_random_next(0, 7), seeded_random_next(ZERO_SEED_REPLACEMENT, 7));
    }

    #[test]
    fn seeded_random_is_deterministic_and_non_repeating() {
        let f = func(3, &[2, 0, 1, 2, 1, 0]);
        for seed in [0, 1, 42, u64::MAX] {
            let a = SearchAlgorithm::SeededRandom { seed };
            let (t1, _) = run(&a, &f, 6).unwrap();
            let (t2, _) = run(&a, &f, 6).unwrap();
            assert_eq!(t1, t2);
            let mut pts: Vec<usize> = t1.points().collect();
            pts.sort_unstable();
            assert_eq!(pts, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn faulty_tree_is_a_protocol_violation() {
        let tree = DecisionTree::new(BTreeMap::from([(vec![], 0), (vec![0], 0), (vec![1], 1)]));
        let err = run(&SearchAlgorithm::DecisionTree(tree), &func(2, &[0, 1]), 2).unwrap_err();
        assert!(matches!(err, Error::ProtocolViolation(_)));
        let tree = DecisionTree::new(BTreeMap::from([(vec![], 5)]));
        let err = run(&SearchAlgorithm::DecisionTree(tree), &func(2, &[0, 1]), 1).unwrap_err();
        assert!(matches!(err, Error::ProtocolViolation(_)));
        let tree = DecisionTree::new(BTreeMap::from([(vec![], 0)]));
        let err = run(&SearchAlgorithm::DecisionTree(tree), &func(2, &[0, 1]), 2).unwrap_err();
        assert!(matches!(err, Error::ProtocolViolation(_)));
    }

    #[test]
    fn performance_examples() {
        let ys = ValueSequence(vec![3, 1, 2]);
        assert_eq!(performance(PerformanceMeasure::MinimumValue, &ys).unwrap(), r(1));
        assert_eq!(performance(PerformanceMeasure::ValueAtStep(2), &ys).unwrap(), r(1));
        assert_eq!(performance(PerformanceMeasure::SumOfValues, &ys).unwrap(), r(6));
        assert!(performance(PerformanceMeasure::ValueAtStep(4), &ys).is_err());
        assert!(performance(PerformanceMeasure::ValueAtStep(0), &ys).is_err());
    }

    #[test]
    fn performance_table_examples() {
        let full = FunctionSet::full(sig(2, 2), &Caps::default()).unwrap();
        let t = performance_table(&SearchAlgorithm::Lexicographic, &full, 2, PerformanceMeasure::MinimumValue).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(r(0), BigUint::from(3u8)), (r(1), BigUint::from(1u8))]));
        assert_eq!(t.total(), BigUint::from(4u8));
        assert_eq!(t.to_string(), "{0: 3, 1: 1}");

        let constant = set(sig(2, 2), &[&[1, 1]]);
        let t = performance_table(&SearchAlgorithm::ReverseLexicographic, &constant, 2, PerformanceMeasure::SumOfValues).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(r(2), BigUint::from(1u8))]));

        let single = set(sig(2, 2), &[&[0, 1]]);
        let step1 = PerformanceMeasure::ValueAtStep(1);
        let lex = performance_table(&SearchAlgorithm::Lexicographic, &single, 1, step1).unwrap();
        let rev = performance_table(&SearchAlgorithm::ReverseLexicographic, &single, 1, step1).unwrap();
        assert_eq!(lex.entries, BTreeMap::from([(r(0), BigUint::from(1u8))]));
        assert_eq!(rev.entries, BTreeMap::from([(r(1), BigUint::from(1u8))]));
    }

    #[test]
    fn sequence_multiset_examples() {
        let full = FunctionSet::full(sig(2, 2), &Caps::default()).unwrap();
        let ms = sequence_multiset(&SearchAlgorithm::Lexicographic, &full, 2).unwrap();
        assert_eq!(ms.counts.len(), 4);
        assert!(ms.counts.values().all(|&c| c == 1));

        let single = set(sig(2, 2), &[&[0, 1]]);
        let lex = sequence_multiset(&SearchAlgorithm::Lexicographic, &single, 2).unwrap();
        let rev = sequence_multiset(&SearchAlgorithm::ReverseLexicographic, &single, 2).unwrap();
        assert_eq!(lex.counts.keys().next().unwrap().0, vec![0, 1]);
        assert_eq!(rev.counts.keys().next().unwrap().0, vec![1, 0]);

        let orbit = set(sig(3, 2), &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let lex = sequence_multiset(&SearchAlgorithm::Lexicographic, &orbit, 3).unwrap();
        let rev = sequence_multiset(&SearchAlgorithm::ReverseLexicographic, &orbit, 3).unwrap();
        assert_eq!(lex, rev);
        let seqs: Vec<Vec<usize>> = lex.counts.keys().map(|s| s.0.clone()).collect();
        assert_eq!(seqs, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn algorithm_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_algorithms(sig(2, 2), 2, &caps).unwrap().count(), 2);
        assert_eq!(enumerate_algorithms(sig(3, 2), 2, &caps).unwrap().count(), 12);
        assert_eq!(enumerate_algorithms(sig(3, 2), 3, &caps).unwrap().count(), 12);
        assert_eq!(enumerate_algorithms(sig(1, 5), 1, &caps).unwrap().count(), 1);
        assert_eq!(enumerate_algorithms(sig(2, 3), 2, &caps).unwrap().count(), 2);
        assert_eq!(count_decision_trees(sig(4, 2), 3), Some(BigUint::from(4u32 * 9 * 16)));
        assert_eq!(enumerate_algorithms(sig(4, 2), 3, &caps).unwrap().count(), 4 * 9 * 16);
        assert!(enumerate_algorithms(sig(3, 2), 4, &caps).is_err());
        assert!(enumerate_algorithms(sig(8, 4), 5, &caps).unwrap_err().is_capacity());
    }

    #[test]
    fn enumerated_trees_are_distinct_and_valid() {
        let caps = Caps::default();
        let s = sig(3, 2);
        let trees: Vec<SearchAlgorithm> = enumerate_algorithms(s, 3, &caps).unwrap().collect();
        let distinct: std::collections::HashSet<&SearchAlgorithm> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
        let full = FunctionSet::full(s, &caps).unwrap();
        for t in &trees {
            for f in &full {
                run(t, f, 3).unwrap();
            }
        }
    }

    #[test]
    fn verify_nfl_examples() {
        let caps = Caps::default();
        let full = FunctionSet::full(sig(3, 2), &caps).unwrap();
        let algs: Vec<SearchAlgorithm> = enumerate_algorithms(sig(3, 2), 3, &caps).unwrap().collect();
        assert!(verify_nfl(&full, 3, &algs).unwrap().equal_for_all_pairs);

        let single = set(sig(3, 2), &[&[0, 1, 1]]);
        let pair = [SearchAlgorithm::Lexicographic, SearchAlgorithm::ReverseLexicographic];
        let report = verify_nfl(&single, 1, &pair).unwrap();
        assert!(!report.equal_for_all_pairs);
        assert_eq!(report.witness, Some((0, 1)));

        let orbit = set(sig(3, 2), &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert!(verify_nfl(&orbit, 2, &pair).unwrap().equal_for_all_pairs);
    }
}
