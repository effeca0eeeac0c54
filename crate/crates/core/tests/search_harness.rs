use nfl_core::{
    closure, compose, enumerate_algorithms, enumerate_functions, hypercube_neighborhood, is_cup,
    performance_table, sequence_multiset, verify_nfl, Caps, FiniteFunction, FunctionSet,
    PerformanceMeasure, Permutation, SearchAlgorithm, SpaceSignature,
};

fn sig(x: usize, y: usize) -> SpaceSignature {
    SpaceSignature::new(x, y).unwrap()
}

fn builtins(n: usize) -> Vec<SearchAlgorithm> {
    let mut algs = vec![
        SearchAlgorithm::Lexicographic,
        SearchAlgorithm::ReverseLexicographic,
        SearchAlgorithm::SeededRandom { seed: 0 },
        SearchAlgorithm::SeededRandom { seed: 7 },
    ];
    if n.is_power_of_two() && n > 1 {
        let bits = n.trailing_zeros();
        algs.push(SearchAlgorithm::GreedyNeighbor(hypercube_neighborhood(bits, &Caps::default()).unwrap()));
    }
    algs
}

const MEASURES: [PerformanceMeasure; 4] = [
    PerformanceMeasure::MinimumValue,
    PerformanceMeasure::SumOfValues,
    PerformanceMeasure::ValueAtStep(1),
    PerformanceMeasure::ValueAtStep(2),
];

#[test]
fn full_length_runs_biject_onto_value_sequences() {
    let caps = Caps::default();
    for s in [sig(3, 2), sig(2, 3), sig(4, 2)] {
        let full = FunctionSet::full(s, &caps).unwrap();
        for a in builtins(s.domain_size()) {
            let ms = sequence_multiset(&a, &full, s.domain_size()).unwrap();
            assert_eq!(ms.counts.len() as u64, s.function_count_u64().unwrap());
            assert!(ms.counts.values().all(|&c| c == 1));
        }
    }
}

#[test]
fn tables_are_functions_of_the_multiset() {
    let caps = Caps::default();
    let s = sig(4, 2);
    let fs: Vec<FiniteFunction> = enumerate_functions(s, &caps).unwrap().collect();
    // A handful of structured subsets: prefixes, strides and orbits.
    let mut sets = Vec::new();
    for k in [1, 3, 7, 16] {
        sets.push(FunctionSet::from_functions(s, fs.iter().take(k).cloned()).unwrap());
        sets.push(FunctionSet::from_functions(s, fs.iter().step_by(k).cloned()).unwrap());
    }
    sets.push(closure(&FunctionSet::from_functions(s, [fs[3].clone()]).unwrap(), &caps).unwrap());
    for set in &sets {
        for a in builtins(4) {
            let ms = sequence_multiset(&a, set, 3).unwrap();
            for c in MEASURES {
                assert_eq!(ms.performance_table(c).unwrap(), performance_table(&a, set, 3, c).unwrap());
            }
        }
        // Equal multisets ⇒ equal tables for every measure.
        for a in builtins(4) {
            for b in builtins(4) {
                let (ma, mb) = (sequence_multiset(&a, set, 3).unwrap(), sequence_multiset(&b, set, 3).unwrap());
                if ma == mb {
                    for c in MEASURES {
                        assert_eq!(ma.performance_table(c).unwrap(), mb.performance_table(c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_multiset_is_transport_invariant() {
    let caps = Caps::default();
    let s = sig(4, 3);
    let perms: Vec<Permutation> = Permutation::all(4).collect();
    for f in enumerate_functions(s, &caps).unwrap().step_by(5) {
        let base = closure(&FunctionSet::from_functions(s, [f.clone()]).unwrap(), &caps).unwrap();
        for p in perms.iter().step_by(5) {
            let moved = FunctionSet::from_functions(s, [compose(&f, p).unwrap()]).unwrap();
            let moved = closure(&moved, &caps).unwrap();
            for a in builtins(4) {
                assert_eq!(
                    sequence_multiset(&a, &base, 3).unwrap(),
                    sequence_multiset(&a, &moved, 3).unwrap()
                );
            }
        }
    }
}

#[test]
fn builtins_agree_on_every_cup_set_of_four_points() {
    // Forward direction with the built-in algorithms on (4,2): every union of
    // basis classes gives identical multisets at every horizon.
    let caps = Caps::default();
    let s = sig(4, 2);
    let fs: Vec<FiniteFunction> = enumerate_functions(s, &caps).unwrap().collect();
    for mask in 1u32..(1 << 16) {
        let set = FunctionSet::from_functions(
            s,
            fs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone()),
        )
        .unwrap();
        if !is_cup(&set) {
            continue;
        }
        for m in 1..=4 {
            assert!(verify_nfl(&set, m, &builtins(4)).unwrap().equal_for_all_pairs);
        }
    }
}

#[test]
fn decision_trees_separate_a_non_cup_set() {
    let caps = Caps::default();
    let s = sig(4, 2);
    let algs: Vec<SearchAlgorithm> = enumerate_algorithms(s, 2, &caps).unwrap().collect();
    let set = FunctionSet::from_value_arrays(s, [vec![0, 0, 1, 1], vec![1, 1, 0, 0]]).unwrap();
    assert!(!is_cup(&set));
    let report = verify_nfl(&set, 2, &algs).unwrap();
    assert!(!report.equal_for_all_pairs);
    let (a, b) = report.witness.unwrap();
    assert_ne!(
        sequence_multiset(&algs[a], &set, 2).unwrap(),
        sequence_multiset(&algs[b], &set, 2).unwrap()
    );
}
