//! Exact enumeration tools for permutation-closed function classes on finite
//! search spaces.
//!
//! * [`space`]: functions `X → Y`, permutations, Y-histograms, orbits.
//! * [`combinatorics`]: exact counts of histograms, orbits and closed subsets.
//! * [`cup`]: the closed-under-permutation test, closure and basis-class decomposition.
//! * [`landscape`]: neighborhoods, steepness and local minima, constraint classes.
//! * [`harness`]: deterministic black-box search and exhaustive No-Free-Lunch checks.

pub mod combinatorics;
pub mod cup;
pub mod error;
pub mod harness;
pub mod landscape;
pub mod space;

pub use combinatorics::{
    binomial, count_all_subsets, count_cup_subsets, count_histograms, cup_fraction, fraction_table,
    multinomial, BigCount, FractionCell, LogFraction,
};
pub use cup::{closure, cup_status, decompose, is_cup, BasisClass, BasisDecomposition, CupStatus, Membership};
pub use error::{Error, Result};
pub use harness::{
    enumerate_algorithms, performance, performance_table, run, seeded_random_next, sequence_multiset,
    verify_nfl, DecisionTree, NflReport, PerformanceMeasure, PerformanceTable, SearchAlgorithm,
    SequenceMultiset, Trace, ValueSequence,
};
pub use landscape::{
    build_constraint_class, count_local_minima, find_noninvariant_permutation, hypercube_neighborhood,
    is_nontrivial, max_minima_over_histogram, max_steepness, product_neighborhood, range_diameter,
    witness_not_cup, Constraint, ConstraintClass, Neighborhood, ValueMetric, Witness,
};
pub use space::{
    compose, enumerate_functions, enumerate_histograms, find_permutation, histogram_of, orbit, Caps,
    FiniteFunction, FunctionSet, Histogram, Permutation, SpaceSignature,
};
