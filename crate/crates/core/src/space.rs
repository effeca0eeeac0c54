//! Finite function spaces `Y^X`, permutations of the search space, Y-histograms
//! and the permutation-orbit machinery built on them.
//!
//! Search points and cost values are always canonical indices: `X = 0..domain_size`
//! and `Y = 0..codomain_size`. A function is stored as its value array.
//!
//! Composition follows `(f∘π)(x) = f(π(x))`, so `compose(f, p).values[i] == f.values[p.mapping[i]]`.

use std::cmp::Ordering;
use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combinatorics::multinomial;
use crate::error::{Error, Result};

/// Limits applied to every exhaustive enumeration so that brute force fails
/// loudly instead of hanging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of functions materialized by any one enumeration
    /// (function spaces, orbits, closures, constraint classes).
    pub max_functions: u64,
    /// Maximum domain size accepted by [`orbit`].
    pub max_orbit_domain: usize,
    /// Maximum number of bits for dense hypercube neighborhoods.
    pub max_hypercube_bits: u32,
    /// Maximum number of decision trees produced by algorithm enumeration.
    pub max_algorithms: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_functions: 1 << 24,
            max_orbit_domain: 12,
            max_hypercube_bits: 12,
            max_algorithms: 1 << 20,
        }
    }
}

impl Caps {
    pub fn with_max_functions(mut self, max_functions: u64) -> Self {
        self.max_functions = max_functions;
        self
    }
}

/// The pair `(|X|, |Y|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSignature {
    domain_size: usize,
    codomain_size: usize,
}

impl SpaceSignature {
    pub fn new(domain_size: usize, codomain_size: usize) -> Result<Self> {
        if domain_size == 0 || codomain_size == 0 {
            return Err(Error::InvalidArgument(format!(
                "space sizes must be positive, got ({domain_size},{codomain_size})"
            )));
        }
        Ok(SpaceSignature {
            domain_size,
            codomain_size,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    /// `|Y|^|X|` as an exact integer.
    pub fn function_count(&self) -> BigUint {
        BigUint::from(self.codomain_size).pow(self.domain_size as u32)
    }

    /// `|Y|^|X|` if it fits in a `u64`.
    pub fn function_count_u64(&self) -> Option<u64> {
        let exp = u32::try_from(self.domain_size).ok()?;
        (self.codomain_size as u64).checked_pow(exp)
    }

    fn check_same(&self, other: &SpaceSignature) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SpaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.domain_size, self.codomain_size)
    }
}

/// A total map `X → Y` stored as a value array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFunction {
    signature: SpaceSignature,
    values: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(signature: SpaceSignature, values: Vec<usize>) -> Result<Self> {
        if values.len() != signature.domain_size {
            return Err(Error::SignatureMismatch {
                expected: format!("{} values", signature.domain_size),
                found: format!("{} values", values.len()),
            });
        }
        if let Some((x, &y)) = values
            .iter()
            .enumerate()
            .find(|(_, &y)| y >= signature.codomain_size)
        {
            return Err(Error::InvalidArgument(format!(
                "value {y} at point {x} is outside 0..{}",
                signature.codomain_size
            )));
        }
        Ok(FiniteFunction { signature, values })
    }

    /// Builds a function whose codomain is exactly `0..codomain_size`.
    pub fn from_values(codomain_size: usize, values: Vec<usize>) -> Result<Self> {
        let sig = SpaceSignature::new(values.len(), codomain_size)?;
        FiniteFunction::new(sig, values)
    }

    pub fn signature(&self) -> SpaceSignature {
        self.signature
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn histogram(&self) -> Histogram {
        histogram_of(self)
    }

    /// Rank of this function in the lexicographic enumeration of `Y^X`.
    pub fn lex_index(&self) -> BigUint {
        let base = BigUint::from(self.signature.codomain_size);
        self.values
            .iter()
            .fold(BigUint::from(0u8), |acc, &v| acc * &base + BigUint::from(v))
    }
}

impl fmt::Display for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_index_list(f, &self.values)
    }
}

fn write_index_list(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(Error::InvalidArgument(format!(
                    "{mapping:?} is not a permutation of 0..{}",
                    mapping.len()
                )));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// The transposition of `i` and `j` on `0..n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "transposition ({i} {j}) out of range for 0..{n}"
            )));
        }
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(i, j);
        Ok(Permutation { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `self ∘ inner`, i.e. `result[i] = self[inner[i]]`.
    pub fn after(&self, inner: &Permutation) -> Result<Permutation> {
        if self.len() != inner.len() {
            return Err(Error::SignatureMismatch {
                expected: format!("permutation of {} points", self.len()),
                found: format!("permutation of {} points", inner.len()),
            });
        }
        Ok(Permutation {
            mapping: inner.mapping.iter().map(|&i| self.mapping[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            mapping[m] = i;
        }
        Permutation { mapping }
    }

    /// Iterates over all `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_index_list(f, &self.mapping)
    }
}

#[derive(Debug)]
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { mapping: current })
    }
}

/// Advances `items` to the next lexicographically greater arrangement.
/// Returns `false` (leaving `items` untouched) when it is already the last one.
/// Repeated entries yield each distinct arrangement once.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// A Y-histogram: `counts[y]` is the size of the preimage of `y`.
///
/// Histograms are ordered by the lexicographic order of their sorted
/// representative function (e.g. for `(2,2)`: `[2,0] < [1,1] < [0,2]`), which is
/// descending lexicographic order on `counts`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Histogram {
    signature: SpaceSignature,
    counts: Vec<usize>,
}

impl Histogram {
    pub fn new(signature: SpaceSignature, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != signature.codomain_size {
            return Err(Error::SignatureMismatch {
                expected: format!("{} counts", signature.codomain_size),
                found: format!("{} counts", counts.len()),
            });
        }
        let total: usize = counts.iter().sum();
        if total != signature.domain_size {
            return Err(Error::InvalidArgument(format!(
                "histogram counts sum to {total}, domain size is {}",
                signature.domain_size
            )));
        }
        Ok(Histogram { signature, counts })
    }

    /// Builds a histogram over `(Σ counts, counts.len())`.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        let sig = SpaceSignature::new(counts.iter().sum(), counts.len())?;
        Histogram::new(sig, counts)
    }

    pub fn signature(&self) -> SpaceSignature {
        self.signature
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The sorted (lexicographically smallest) function with this histogram.
    pub fn representative(&self) -> FiniteFunction {
        let values = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(y, &c)| std::iter::repeat_n(y, c))
            .collect();
        FiniteFunction {
            signature: self.signature,
            values,
        }
    }
}

impl Ord for Histogram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signature
            .cmp(&other.signature)
            .then_with(|| other.counts.cmp(&self.counts))
    }
}

impl PartialOrd for Histogram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Histogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_index_list(f, &self.counts)
    }
}

/// A deduplicated set of functions over one signature, iterated in
/// lexicographic order of value arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionSet {
    signature: SpaceSignature,
    members: BTreeSet<FiniteFunction>,
}

impl FunctionSet {
    pub fn empty(signature: SpaceSignature) -> Self {
        FunctionSet {
            signature,
            members: BTreeSet::new(),
        }
    }

    pub fn from_functions<I>(signature: SpaceSignature, functions: I) -> Result<Self>
    where
        I: IntoIterator<Item = FiniteFunction>,
    {
        let mut set = FunctionSet::empty(signature);
        for f in functions {
            set.insert(f)?;
        }
        Ok(set)
    }

    /// Convenience constructor from raw value arrays.
    pub fn from_value_arrays<I>(signature: SpaceSignature, arrays: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut set = FunctionSet::empty(signature);
        for values in arrays {
            set.insert(FiniteFunction::new(signature, values)?)?;
        }
        Ok(set)
    }

    /// The whole space `Y^X`.
    pub fn full(signature: SpaceSignature, caps: &Caps) -> Result<Self> {
        Ok(FunctionSet {
            signature,
            members: enumerate_functions(signature, caps)?.collect(),
        })
    }

    /// Returns `true` if `f` was not already present.
    pub fn insert(&mut self, f: FiniteFunction) -> Result<bool> {
        self.signature.check_same(&f.signature)?;
        Ok(self.members.insert(f))
    }

    pub fn signature(&self) -> SpaceSignature {
        self.signature
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &FiniteFunction) -> bool {
        self.members.contains(f)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, FiniteFunction> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &FunctionSet) -> bool {
        self.signature == other.signature && self.members.is_subset(&other.members)
    }

    pub fn union_with(&mut self, other: &FunctionSet) -> Result<()> {
        self.signature.check_same(&other.signature)?;
        self.members.extend(other.members.iter().cloned());
        Ok(())
    }
}

impl<'a> IntoIterator for &'a FunctionSet {
    type Item = &'a FiniteFunction;
    type IntoIter = btree_set::Iter<'a, FiniteFunction>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `(f∘p)`, with `result[i] = f[p[i]]`.
pub fn compose(f: &FiniteFunction, p: &Permutation) -> Result<FiniteFunction> {
    if f.values.len() != p.len() {
        return Err(Error::SignatureMismatch {
            expected: format!("permutation of {} points", f.values.len()),
            found: format!("permutation of {} points", p.len()),
        });
    }
    Ok(FiniteFunction {
        signature: f.signature,
        values: p.mapping.iter().map(|&i| f.values[i]).collect(),
    })
}

pub fn histogram_of(f: &FiniteFunction) -> Histogram {
    let mut counts = vec![0; f.signature.codomain_size];
    for &y in &f.values {
        counts[y] += 1;
    }
    Histogram {
        signature: f.signature,
        counts,
    }
}

/// Finds `p` with `compose(f, p) == g`, or `None` when the histograms differ.
///
/// Within each preimage class the `k`-th point of `g^{-1}(y)` is sent to the
/// `k`-th point of `f^{-1}(y)` (both ascending), so the result is unique.
pub fn find_permutation(f: &FiniteFunction, g: &FiniteFunction) -> Result<Option<Permutation>> {
    f.signature.check_same(&g.signature)?;
    let codomain = f.signature.codomain_size;
    let mut f_preimages: Vec<Vec<usize>> = vec![Vec::new(); codomain];
    for (x, &y) in f.values.iter().enumerate() {
        f_preimages[y].push(x);
    }
    let mut next_in_class = vec![0usize; codomain];
    let mut mapping = Vec::with_capacity(g.values.len());
    for &y in &g.values {
        match f_preimages[y].get(next_in_class[y]) {
            Some(&x) => {
                mapping.push(x);
                next_in_class[y] += 1;
            }
            None => return Ok(None),
        }
    }
    // Every point of g is matched; equal lengths force equal histograms.
    Ok(Some(Permutation { mapping }))
}

/// The permutation orbit `{ f∘p : p ∈ P(X) }`, i.e. the basis class of `f`'s histogram.
///
/// Enumerates distinct rearrangements of the value array rather than all `|X|!`
/// permutations.
pub fn orbit(f: &FiniteFunction, caps: &Caps) -> Result<FunctionSet> {
    let n = f.signature.domain_size;
    if n > caps.max_orbit_domain {
        return Err(Error::capacity("orbit domain size", n, caps.max_orbit_domain));
    }
    let size = multinomial(&histogram_of(f));
    if size > BigUint::from(caps.max_functions) {
        return Err(Error::capacity("orbit size", &size, caps.max_functions));
    }
    let mut values = f.values.clone();
    values.sort_unstable();
    let mut members = BTreeSet::new();
    loop {
        members.insert(FiniteFunction {
            signature: f.signature,
            values: values.clone(),
        });
        if !next_permutation(&mut values) {
            break;
        }
    }
    debug_assert_eq!(size.to_usize(), Some(members.len()));
    Ok(FunctionSet {
        signature: f.signature,
        members,
    })
}

/// All `|Y|^|X|` functions in lexicographic order of value arrays.
pub fn enumerate_functions(signature: SpaceSignature, caps: &Caps) -> Result<FunctionIter> {
    match signature.function_count_u64() {
        Some(count) if count <= caps.max_functions => Ok(FunctionIter {
            signature,
            next: Some(vec![0; signature.domain_size]),
        }),
        _ => Err(Error::capacity(
            "function space size",
            signature.function_count(),
            caps.max_functions,
        )),
    }
}

#[derive(Debug)]
pub struct FunctionIter {
    signature: SpaceSignature,
    next: Option<Vec<usize>>,
}

impl Iterator for FunctionIter {
    type Item = FiniteFunction;

    fn next(&mut self) -> Option<FiniteFunction> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let base = self.signature.codomain_size;
        // Odometer, last position fastest.
        for pos in (0..succ.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < base {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(FiniteFunction {
            signature: self.signature,
            values: current,
        })
    }
}

/// All `C(|X|+|Y|-1, |X|)` histograms, starting at `[|X|,0,…,0]` and ending at
/// `[0,…,0,|X|]` (the [`Histogram`] order).
pub fn enumerate_histograms(signature: SpaceSignature) -> HistogramIter {
    let mut first = vec![0; signature.codomain_size];
    first[0] = signature.domain_size;
    HistogramIter {
        signature,
        next: Some(first),
    }
}

#[derive(Debug)]
pub struct HistogramIter {
    signature: SpaceSignature,
    next: Option<Vec<usize>>,
}

impl Iterator for HistogramIter {
    type Item = Histogram;

    fn next(&mut self) -> Option<Histogram> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        let tail = succ[k - 1];
        succ[k - 1] = 0;
        if let Some(i) = (0..k - 1).rev().find(|&i| succ[i] > 0) {
            succ[i] -= 1;
            succ[i + 1] = tail + 1;
            self.next = Some(succ);
        }
        Some(Histogram {
            signature: self.signature,
            counts: current,
        })
    }
}
