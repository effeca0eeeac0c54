//! Neighborhood structure on the search space and the function classes it
//! induces.
//!
//! A non-trivial neighborhood is never permutation invariant, so any function
//! class defined by a binding bound on a neighborhood measure (maximum
//! steepness, number of local minima) can be shown not to be c.u.p. by an
//! explicit witness: a member `g` and a permutation `p` such that `g∘p`
//! breaks the bound.
//!
//! Conventions: the adjacency diagonal is always `false`; a point without any
//! neighbor counts as a local minimum; every argmax picks the lowest index.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::{
    compose, find_permutation, histogram_of, orbit, Caps, FiniteFunction, FunctionSet, Histogram,
    Permutation, SpaceSignature,
};

/// A symmetric, irreflexive relation on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    size: usize,
    adjacency: Vec<bool>,
}

impl Neighborhood {
    pub fn empty(size: usize) -> Self {
        Neighborhood {
            size,
            adjacency: vec![false; size * size],
        }
    }

    /// Builds an undirected relation from an edge list. Duplicate edges are
    /// fine; self-loops are rejected.
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut nb = Neighborhood::empty(size);
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) out of range for {size} points"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at point {a}")));
            }
            nb.set(a, b);
        }
        Ok(nb)
    }

    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let size = rows.len();
        check_square(rows, "adjacency")?;
        let mut nb = Neighborhood::empty(size);
        for (i, row) in rows.iter().enumerate() {
            for (j, &adjacent) in row.iter().enumerate() {
                if adjacent != rows[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency is not symmetric at ({i},{j})"
                    )));
                }
                if i == j && adjacent {
                    return Err(Error::InvalidArgument(format!("self-loop at point {i}")));
                }
                if adjacent {
                    nb.set(i, j);
                }
            }
        }
        Ok(nb)
    }

    fn set(&mut self, a: usize, b: usize) {
        self.adjacency[a * self.size + b] = true;
        self.adjacency[b * self.size + a] = true;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_neighbor(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.size + b]
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adjacency[x * self.size..(x + 1) * self.size];
        row.iter().enumerate().filter(|(_, &a)| a).map(|(j, _)| j)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.neighbors(x).count()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in a + 1..self.size {
                if self.is_neighbor(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_domain(&self, signature: SpaceSignature) -> Result<()> {
        if self.size != signature.domain_size() {
            return Err(Error::SignatureMismatch {
                expected: format!("neighborhood on {} points", signature.domain_size()),
                found: format!("neighborhood on {} points", self.size),
            });
        }
        Ok(())
    }
}

fn check_square<T>(rows: &[Vec<T>], what: &str) -> Result<()> {
    match rows.iter().position(|r| r.len() != rows.len()) {
        Some(i) => Err(Error::InvalidArgument(format!(
            "{what} row {i} has {} entries, expected {}",
            rows[i].len(),
            rows.len()
        ))),
        None => Ok(()),
    }
}

/// Distances between cost values: symmetric, zero on the diagonal, positive off it.
/// The triangle inequality is not required (see [`ValueMetric::satisfies_triangle_inequality`]).
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMetric {
    size: usize,
    distance: Vec<f64>,
}

impl ValueMetric {
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        check_square(rows, "metric")?;
        let mut distance = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                let ok = if i == j {
                    d == 0.0
                } else {
                    d.is_finite() && d > 0.0 && d == rows[j][i]
                };
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "metric entry ({i},{j}) = {d} violates symmetry, zero diagonal or positivity"
                    )));
                }
                distance.push(d);
            }
        }
        if size == 0 {
            return Err(Error::InvalidArgument("metric over an empty value set".into()));
        }
        Ok(ValueMetric { size, distance })
    }

    /// Row-major upper triangle: `d(0,1), d(0,2), …, d(0,n-1), d(1,2), …`.
    pub fn from_upper_triangle(size: usize, values: &[f64]) -> Result<Self> {
        let expected = size * size.saturating_sub(1) / 2;
        if values.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "upper triangle for {size} values needs {expected} entries, got {}",
                values.len()
            )));
        }
        let mut rows = vec![vec![0.0; size]; size];
        let mut it = values.iter();
        #[allow(clippy::needless_range_loop)]
        for i in 0..size {
            for j in i + 1..size {
                let d = *it.next().expect("length checked");
                rows[i][j] = d;
                rows[j][i] = d;
            }
        }
        ValueMetric::from_matrix(&rows)
    }

    /// `|i - j|` on value indices.
    pub fn absolute(size: usize) -> Self {
        let distance = (0..size)
            .flat_map(|i| (0..size).map(move |j| i.abs_diff(j) as f64))
            .collect();
        ValueMetric { size, distance }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.distance[a * self.size + b]
    }

    pub fn upper_triangle(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i + 1..self.size {
                out.push(self.distance(i, j));
            }
        }
        out
    }

    pub fn satisfies_triangle_inequality(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.distance(a, c) <= self.distance(a, b) + self.distance(b, c)))
        })
    }

    fn check_codomain(&self, signature: SpaceSignature) -> Result<()> {
        if self.size != signature.codomain_size() {
            return Err(Error::SignatureMismatch {
                expected: format!("metric on {} values", signature.codomain_size()),
                found: format!("metric on {} values", self.size),
            });
        }
        Ok(())
    }
}

/// Some distinct pair is neighbored and some distinct pair is not.
pub fn is_nontrivial(nb: &Neighborhood) -> bool {
    first_pair(nb, true).is_some() && first_pair(nb, false).is_some()
}

fn first_pair(nb: &Neighborhood, adjacent: bool) -> Option<(usize, usize)> {
    (0..nb.size)
        .flat_map(|a| (a + 1..nb.size).map(move |b| (a, b)))
        .find(|&(a, b)| nb.is_neighbor(a, b) == adjacent)
}

/// First pair `(a, b)`, `a < b`, with `n(a,b) != n(p(a),p(b))`.
pub fn invariance_violation(nb: &Neighborhood, p: &Permutation) -> Option<(usize, usize)> {
    (0..nb.size)
        .flat_map(|a| (a + 1..nb.size).map(move |b| (a, b)))
        .find(|&(a, b)| nb.is_neighbor(a, b) != nb.is_neighbor(p.apply(a), p.apply(b)))
}

/// Maps the first non-neighbor pair `(i, j)` onto the first neighbor pair
/// `(k, l)`; the other points fill the remaining targets in ascending order.
/// The result breaks invariance at `(i, j)`.
pub fn find_noninvariant_permutation(nb: &Neighborhood) -> Result<Permutation> {
    let (Some((i, j)), Some((k, l))) = (first_pair(nb, false), first_pair(nb, true)) else {
        return Err(Error::Precondition(
            "neighborhood is trivial (needs both a neighbor and a non-neighbor pair)".into(),
        ));
    };
    Permutation::new(pin_pair(nb.size, (i, k), (j, l)))
}

/// A mapping with `m[a] = b` and `m[c] = d`, filling the rest in ascending order.
fn pin_pair(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> Vec<usize> {
    let mut mapping = vec![usize::MAX; n];
    mapping[a] = b;
    mapping[c] = d;
    let mut targets = (0..n).filter(|&t| t != b && t != d);
    for slot in mapping.iter_mut().filter(|m| **m == usize::MAX) {
        *slot = targets.next().expect("as many targets as free slots");
    }
    mapping
}

/// Hamming-distance-one relation on `{0,1}^bits`, points read as bit strings.
pub fn hypercube_neighborhood(bits: u32, caps: &Caps) -> Result<Neighborhood> {
    if bits == 0 {
        return Err(Error::InvalidArgument("hypercube needs at least one bit".into()));
    }
    if bits > caps.max_hypercube_bits {
        return Err(Error::capacity("hypercube bits", bits, caps.max_hypercube_bits));
    }
    let size = 1usize << bits;
    let mut nb = Neighborhood::empty(size);
    for x in 0..size {
        for b in 0..bits {
            nb.set(x, x ^ (1 << b));
        }
    }
    Ok(nb)
}

/// The relation on `X_1 × … × X_l` under which two points are neighbors iff
/// their `component_index`-th coordinates are neighbors under `component`.
///
/// Points are indexed in mixed radix with the last component varying fastest.
pub fn product_neighborhood(
    component_sizes: &[usize],
    component_index: usize,
    component: &Neighborhood,
    caps: &Caps,
) -> Result<Neighborhood> {
    let Some(&size_i) = component_sizes.get(component_index) else {
        return Err(Error::InvalidArgument(format!(
            "component index {component_index} out of range for {} components",
            component_sizes.len()
        )));
    };
    if component_sizes.contains(&0) {
        return Err(Error::InvalidArgument("component sizes must be positive".into()));
    }
    if component.size != size_i {
        return Err(Error::SignatureMismatch {
            expected: format!("neighborhood on {size_i} points"),
            found: format!("neighborhood on {} points", component.size),
        });
    }
    let max_points = 1usize << caps.max_hypercube_bits;
    let total = component_sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&t| t <= max_points)
        .ok_or_else(|| {
            let shown: Vec<String> = component_sizes.iter().map(|s| s.to_string()).collect();
            Error::capacity("product space size", shown.join("x"), max_points)
        })?;
    let stride: usize = component_sizes[component_index + 1..].iter().product();
    let coord = |p: usize| (p / stride) % size_i;
    let mut nb = Neighborhood::empty(total);
    for a in 0..total {
        for b in a + 1..total {
            if component.is_neighbor(coord(a), coord(b)) {
                nb.set(a, b);
            }
        }
    }
    Ok(nb)
}

/// `s^max(f)`: largest value distance across a neighbor pair (0 without edges).
pub fn max_steepness(f: &FiniteFunction, nb: &Neighborhood, metric: &ValueMetric) -> Result<f64> {
    nb.check_domain(f.signature())?;
    metric.check_codomain(f.signature())?;
    Ok(nb
        .edges()
        .into_iter()
        .map(|(a, b)| metric.distance(f.value(a), f.value(b)))
        .fold(0.0, f64::max))
}

/// `d^max(f)`: largest value distance across any pair of points.
pub fn range_diameter(f: &FiniteFunction, metric: &ValueMetric) -> Result<f64> {
    metric.check_codomain(f.signature())?;
    Ok(extremal_pair(f, metric).map_or(0.0, |(_, _, d)| d))
}

/// First pair `(i, j)`, `i < j`, attaining `d^max(f)`.
fn extremal_pair(f: &FiniteFunction, metric: &ValueMetric) -> Option<(usize, usize, f64)> {
    let n = f.signature().domain_size();
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in i + 1..n {
            let d = metric.distance(f.value(i), f.value(j));
            if best.is_none_or(|(_, _, bd)| d > bd) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

/// Points whose value is strictly below every neighbor's value.
pub fn count_local_minima(f: &FiniteFunction, nb: &Neighborhood) -> Result<usize> {
    nb.check_domain(f.signature())?;
    Ok((0..nb.size)
        .filter(|&x| nb.neighbors(x).all(|y| f.value(x) < f.value(y)))
        .count())
}

/// `l^max(h)`: the most local minima any function with histogram `h` has,
/// found by scanning the basis class (`multinomial(h)` evaluations).
pub fn max_minima_over_histogram(h: &Histogram, nb: &Neighborhood, caps: &Caps) -> Result<usize> {
    Ok(max_minima_arrangement(h, nb, caps)?.1)
}

/// First member of the basis class of `h` (lexicographic order) with `l^max` minima.
fn max_minima_arrangement(
    h: &Histogram,
    nb: &Neighborhood,
    caps: &Caps,
) -> Result<(FiniteFunction, usize)> {
    nb.check_domain(h.signature())?;
    let class = orbit(&h.representative(), caps)?;
    let mut best: Option<(FiniteFunction, usize)> = None;
    for f in &class {
        let m = count_local_minima(f, nb)?;
        if best.as_ref().is_none_or(|(_, bm)| m > *bm) {
            best = Some((f.clone(), m));
        }
    }
    Ok(best.expect("basis classes are non-empty"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `s^max(f) < bound` under `metric`.
    Steepness { bound: f64, metric: ValueMetric },
    /// Fewer than `bound` local minima.
    LocalMinima { bound: usize },
}

/// The set `{ f ∈ Y^X : measure(f) < bound }` for a neighborhood measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintClass {
    signature: SpaceSignature,
    neighborhood: Neighborhood,
    constraint: Constraint,
}

impl ConstraintClass {
    pub fn new(signature: SpaceSignature, neighborhood: Neighborhood, constraint: Constraint) -> Result<Self> {
        neighborhood.check_domain(signature)?;
        if let Constraint::Steepness { bound, metric } = &constraint {
            metric.check_codomain(signature)?;
            if bound.is_nan() {
                return Err(Error::InvalidArgument("steepness bound is NaN".into()));
            }
        }
        Ok(ConstraintClass {
            signature,
            neighborhood,
            constraint,
        })
    }

    pub fn steepness(signature: SpaceSignature, neighborhood: Neighborhood, metric: ValueMetric, bound: f64) -> Result<Self> {
        ConstraintClass::new(signature, neighborhood, Constraint::Steepness { bound, metric })
    }

    pub fn local_minima(signature: SpaceSignature, neighborhood: Neighborhood, bound: usize) -> Result<Self> {
        ConstraintClass::new(signature, neighborhood, Constraint::LocalMinima { bound })
    }

    pub fn signature(&self) -> SpaceSignature {
        self.signature
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    /// The constrained measure: `s^max(f)` or the number of local minima.
    pub fn measure(&self, f: &FiniteFunction) -> Result<f64> {
        match &self.constraint {
            Constraint::Steepness { metric, .. } => max_steepness(f, &self.neighborhood, metric),
            Constraint::LocalMinima { .. } => Ok(count_local_minima(f, &self.neighborhood)? as f64),
        }
    }

    pub fn bound(&self) -> f64 {
        match &self.constraint {
            Constraint::Steepness { bound, .. } => *bound,
            Constraint::LocalMinima { bound } => *bound as f64,
        }
    }

    pub fn admits(&self, f: &FiniteFunction) -> Result<bool> {
        Ok(self.measure(f)? < self.bound())
    }
}

/// Filters `Y^X` by the class constraint.
pub fn build_constraint_class(cc: &ConstraintClass, caps: &Caps) -> Result<FunctionSet> {
    let mut members = FunctionSet::empty(cc.signature);
    for f in crate::space::enumerate_functions(cc.signature, caps)? {
        if cc.admits(&f)? {
            members.insert(f)?;
        }
    }
    Ok(members)
}

/// A member `g` of a constrained set and a permutation `p` such that `g∘p`
/// breaks the constraint, so the set cannot be closed under permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub function: FiniteFunction,
    pub permutation: Permutation,
    pub image: FiniteFunction,
    pub image_measure: f64,
}

/// Builds a not-c.u.p. witness for a non-empty set whose members all satisfy `cc`.
///
/// Requires a non-trivial neighborhood and the binding condition: the largest
/// measure inside the set is below the largest attainable capacity
/// (`max d^max` for steepness, `max l^max` for minima) over the set.
///
/// Steepness: `g` maximizes `d^max`; `p` carries `g`'s extremal pair onto the
/// first edge. Minima: `g` maximizes `l^max`; `p` rearranges `g` into the first
/// arrangement of its class with `l^max` minima.
pub fn witness_not_cup(set: &FunctionSet, cc: &ConstraintClass, caps: &Caps) -> Result<Witness> {
    if set.signature() != cc.signature {
        return Err(Error::SignatureMismatch {
            expected: cc.signature.to_string(),
            found: set.signature().to_string(),
        });
    }
    if !is_nontrivial(&cc.neighborhood) {
        return Err(Error::WitnessNotGuaranteed("neighborhood is trivial".into()));
    }
    if set.is_empty() {
        return Err(Error::WitnessNotGuaranteed("function set is empty".into()));
    }
    let mut max_measure = f64::NEG_INFINITY;
    for f in set {
        if !cc.admits(f)? {
            return Err(Error::WitnessNotGuaranteed(format!("{f} violates the class constraint")));
        }
        max_measure = max_measure.max(cc.measure(f)?);
    }

    let (g, permutation, capacity) = match &cc.constraint {
        Constraint::Steepness { metric, .. } => {
            let mut best: Option<(&FiniteFunction, (usize, usize, f64))> = None;
            for f in set {
                if let Some(pair) = extremal_pair(f, metric) {
                    if best.is_none_or(|(_, (_, _, d))| pair.2 > d) {
                        best = Some((f, pair));
                    }
                }
            }
            let Some((g, (i, j, diameter))) = best else {
                return Err(Error::WitnessNotGuaranteed("single-point space".into()));
            };
            let (k, l) = first_pair(&cc.neighborhood, true).expect("non-trivial");
            let p = Permutation::new(pin_pair(set.signature().domain_size(), (k, i), (l, j)))?;
            (g.clone(), p, diameter)
        }
        Constraint::LocalMinima { .. } => {
            let mut lmax: BTreeMap<Histogram, (FiniteFunction, usize)> = BTreeMap::new();
            let mut best: Option<(&FiniteFunction, Histogram, usize)> = None;
            for f in set {
                let h = histogram_of(f);
                if !lmax.contains_key(&h) {
                    lmax.insert(h.clone(), max_minima_arrangement(&h, &cc.neighborhood, caps)?);
                }
                let m = lmax[&h].1;
                if best.as_ref().is_none_or(|(_, _, bm)| m > *bm) {
                    best = Some((f, h, m));
                }
            }
            let (g, h, m) = best.expect("set is non-empty");
            let target = &lmax[&h].0;
            let p = find_permutation(g, target)?.expect("same basis class");
            (g.clone(), p, m as f64)
        }
    };

    if max_measure >= capacity {
        return Err(Error::WitnessNotGuaranteed(format!(
            "bound is not binding: largest measure in the set is {max_measure}, largest capacity is {capacity}"
        )));
    }
    let image = compose(&g, &permutation)?;
    let image_measure = cc.measure(&image)?;
    if image_measure < cc.bound() {
        return Err(Error::WitnessNotGuaranteed(format!(
            "rearranged function {image} still satisfies the bound {}",
            cc.bound()
        )));
    }
    Ok(Witness {
        function: g,
        permutation,
        image,
        image_measure,
    })
}
