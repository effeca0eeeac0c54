//! Python bindings. Functions are plain lists of value indices; sets,
//! neighborhoods and decompositions are wrapped classes.

use nfl_core as core;
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(nflcup, CapacityError, PyException);

fn to_py(e: core::Error) -> PyErr {
    if e.is_capacity() {
        CapacityError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn caps() -> core::Caps {
    core::Caps::default()
}

fn function(values: Vec<usize>, codomain_size: usize) -> PyResult<core::FiniteFunction> {
    core::FiniteFunction::from_values(codomain_size, values).map_err(to_py)
}

fn signature(domain_size: usize, codomain_size: usize) -> PyResult<core::SpaceSignature> {
    core::SpaceSignature::new(domain_size, codomain_size).map_err(to_py)
}

/// A set of functions `X -> Y` given as value lists.
#[pyclass(name = "FunctionSet", module = "nflcup", frozen)]
struct PyFunctionSet {
    inner: core::FunctionSet,
}

#[pymethods]
impl PyFunctionSet {
    #[new]
    #[pyo3(signature = (domain_size, codomain_size, functions = Vec::new()))]
    fn new(domain_size: usize, codomain_size: usize, functions: Vec<Vec<usize>>) -> PyResult<Self> {
        let s = signature(domain_size, codomain_size)?;
        Ok(PyFunctionSet {
            inner: core::FunctionSet::from_value_arrays(s, functions).map_err(to_py)?,
        })
    }

    /// Every function of the space.
    #[staticmethod]
    fn full(domain_size: usize, codomain_size: usize) -> PyResult<Self> {
        let s = signature(domain_size, codomain_size)?;
        Ok(PyFunctionSet {
            inner: core::FunctionSet::full(s, &caps()).map_err(to_py)?,
        })
    }

    #[getter]
    fn domain_size(&self) -> usize {
        self.inner.signature().domain_size()
    }

    #[getter]
    fn codomain_size(&self) -> usize {
        self.inner.signature().codomain_size()
    }

    #[getter]
    fn functions(&self) -> Vec<Vec<usize>> {
        self.inner.iter().map(|f| f.values().to_vec()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, values: Vec<usize>) -> bool {
        core::FiniteFunction::new(self.inner.signature(), values).is_ok_and(|f| self.inner.contains(&f))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("FunctionSet{} with {} functions", self.inner.signature(), self.inner.len())
    }

    fn is_cup(&self) -> bool {
        core::is_cup(&self.inner)
    }

    fn closure(&self) -> PyResult<Self> {
        Ok(PyFunctionSet {
            inner: core::closure(&self.inner, &caps()).map_err(to_py)?,
        })
    }

    /// `(histogram counts, class size, members present)` per occurring class.
    fn decompose(&self) -> Vec<(Vec<usize>, BigUint, BigUint)> {
        core::decompose(&self.inner)
            .classes
            .into_iter()
            .map(|c| {
                let members = c.member_count();
                (c.histogram.counts().to_vec(), c.class_size, members)
            })
            .collect()
    }
}

/// An undirected neighbor relation on `0..size`.
#[pyclass(name = "Neighborhood", module = "nflcup", frozen)]
struct PyNeighborhood {
    inner: core::Neighborhood,
}

#[pymethods]
impl PyNeighborhood {
    #[new]
    fn new(size: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyNeighborhood {
            inner: core::Neighborhood::from_edges(size, &edges).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn hypercube(bits: u32) -> PyResult<Self> {
        Ok(PyNeighborhood {
            inner: core::hypercube_neighborhood(bits, &caps()).map_err(to_py)?,
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn is_nontrivial(&self) -> bool {
        core::is_nontrivial(&self.inner)
    }

    fn noninvariant_permutation(&self) -> PyResult<Vec<usize>> {
        Ok(core::find_noninvariant_permutation(&self.inner)
            .map_err(to_py)?
            .mapping()
            .to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Neighborhood({}, {:?})", self.inner.size(), self.inner.edges())
    }
}

#[pyfunction]
fn compose(values: Vec<usize>, permutation: Vec<usize>) -> PyResult<Vec<usize>> {
    let codomain = values.iter().max().map_or(1, |m| m + 1);
    let f = function(values, codomain)?;
    let p = core::Permutation::new(permutation).map_err(to_py)?;
    Ok(core::compose(&f, &p).map_err(to_py)?.values().to_vec())
}

#[pyfunction]
fn histogram_of(values: Vec<usize>, codomain_size: usize) -> PyResult<Vec<usize>> {
    Ok(core::histogram_of(&function(values, codomain_size)?).counts().to_vec())
}

#[pyfunction]
fn find_permutation(f: Vec<usize>, g: Vec<usize>, codomain_size: usize) -> PyResult<Option<Vec<usize>>> {
    let (f, g) = (function(f, codomain_size)?, function(g, codomain_size)?);
    Ok(core::find_permutation(&f, &g)
        .map_err(to_py)?
        .map(|p| p.mapping().to_vec()))
}

#[pyfunction]
fn orbit(values: Vec<usize>, codomain_size: usize) -> PyResult<PyFunctionSet> {
    Ok(PyFunctionSet {
        inner: core::orbit(&function(values, codomain_size)?, &caps()).map_err(to_py)?,
    })
}

#[pyfunction]
fn multinomial(counts: Vec<usize>) -> PyResult<BigUint> {
    Ok(core::multinomial(&core::Histogram::from_counts(counts).map_err(to_py)?))
}

#[pyfunction]
fn count_histograms(domain_size: usize, codomain_size: usize) -> PyResult<BigUint> {
    Ok(core::count_histograms(signature(domain_size, codomain_size)?))
}

#[pyfunction]
fn count_cup_subsets(domain_size: usize, codomain_size: usize) -> PyResult<BigUint> {
    core::count_cup_subsets(signature(domain_size, codomain_size)?).map_err(to_py)
}

#[pyfunction]
fn count_all_subsets(domain_size: usize, codomain_size: usize) -> PyResult<BigUint> {
    core::count_all_subsets(signature(domain_size, codomain_size)?).map_err(to_py)
}

/// log10 of the fraction of non-empty subsets that are c.u.p.
#[pyfunction]
fn cup_fraction(domain_size: usize, codomain_size: usize) -> PyResult<f64> {
    Ok(core::cup_fraction(signature(domain_size, codomain_size)?)
        .map_err(to_py)?
        .log10_value)
}

#[pyfunction]
fn count_local_minima(values: Vec<usize>, codomain_size: usize, neighborhood: &PyNeighborhood) -> PyResult<usize> {
    core::count_local_minima(&function(values, codomain_size)?, &neighborhood.inner).map_err(to_py)
}

/// Largest `|f(a) - f(b)|` over neighbor pairs, on value indices.
#[pyfunction]
fn max_steepness(values: Vec<usize>, codomain_size: usize, neighborhood: &PyNeighborhood) -> PyResult<f64> {
    let metric = core::ValueMetric::absolute(codomain_size);
    core::max_steepness(&function(values, codomain_size)?, &neighborhood.inner, &metric).map_err(to_py)
}

/// `(g, p, measure of g∘p)`.
type WitnessTuple = (Vec<usize>, Vec<usize>, f64);

/// Builds the class `{f : minima(f) < bound}` or `{f : steepness(f) < bound}`
/// (absolute metric) and returns it with a witness `(g, p, measure of g∘p)`
/// when one is guaranteed.
#[pyfunction]
#[pyo3(signature = (domain_size, codomain_size, neighborhood, kind, bound))]
fn constraint_class(
    domain_size: usize,
    codomain_size: usize,
    neighborhood: &PyNeighborhood,
    kind: &str,
    bound: f64,
) -> PyResult<(PyFunctionSet, Option<WitnessTuple>)> {
    let s = signature(domain_size, codomain_size)?;
    let nb = neighborhood.inner.clone();
    let cc = match kind {
        "minima" if bound >= 0.0 && bound.fract() == 0.0 => core::ConstraintClass::local_minima(s, nb, bound as usize),
        "steepness" => core::ConstraintClass::steepness(s, nb, core::ValueMetric::absolute(codomain_size), bound),
        _ => return Err(PyValueError::new_err(format!("bad constraint {kind} < {bound}"))),
    }
    .map_err(to_py)?;
    let class = core::build_constraint_class(&cc, &caps()).map_err(to_py)?;
    let witness = match core::witness_not_cup(&class, &cc, &caps()) {
        Ok(w) => Some((w.function.values().to_vec(), w.permutation.mapping().to_vec(), w.image_measure)),
        Err(core::Error::WitnessNotGuaranteed(_)) => None,
        Err(e) => return Err(to_py(e)),
    };
    Ok((PyFunctionSet { inner: class }, witness))
}

fn parse_algorithm(name: &str) -> PyResult<core::SearchAlgorithm> {
    match name {
        "lex" => Ok(core::SearchAlgorithm::Lexicographic),
        "rev" => Ok(core::SearchAlgorithm::ReverseLexicographic),
        _ => name
            .strip_prefix("random:")
            .and_then(|s| s.parse().ok())
            .map(|seed| core::SearchAlgorithm::SeededRandom { seed })
            .ok_or_else(|| PyValueError::new_err(format!("unknown algorithm {name:?}"))),
    }
}

/// Compares the value-sequence multisets of the given algorithms on `set`.
/// `algorithms` holds "lex", "rev", "random:SEED", or is `["all"]` for every
/// decision tree. Returns `(all equal, first differing pair)`.
#[pyfunction]
fn verify_nfl(set: &PyFunctionSet, m: usize, algorithms: Vec<String>) -> PyResult<(bool, Option<(usize, usize)>)> {
    let algs: Vec<core::SearchAlgorithm> = if algorithms == ["all"] {
        core::enumerate_algorithms(set.inner.signature(), m, &caps())
            .map_err(to_py)?
            .collect()
    } else {
        algorithms.iter().map(|a| parse_algorithm(a)).collect::<PyResult<_>>()?
    };
    let report = core::verify_nfl(&set.inner, m, &algs).map_err(to_py)?;
    Ok((report.equal_for_all_pairs, report.witness))
}

#[pymodule]
fn nflcup(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add_class::<PyFunctionSet>()?;
    m.add_class::<PyNeighborhood>()?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(histogram_of, m)?)?;
    m.add_function(wrap_pyfunction!(find_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(count_histograms, m)?)?;
    m.add_function(wrap_pyfunction!(count_cup_subsets, m)?)?;
    m.add_function(wrap_pyfunction!(count_all_subsets, m)?)?;
    m.add_function(wrap_pyfunction!(cup_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(count_local_minima, m)?)?;
    m.add_function(wrap_pyfunction!(max_steepness, m)?)?;
    m.add_function(wrap_pyfunction!(constraint_class, m)?)?;
    m.add_function(wrap_pyfunction!(verify_nfl, m)?)?;
    Ok(())
}
