//! Python bindings for `fusscat`. Big integers cross as Python `int`,
//! ratios as `fractions.Fraction`, and statistic vectors as tuples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use fusscat::exact::{self, StatIndex};
use fusscat::lattice::{self, parse_steps, LatticePath, PAryTree};
use fusscat::series::{self as fseries, TruncatedSeries};
use fusscat::simplex::{self, FCSimplex};
use fusscat::verify::{self, Bounds, Suite};

fn err(e: fusscat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &fusscat::ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn class_dict<'py>(
    py: Python<'py>,
    dist: &BTreeMap<Vec<u64>, BigInt>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (ks, c) in dist {
        d.set_item(PyTuple::new(py, ks)?, c.clone())?;
    }
    Ok(d)
}

#[pyfunction]
fn binomial(a: u64, b: i64) -> BigInt {
    exact::binomial(a, b)
}

#[pyfunction]
fn catalan(n: u64) -> BigInt {
    exact::catalan(n)
}

#[pyfunction]
fn fuss_catalan(p: u32, n: u64) -> PyResult<BigInt> {
    if p < 2 {
        return Err(err(fusscat::Error::InvalidArity(p)));
    }
    Ok(exact::fuss_catalan(p, n))
}

#[pyfunction]
fn ballot(n: i64, k: i64) -> BigInt {
    exact::ballot(n, k)
}

#[pyfunction]
fn ballot_probability(py: Python<'_>, a: u64, b: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &exact::ballot_probability(a, b).map_err(err)?)
}

#[pyfunction]
fn b3_closed(n: i64, k: i64, l: i64) -> BigInt {
    exact::b3_closed(n, k, l)
}

/// `B_p(n; ks)` from the product formula.
#[pyfunction]
fn bp_closed(p: u32, n: u64, ks: Vec<u64>) -> PyResult<BigInt> {
    Ok(exact::bp_closed(&StatIndex::new(p, n, ks).map_err(err)?))
}

#[pyfunction]
fn b3_prime(n: i64, k: i64, l: i64) -> BigInt {
    exact::b3_prime(n, k, l)
}

/// Layer `n` of the `B'_3` grid as a `(k_max + 1) x (l_max + 1)` list of rows.
#[pyfunction]
fn prime_slice(n: u64, k_max: u64, l_max: u64) -> PyResult<Vec<Vec<BigInt>>> {
    let grid = simplex::build_prime_grid(n, k_max, l_max).map_err(err)?;
    grid.slice(n).map_err(err)
}

#[pyclass(name = "Simplex", module = "pyfusscat")]
struct PySimplex {
    inner: FCSimplex,
}

#[pymethods]
impl PySimplex {
    #[new]
    fn new(p: u32, n_max: u64) -> PyResult<Self> {
        Ok(PySimplex {
            inner: simplex::build_simplex(p, n_max).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn n_max(&self) -> u64 {
        self.inner.n_max()
    }

    fn entry(&self, n: u64, ks: Vec<u64>) -> PyResult<BigInt> {
        let idx = StatIndex::new(self.inner.p(), n, ks).map_err(err)?;
        self.inner.entry(&idx).map_err(err)
    }

    /// `{ks: value}` over the support of layer `n`.
    fn layer<'py>(&self, py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyDict>> {
        let cells: BTreeMap<Vec<u64>, BigInt> = self
            .inner
            .layer(n)
            .map_err(err)?
            .into_iter()
            .map(|(ks, v)| (ks, v.clone()))
            .collect();
        class_dict(py, &cells)
    }

    fn layer_sum(&self, n: u64) -> PyResult<BigInt> {
        self.inner.layer_sum(n).map_err(err)
    }

    /// Triangular rows of layer `n` (arity 3 only).
    fn section(&self, n: u64) -> PyResult<Vec<Vec<BigInt>>> {
        self.inner.section(n).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Simplex(p={}, n_max={})",
            self.inner.p(),
            self.inner.n_max()
        )
    }
}

#[pyclass(name = "Path", module = "pyfusscat", eq, ord, hash, frozen)]
#[derive(PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyPath {
    inner: LatticePath,
}

#[pymethods]
impl PyPath {
    #[new]
    fn new(p: u32, steps: &str) -> PyResult<Self> {
        Ok(PyPath {
            inner: LatticePath::parse(p, steps).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn heights(&self) -> Vec<i64> {
        self.inner.heights()
    }

    /// `(n, last_run, ks)`.
    fn stats(&self) -> PyResult<(u64, u64, Vec<u64>)> {
        let s = self.inner.stats().map_err(err)?;
        Ok((s.n, s.last_run, s.ks))
    }

    fn truncate_last_node(&self) -> PyResult<PyPath> {
        Ok(PyPath {
            inner: self.inner.truncate_last_node().map_err(err)?,
        })
    }

    fn to_tree(&self) -> PyResult<PyTree> {
        Ok(PyTree {
            inner: PAryTree::from_path(&self.inner).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Path({}, {:?})", self.inner.p(), self.inner.to_string())
    }
}

#[pyclass(name = "Tree", module = "pyfusscat", eq, frozen)]
#[derive(PartialEq, Eq)]
struct PyTree {
    inner: PAryTree,
}

#[pymethods]
impl PyTree {
    /// Nested parentheses with `.` for leaves, e.g. `"((...)..)"`.
    #[staticmethod]
    fn parse(p: u32, text: &str) -> PyResult<Self> {
        Ok(PyTree {
            inner: PAryTree::parse(p, text).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    fn internal_count(&self) -> usize {
        self.inner.internal_count()
    }

    fn to_path(&self) -> PyPath {
        PyPath {
            inner: self.inner.to_path(),
        }
    }

    fn stats(&self) -> (u64, u64, Vec<u64>) {
        let s = self.inner.stats();
        (s.n, s.last_run, s.ks)
    }

    fn last_right_string_involution(&self) -> PyResult<PyTree> {
        Ok(PyTree {
            inner: self.inner.last_right_string_involution().map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tree({}, {:?})", self.inner.p(), self.inner.to_string())
    }
}

#[pyfunction]
fn enumerate_paths(p: u32, n: u64) -> PyResult<Vec<PyPath>> {
    Ok(lattice::enumerate_paths(p, n)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyPath { inner })
        .collect())
}

#[pyfunction]
fn enumerate_trees(p: u32, n: u64) -> PyResult<Vec<PyTree>> {
    Ok(lattice::enumerate_trees(p, n)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyTree { inner })
        .collect())
}

/// Path counts per statistic vector, `{ks: count}`.
#[pyfunction]
fn distribution(py: Python<'_>, p: u32, n: u64) -> PyResult<Bound<'_, PyDict>> {
    class_dict(py, &lattice::distribution(p, n).map_err(err)?)
}

/// `(n, k, l)` of a word over `U` (+1) and `D` (-2).
#[pyfunction]
fn cycle_word_profile(word: &str) -> PyResult<(u64, u64, u64)> {
    let prof = lattice::cycle_word_profile(&parse_steps(word).map_err(err)?).map_err(err)?;
    Ok((prof.n, prof.k, prof.l))
}

#[pyfunction]
fn good_shift_fraction<'py>(py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = lattice::good_shift_fraction(&parse_steps(word).map_err(err)?).map_err(err)?;
    fraction(py, &r)
}

#[pyclass(name = "Series", module = "pyfusscat", frozen)]
struct PySeries {
    inner: TruncatedSeries,
}

#[pymethods]
impl PySeries {
    #[getter]
    fn caps(&self) -> (usize, usize, usize) {
        self.inner.caps()
    }

    fn coefficient(&self, i: usize, j: usize, k: usize) -> PyResult<BigInt> {
        self.inner.coefficient(i, j, k).cloned().map_err(err)
    }

    /// Nonzero coefficients as `{(i, j, k): c}`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for ((i, j, k), c) in self.inner.terms() {
            d.set_item((i, j, k), c.clone())?;
        }
        Ok(d)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn caps(order: usize) -> PyResult<(usize, usize, usize)> {
    if order == 0 {
        return Err(PyValueError::new_err("order must be at least 1"));
    }
    Ok((order, order, order))
}

#[pyfunction]
fn g_series(order: usize) -> PyResult<PySeries> {
    Ok(PySeries {
        inner: fseries::solve_g(caps(order)?).map_err(err)?,
    })
}

#[pyfunction]
fn f_series(order: usize) -> PyResult<PySeries> {
    let g = fseries::solve_g(caps(order)?).map_err(err)?;
    Ok(PySeries {
        inner: fseries::build_f(&g).map_err(err)?,
    })
}

#[pyfunction]
fn g_cubic_residual(order: usize) -> PyResult<PySeries> {
    let g = fseries::solve_g(caps(order)?).map_err(err)?;
    Ok(PySeries {
        inner: fseries::cubic_residual(&g).map_err(err)?,
    })
}

#[pyfunction]
fn prime_rational_series(order: usize) -> PyResult<PySeries> {
    Ok(PySeries {
        inner: fseries::rational_b3prime(caps(order)?).map_err(err)?,
    })
}

/// Runs verification suites and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", quick = false, p = None, n_max = None))]
fn run_verify<'py>(
    py: Python<'py>,
    suite: &str,
    quick: bool,
    p: Option<u32>,
    n_max: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let suites = Suite::parse_selection(suite).map_err(err)?;
    let bounds = Bounds {
        quick,
        p,
        n_max,
        enum_limit: None,
    };
    let report = py
        .detach(|| verify::run(&suites, &bounds, None))
        .map_err(err)?;
    py.import("json")?
        .getattr("loads")?
        .call1((report.to_json(),))
}

#[pymodule]
pub fn pyfusscat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(fuss_catalan, m)?)?;
    m.add_function(wrap_pyfunction!(ballot, m)?)?;
    m.add_function(wrap_pyfunction!(ballot_probability, m)?)?;
    m.add_function(wrap_pyfunction!(b3_closed, m)?)?;
    m.add_function(wrap_pyfunction!(bp_closed, m)?)?;
    m.add_function(wrap_pyfunction!(b3_prime, m)?)?;
    m.add_function(wrap_pyfunction!(prime_slice, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_paths, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_word_profile, m)?)?;
    m.add_function(wrap_pyfunction!(good_shift_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(g_series, m)?)?;
    m.add_function(wrap_pyfunction!(f_series, m)?)?;
    m.add_function(wrap_pyfunction!(g_cubic_residual, m)?)?;
    m.add_function(wrap_pyfunction!(prime_rational_series, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_class::<PySimplex>()?;
    m.add_class::<PyPath>()?;
    m.add_class::<PyTree>()?;
    m.add_class::<PySeries>()?;
    Ok(())
}
