//! Python bindings: `Spec`, `Complex` and a few module-level helpers.

use gridlocal::cli::{pipeline, run};
use gridlocal::invariants::{phi, report, tau};
use gridlocal::io::{complex_document, load_input, parse_input, Input};
use gridlocal::standard::{dual_spec, gradings, is_symmetric, lex_compare, realize};
use gridlocal::{examples, Error, FreeComplex, RingId, StandardSpec, Zigzag};
use pyo3::basic::CompareOp;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(pygridlocal, GridlocalError, PyException);
create_exception!(pygridlocal, NotKnotlikeError, GridlocalError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotKnotlike(_) => NotKnotlikeError::new_err(e.to_string()),
        _ => GridlocalError::new_err(e.to_string()),
    }
}

fn json_text(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| GridlocalError::new_err(e.to_string()))
}

/// A standard sequence such as `C(-U[2,1], +V[2,1])`. Comparison
/// operators use the lexicographic order of local equivalence classes.
#[pyclass(name = "Spec", module = "pygridlocal", frozen)]
struct PySpec {
    inner: StandardSpec,
}

#[pymethods]
impl PySpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PySpec { inner: text.parse().map_err(to_py)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Spec('{}')", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> PyResult<bool> {
        Ok(op.matches(lex_compare(&self.inner, &other.inner).map_err(to_py)?))
    }

    #[getter]
    fn ring(&self) -> &'static str {
        self.inner.ring().tag()
    }

    fn dual(&self) -> Self {
        PySpec { inner: dual_spec(&self.inner) }
    }

    fn is_symmetric(&self) -> bool {
        is_symmetric(&self.inner)
    }

    fn gradings(&self) -> Vec<(i64, i64)> {
        gradings(&self.inner)
    }

    fn realize(&self) -> PyComplex {
        PyComplex { inner: realize(&self.inner), d_y: 0 }
    }

    fn tau(&self) -> i64 {
        tau(&self.inner)
    }

    /// `[(side, (i, j), count), ...]` for the nonzero signed counts.
    fn phi(&self) -> Vec<(String, (i64, i64), i64)> {
        phi(&self.inner)
            .entries
            .iter()
            .map(|(&(side, e), &c)| (side.letter().to_string(), (e.i, e.j), c))
            .collect()
    }

    /// The full invariant report as a JSON string.
    fn invariants_json(&self) -> PyResult<String> {
        json_text(&report(&self.inner))
    }
}

/// A free bigraded complex together with its `dY` correction.
#[pyclass(name = "Complex", module = "pygridlocal", frozen)]
struct PyComplex {
    inner: FreeComplex,
    d_y: i64,
}

impl PyComplex {
    fn from_input(input: Input) -> Self {
        PyComplex { d_y: input.d_y(), inner: input.complex() }
    }
}

#[pymethods]
impl PyComplex {
    /// Parses a complex document or spec text.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self::from_input(parse_input(text).map_err(to_py)?))
    }

    /// Loads a document from a path, or parses spec text.
    #[staticmethod]
    fn load(arg: &str) -> PyResult<Self> {
        Ok(Self::from_input(load_input(arg).map_err(to_py)?))
    }

    #[staticmethod]
    fn zhou(n: u32) -> PyResult<Self> {
        Ok(PyComplex { inner: examples::zhou(n).map_err(to_py)?.base_change(RingId::X), d_y: 0 })
    }

    #[staticmethod]
    fn cable() -> Self {
        PyComplex { inner: examples::cable().base_change(RingId::X), d_y: examples::CABLE_D_Y }
    }

    fn to_json(&self) -> PyResult<String> {
        json_text(&complex_document(&self.inner, self.d_y))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Complex(ring={}, generators={}, dY={})", self.inner.ring.tag(), self.inner.len(), self.d_y)
    }

    #[getter]
    fn d_y(&self) -> i64 {
        self.d_y
    }

    #[getter]
    fn generators(&self) -> Vec<(String, (i64, i64))> {
        self.inner.generators.iter().map(|g| (g.name.clone(), g.gr)).collect()
    }

    /// Human-readable violations; empty when the complex is valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    fn reduce(&self) -> PyResult<Self> {
        self.inner.check().map_err(to_py)?;
        Ok(PyComplex { inner: self.inner.reduce(), d_y: self.d_y })
    }

    fn tensor(&self, other: &PyComplex) -> PyResult<Self> {
        let inner = self.inner.tensor(&other.inner).map_err(to_py)?;
        Ok(PyComplex { inner, d_y: self.d_y + other.d_y })
    }

    fn dual(&self) -> Self {
        PyComplex { inner: self.inner.dual(), d_y: -self.d_y }
    }

    /// The standard representative; `d_y` overrides the stored value.
    #[pyo3(signature = (d_y = None))]
    fn standardize(&self, d_y: Option<i64>) -> PyResult<PySpec> {
        let p = pipeline(&self.inner, d_y.unwrap_or(self.d_y)).map_err(to_py)?;
        Ok(PySpec { inner: p.standardization.spec })
    }
}

/// `-1`, `0` or `1` as `a` is below, equal to or above `b`.
#[pyfunction]
fn compare(a: &PySpec, b: &PySpec) -> PyResult<i32> {
    Ok(lex_compare(&a.inner, &b.inner).map_err(to_py)? as i32)
}

/// Runs the command-line interface in process; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = run(std::iter::once("gridlocal".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pygridlocal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("GridlocalError", m.py().get_type::<GridlocalError>())?;
    m.add("NotKnotlikeError", m.py().get_type::<NotKnotlikeError>())?;
    Ok(())
}
