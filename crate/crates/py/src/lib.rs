//! Python bindings: `Diagram`, `TransformLog` and a few free functions.

use linksplit::moves::{self, MoveKind};
use linksplit::pdparse;
use linksplit::skein;
use linksplit::splitting::{self, SplitBounds};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bounds_dict<'py>(py: Python<'py>, b: &SplitBounds) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("lower", b.lower.value)?;
    d.set_item("lower_rule", b.lower.rule.tag())?;
    d.set_item("upper", b.upper.value)?;
    d.set_item("upper_rule", b.upper.rule.tag())?;
    d.set_item("exact", b.exact())?;
    Ok(d)
}

#[pyclass(name = "Diagram", module = "linksplit_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDiagram(linksplit::Diagram);

#[pymethods]
impl PyDiagram {
    /// Parse a PD expression such as `X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        pdparse::parse_pd(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        pdparse::catalog(name).map(Self).map_err(err)
    }

    #[staticmethod]
    fn unlink(n: usize) -> Self {
        Self(linksplit::Diagram::unlink(n))
    }

    /// Canonical PD text.
    fn serialize(&self) -> String {
        pdparse::serialize_pd(&self.0)
    }

    /// PD text with labels and crossing order kept.
    fn pd(&self) -> String {
        pdparse::write_pd(&self.0)
    }

    fn conway(&self) -> String {
        skein::conway(&self.0).render("z")
    }

    fn alexander(&self) -> PyResult<String> {
        Ok(skein::conway(&self.0).conway_to_alexander().map_err(err)?.render("t"))
    }

    fn component_count(&self) -> usize {
        self.0.component_count()
    }

    fn crossing_count(&self) -> usize {
        self.0.crossing_count()
    }

    fn writhe(&self) -> i64 {
        self.0.writhe()
    }

    fn is_self_crossing(&self, crossing: usize) -> PyResult<bool> {
        self.0.is_self_crossing(crossing).map_err(err)
    }

    fn linking_matrix(&self) -> Vec<Vec<i64>> {
        splitting::linking_matrix(&self.0).rows()
    }

    fn warp_linking_degree(&self) -> PyResult<usize> {
        splitting::warp_linking_degree(&self.0).map_err(err)
    }

    /// Returns `(diagram, index of the new component)`.
    fn lasso(&self, crossing: usize) -> PyResult<(Self, usize)> {
        moves::lasso(&self.0, crossing).map(|(d, c)| (Self(d), c)).map_err(err)
    }

    fn component_lasso(&self, crossing: usize) -> PyResult<(Self, usize)> {
        moves::component_lasso(&self.0, crossing).map(|(d, c)| (Self(d), c)).map_err(err)
    }

    fn crossing_change(&self, crossing: usize) -> PyResult<Self> {
        self.0.crossing_change(crossing).map(Self).map_err(err)
    }

    fn smooth(&self, crossing: usize) -> PyResult<Self> {
        self.0.smooth(crossing).map(Self).map_err(err)
    }

    fn mirror(&self) -> Self {
        Self(self.0.mirror())
    }

    fn simplify(&self) -> Self {
        Self(self.0.simplify())
    }

    #[pyo3(signature = (budget = 3))]
    fn split_bounds<'py>(&self, py: Python<'py>, budget: usize) -> PyResult<Bound<'py, PyDict>> {
        let b = splitting::split_bounds(&self.0, budget).map_err(err)?;
        bounds_dict(py, &b)
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", pdparse::write_pd(&self.0))
    }
}

#[pyclass(name = "TransformLog", module = "linksplit_py")]
struct PyTransformLog(moves::TransformLog);

#[pymethods]
impl PyTransformLog {
    #[new]
    fn new(base: &PyDiagram) -> Self {
        Self(moves::TransformLog::new(base.0.clone()))
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        moves::TransformLog::from_catalog(name).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        moves::TransformLog::from_text(text).map(Self).map_err(err)
    }

    /// `kind` is one of `lasso`, `component-lasso`, `change`.
    fn apply(&mut self, kind: &str, crossing: usize) -> PyResult<()> {
        let kind = match kind {
            "lasso" => MoveKind::Lasso,
            "component-lasso" => MoveKind::ComponentLasso,
            "change" => MoveKind::CrossingChange,
            other => return Err(err(format!("unknown move {other:?}"))),
        };
        self.0.apply(kind, crossing).map(|_| ()).map_err(err)
    }

    fn anti_lasso(&self, step: usize) -> PyResult<Self> {
        self.0.anti_lasso(step).map(Self).map_err(err)
    }

    #[getter]
    fn current(&self) -> PyDiagram {
        PyDiagram(self.0.current().clone())
    }

    #[getter]
    fn base(&self) -> PyDiagram {
        PyDiagram(self.0.base().clone())
    }

    #[getter]
    fn lasso_count(&self) -> usize {
        self.0.lasso_count()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    /// Bounds for the current diagram from the base bounds and lasso count.
    #[pyo3(signature = (budget = 3))]
    fn bounds<'py>(&self, py: Python<'py>, budget: usize) -> PyResult<Bound<'py, PyDict>> {
        let base = splitting::split_bounds(self.0.base(), budget).map_err(err)?;
        let b = splitting::split_bounds_from_log(&self.0, &base).map_err(err)?;
        bounds_dict(py, &b)
    }

    fn __repr__(&self) -> String {
        format!("TransformLog({:?})", self.0.to_text())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    pdparse::catalog_names()
}

#[pymodule]
fn linksplit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyTransformLog>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
