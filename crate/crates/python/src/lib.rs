//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use thetagw_core as core;
use thetagw_core::{PuncturedQuery, Rational, SlabCoefficients};

fn to_py_err(e: core::Error) -> PyErr {
    if e.is_configuration() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn parse_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    obj.str()?.to_str()?.parse().map_err(to_py_err)
}

fn slab_from(slab: Option<BTreeMap<u32, Bound<'_, PyAny>>>) -> PyResult<SlabCoefficients> {
    let mut out = core::default_slab_table();
    for (d, v) in slab.unwrap_or_default() {
        out.set(d, parse_rational(&v)?).map_err(to_py_err)?;
    }
    Ok(out)
}

/// Solved invariants N_{a,b} and N_{ab0}^d through some degree.
#[pyclass(name = "InvariantTable", module = "thetagw")]
struct PyInvariantTable {
    inner: core::InvariantTable,
}

#[pymethods]
impl PyInvariantTable {
    #[getter]
    fn solved_through_degree(&self) -> u32 {
        self.inner.solved_through_degree()
    }

    /// N_{a,b}; zero for a <= 0, b <= 0 or 3 not dividing a + b.
    fn two_point<'py>(&self, py: Python<'py>, a: i64, b: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.two_point(a, b).map_err(to_py_err)?)
    }

    /// N_{ab0}^{(a+b)/3}, symmetric in a and b.
    fn three_point_r0<'py>(&self, py: Python<'py>, a: i64, b: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.three_point_r0(a, b).map_err(to_py_err)?)
    }

    /// All values of one degree, keyed like "N_{2,4}" and "N_{240}^2".
    fn degree_values<'py>(&self, py: Python<'py>, d: u32) -> PyResult<BTreeMap<String, Bound<'py, PyAny>>> {
        self.inner
            .degree_values(d)
            .iter()
            .map(|(id, v)| Ok((id.to_string(), fraction(py, v)?)))
            .collect()
    }

    /// Expansion of theta_p * theta_q at truncation `bound` (default: the
    /// solved degree).
    #[pyo3(signature = (p, q, bound=None, ascii=false))]
    fn product(&self, p: u32, q: u32, bound: Option<usize>, ascii: bool) -> PyResult<String> {
        let bound = bound.unwrap_or(self.inner.solved_through_degree() as usize);
        let x = core::mul_basis(p, q, bound, &self.inner).map_err(to_py_err)?;
        Ok(x.render(ascii))
    }

    /// Punctured invariant N_{pqr}^d.
    #[pyo3(signature = (p, q, r, d, allow_offgrade=false))]
    fn punctured<'py>(
        &self,
        py: Python<'py>,
        p: u32,
        q: u32,
        r: u32,
        d: u32,
        allow_offgrade: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let query = PuncturedQuery::new(p, q, r, d);
        let v = if allow_offgrade {
            core::punctured_invariant_lenient(query, &self.inner)
        } else {
            core::punctured_invariant(query, &self.inner)
        };
        fraction(py, &v.map_err(to_py_err)?)
    }

    fn verify_degree_two_relations(&self) -> bool {
        core::verify_prop52_relations(&self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner.write_json(&mut buf).map_err(to_py_err)?;
        String::from_utf8(buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = core::InvariantTable::read_json(text.as_bytes()).map_err(to_py_err)?;
        Ok(PyInvariantTable { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "InvariantTable(solved_through_degree={}, entries={})",
            self.inner.solved_through_degree(),
            self.inner.len()
        )
    }
}

/// Solve every degree up to `max_degree`. `slab` maps degrees to open
/// invariants (anything `Fraction(str(x))` accepts) and overrides the
/// built-in coefficients.
#[pyfunction]
#[pyo3(signature = (max_degree, slab=None, triple_bound=None))]
fn compute(
    max_degree: u32,
    slab: Option<BTreeMap<u32, Bound<'_, PyAny>>>,
    triple_bound: Option<u32>,
) -> PyResult<PyInvariantTable> {
    let slab = slab_from(slab)?;
    let opts = core::SolveOptions {
        triple_bound,
        ..Default::default()
    };
    let comp = core::compute_with_options(max_degree, &slab, &opts).map_err(to_py_err)?;
    Ok(PyInvariantTable { inner: comp.table })
}

/// Per-degree solve reports as a JSON string.
#[pyfunction]
#[pyo3(signature = (max_degree, slab=None))]
fn solve_reports(max_degree: u32, slab: Option<BTreeMap<u32, Bound<'_, PyAny>>>) -> PyResult<String> {
    let slab = slab_from(slab)?;
    let comp = core::compute_with_options(max_degree, &slab, &Default::default()).map_err(to_py_err)?;
    serde_json::to_string(&comp.reports).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn default_slab(py: Python<'_>) -> PyResult<BTreeMap<u32, Bound<'_, PyAny>>> {
    core::default_slab_table()
        .iter()
        .map(|(d, c)| Ok((d, fraction(py, c)?)))
        .collect()
}

/// N_{3d-1,1} from the slab coefficient of degree d.
#[pyfunction]
#[pyo3(signature = (d, slab=None))]
fn seed_top<'py>(
    py: Python<'py>,
    d: u32,
    slab: Option<BTreeMap<u32, Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyAny>> {
    let slab = slab_from(slab)?;
    fraction(py, &core::seed_top(d, &slab).map_err(to_py_err)?)
}

/// N_{1,3d-1} from N_{3d-1,1}.
#[pyfunction]
fn seed_bottom<'py>(py: Python<'py>, d: u32, top: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core::seed_bottom(d, &parse_rational(top)?))
}

#[pyfunction]
fn degree_zero_three_point(p: i64, q: i64, r: i64) -> i64 {
    if core::degree_zero_three_point(p, q, r).is_zero() {
        0
    } else {
        1
    }
}

#[pymodule]
fn thetagw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInvariantTable>()?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(solve_reports, m)?)?;
    m.add_function(wrap_pyfunction!(default_slab, m)?)?;
    m.add_function(wrap_pyfunction!(seed_top, m)?)?;
    m.add_function(wrap_pyfunction!(seed_bottom, m)?)?;
    m.add_function(wrap_pyfunction!(degree_zero_three_point, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_computes_through_python() {
        Python::initialize();
        Python::attach(|py| -> PyResult<()> {
            let m = PyModule::new(py, "thetagw")?;
            thetagw(&m)?;
            let table = m.getattr("compute")?.call1((2,))?;
            let v = table.call_method1("two_point", (2, 4))?;
            assert_eq!(v.str()?.to_str()?, "7/2");
            let prod = table.call_method1("product", (1, 5))?;
            assert_eq!(prod.extract::<String>()?, "θ_6 + 2 t θ_3 + 30 t^2 θ_0");
            let err = m.getattr("compute")?.call1((6,)).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
            Ok(())
        })
        .unwrap();
    }
}
