//! Python bindings: the expression kernel, the derived surface operators,
//! and the verification suites, exposed as the `geomom_py` module.

use geomom::expr::{self, parse_expr};
use geomom::geometry::{build_geometry, monge_sphere, spherical_sphere, SurfacePatch};
use geomom::operators::{geometric_momentum, surface_hamiltonian, DiffOperator, MultiIndex};
use geomom::suites::{run_suite, SuiteConfig, SuiteError, SuiteName};
use geomom::NumericContext;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

fn patch_by_name(name: &str) -> PyResult<SurfacePatch> {
    match name {
        "monge" => Ok(monge_sphere("r")),
        "spherical" => Ok(spherical_sphere("r")),
        other => Err(PyValueError::new_err(format!(
            "unknown patch `{other}` (expected 'monge' or 'spherical')"
        ))),
    }
}

fn to_bindings(map: HashMap<String, f64>) -> expr::Bindings {
    map.into_iter().map(|(k, v)| (Arc::<str>::from(k.as_str()), v)).collect()
}

/// A symbolic expression over named variables and constants.
#[pyclass(name = "Expr", frozen, from_py_object)]
#[derive(Clone)]
struct PyExpr {
    inner: expr::Expr,
}

#[pymethods]
impl PyExpr {
    /// Parses the prefix text format, e.g. `"(+ (^ x 2) $r)"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyExpr> {
        parse_expr(text)
            .map(|inner| PyExpr { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn var(name: &str) -> PyExpr {
        PyExpr { inner: expr::Expr::var(name) }
    }

    #[staticmethod]
    fn constant(name: &str) -> PyExpr {
        PyExpr { inner: expr::Expr::cnst(name) }
    }

    #[staticmethod]
    fn number(value: f64) -> PyExpr {
        PyExpr { inner: expr::Expr::from_f64(value) }
    }

    fn text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Expr({})", self.inner.to_text())
    }

    fn diff(&self, var: &str) -> PyExpr {
        PyExpr { inner: self.inner.differentiate(var) }
    }

    fn simplify(&self) -> PyExpr {
        PyExpr { inner: self.inner.simplify() }
    }

    fn expand(&self) -> PyExpr {
        PyExpr { inner: self.inner.expand() }
    }

    fn substitute(&self, name: &str, replacement: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.substitute(name, &replacement.inner) }
    }

    /// Evaluates at a point; returns `(re, im)`.
    #[pyo3(signature = (vars, consts=None))]
    fn eval(
        &self,
        vars: HashMap<String, f64>,
        consts: Option<HashMap<String, f64>>,
    ) -> PyResult<(f64, f64)> {
        let consts = to_bindings(consts.unwrap_or_default());
        self.inner
            .eval(&to_bindings(vars), &consts)
            .map(|v| (v.re, v.im))
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn free_vars(&self) -> Vec<String> {
        self.inner.free_vars().iter().map(|s| s.to_string()).collect()
    }

    fn __add__(&self, other: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.clone() + other.inner.clone() }
    }

    fn __sub__(&self, other: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.clone() - other.inner.clone() }
    }

    fn __mul__(&self, other: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.clone() * other.inner.clone() }
    }

    fn __truediv__(&self, other: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.clone() / other.inner.clone() }
    }

    fn __neg__(&self) -> PyExpr {
        PyExpr { inner: -self.inner.clone() }
    }
}

/// A first- or second-order differential operator on a surface patch.
#[pyclass(name = "Operator", frozen)]
struct PyOperator {
    inner: DiffOperator,
}

#[pymethods]
impl PyOperator {
    /// Applies the operator to a function of the patch parameters.
    fn apply(&self, f: &PyExpr) -> PyExpr {
        PyExpr { inner: self.inner.apply(&f.inner) }
    }

    /// Coefficient table keyed by multi-index label (`1`, `d1`, `d2`, ...).
    fn coefficients(&self) -> HashMap<String, String> {
        let labels = ["1", "d1", "d2", "d11", "d12", "d22"];
        MultiIndex::ALL
            .iter()
            .zip(labels)
            .filter(|(idx, _)| !self.inner.coeff(**idx).is_zero())
            .map(|(idx, label)| (label.to_string(), self.inner.coeff(*idx).to_text()))
            .collect()
    }

    fn params(&self) -> (String, String) {
        (self.inner.params[0].to_string(), self.inner.params[1].to_string())
    }

    fn __repr__(&self) -> String {
        format!("Operator(order {})", self.inner.order())
    }
}

/// The three geometric momentum components for the named sphere patch.
#[pyfunction]
fn momentum_operators(patch: &str) -> PyResult<Vec<PyOperator>> {
    let geom = build_geometry(patch_by_name(patch)?, &NumericContext::default())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(geometric_momentum(&geom)
        .into_iter()
        .map(|inner| PyOperator { inner })
        .collect())
}

/// The surface Hamiltonian for the named sphere patch.
#[pyfunction]
fn hamiltonian(patch: &str) -> PyResult<PyOperator> {
    let geom = build_geometry(patch_by_name(patch)?, &NumericContext::default())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let potential = geom.geometric_potential.clone();
    Ok(PyOperator { inner: surface_hamiltonian(&geom, &potential) })
}

/// Text forms of the derived geometric data for the named sphere patch.
#[pyfunction]
fn geometry_summary(patch: &str) -> PyResult<HashMap<String, String>> {
    let geom = build_geometry(patch_by_name(patch)?, &NumericContext::default())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let mut out = HashMap::new();
    out.insert("mean_curvature".into(), geom.mean_curvature.to_text());
    out.insert("gauss_curvature".into(), geom.gauss_curvature.to_text());
    out.insert("geometric_potential".into(), geom.geometric_potential.to_text());
    out.insert("det_metric".into(), geom.det_metric.to_text());
    for i in 0..3 {
        out.insert(format!("normal_{i}"), geom.normal[i].to_text());
    }
    Ok(out)
}

/// Randomized identity test over an interval box; returns
/// `(identical, max_residual)`.
#[pyfunction]
#[pyo3(signature = (a, b, intervals, n_samples=50, tol=1e-10, seed=42))]
fn expr_identical(
    a: &PyExpr,
    b: &PyExpr,
    intervals: HashMap<String, (f64, f64)>,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> PyResult<(bool, f64)> {
    let mut dom = expr::Domain::new();
    for (var, (lo, hi)) in intervals {
        dom = dom.interval_f(&var, lo, hi);
    }
    let ctx = NumericContext { seed, ..NumericContext::default() };
    expr::expr_identical(&a.inner, &b.inner, &dom, n_samples, tol, &ctx)
        .map(|rep| (rep.identical, rep.max_residual))
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Runs a verification suite; returns the JSON report. Raises `ValueError`
/// on bad configuration.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=42, hbar=1.0, mass=1.0, radius=1.0, n_theta=48, n_phi=96, disable_mn_term=false))]
#[allow(clippy::too_many_arguments)]
fn run_verification(
    suite: &str,
    seed: u64,
    hbar: f64,
    mass: f64,
    radius: f64,
    n_theta: usize,
    n_phi: usize,
    disable_mn_term: bool,
) -> PyResult<String> {
    let name: SuiteName = suite
        .parse()
        .map_err(|e: String| PyValueError::new_err(e))?;
    let cfg = SuiteConfig {
        hbar,
        mass,
        radius,
        seed,
        n_theta,
        n_phi,
        include_mn_term: !disable_mn_term,
        ..SuiteConfig::default()
    };
    match run_suite(name, &cfg) {
        Ok(report) => Ok(report.to_json()),
        Err(SuiteError::Config(msg)) => Err(PyValueError::new_err(msg)),
        Err(other) => Err(PyValueError::new_err(other.to_string())),
    }
}

#[pymodule]
fn geomom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(momentum_operators, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(geometry_summary, m)?)?;
    m.add_function(wrap_pyfunction!(expr_identical, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
