//! Python bindings. Rationals cross the boundary as strings such as `"-6/5"`;
//! structured reports arrive as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use topozeta::analysis::{self, FamilySpec, SearchOptions, DEFAULT_DEGREE_BOUND};
use topozeta::arith::{parse_rational, NormalForm, ZetaExpression};
use topozeta::bsp::{self, TwoMonomialIdeal};
use topozeta::input::{parse_ideal, parse_polynomial};
use topozeta::lattice::ExponentVector;
use topozeta::newton::MonomialIdeal;
use topozeta::resolution::{self, ResolutionDiagram};
use topozeta::zeta::{NondegeneracyPolicy, Variant, ZetaRequest};
use topozeta::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// An ideal given as text (`"(xy,x^5)"`, or JSON) or as exponent lists.
#[derive(FromPyObject)]
enum IdealArg {
    Text(String),
    Generators(Vec<Vec<i64>>),
}

impl IdealArg {
    fn build(self) -> PyResult<MonomialIdeal> {
        match self {
            IdealArg::Text(s) => parse_ideal(&s, None).map_err(py_err),
            IdealArg::Generators(gens) => {
                MonomialIdeal::new(gens.into_iter().map(ExponentVector::new).collect()).map_err(py_err)
            }
        }
    }
}

fn settings(variant: &str, assume_nondegenerate: bool) -> PyResult<(Variant, NondegeneracyPolicy)> {
    let variant = match variant {
        "local" => Variant::Local,
        "global" => Variant::Global,
        other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    };
    let policy =
        if assume_nondegenerate { NondegeneracyPolicy::AllowAssumed } else { NondegeneracyPolicy::RequireProof };
    Ok((variant, policy))
}

fn request(ideal: IdealArg, form: &str, variant: &str, assume_nondegenerate: bool) -> PyResult<ZetaRequest> {
    let ideal = ideal.build()?;
    let g = parse_polynomial(form, ideal.dim()).map_err(py_err)?;
    let (variant, policy) = settings(variant, assume_nondegenerate)?;
    Ok(ZetaRequest::new(ideal, g).variant(variant).policy(policy))
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A computed zeta function in exact normal form.
#[pyclass(frozen, name = "Zeta", module = "topozeta_py")]
struct PyZeta {
    terms: ZetaExpression,
    normal: NormalForm,
}

#[pymethods]
impl PyZeta {
    /// Poles as dicts with `location`, `order`, `leading_coefficient` and `residue`.
    fn poles(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.normal.poles())
    }

    fn pole_locations(&self) -> Vec<String> {
        self.normal.poles().locations().iter().map(|r| r.to_string()).collect()
    }

    /// Coefficient of `(s - s0)^(-k)`.
    fn laurent_coefficient(&self, s0: &str, k: i64) -> PyResult<String> {
        let s0 = parse_rational(s0).map_err(py_err)?;
        Ok(self.normal.laurent_coefficient(&s0, k).to_string())
    }

    /// Value at a rational point, or `None` at a pole.
    fn eval(&self, s: &str) -> PyResult<Option<String>> {
        let s = parse_rational(s).map_err(py_err)?;
        Ok(self.normal.eval(&s).map(|v| v.to_string()))
    }

    /// The unsimplified sum of cone contributions.
    fn terms(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.terms)
    }

    fn __str__(&self) -> String {
        self.normal.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Zeta({})", self.normal)
    }

    fn __eq__(&self, other: &PyZeta) -> bool {
        self.normal == other.normal
    }
}

/// A principalization of `I * (g)` as a dual graph.
#[pyclass(frozen, name = "Resolution", module = "topozeta_py")]
struct PyResolution {
    diagram: ResolutionDiagram,
}

#[pymethods]
impl PyResolution {
    #[getter]
    fn blowups(&self) -> usize {
        self.diagram.blowups
    }

    /// `(label, kind, N, nu)` for every node.
    #[getter]
    fn nodes(&self) -> Vec<(String, String, i64, i64)> {
        self.diagram.nodes.iter().map(|n| (n.label.clone(), format!("{:?}", n.kind), n.n, n.nu)).collect()
    }

    /// Pairs of adjacent labels.
    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        let label = |i: usize| self.diagram.nodes[i].label.clone();
        self.diagram.edges.iter().map(|e| (label(e.a), label(e.b))).collect()
    }

    fn zeta(&self) -> PyResult<PyZeta> {
        let terms = resolution::zeta_from_resolution(&self.diagram).map_err(py_err)?;
        Ok(PyZeta { normal: terms.normalize(), terms })
    }

    /// Residue contributions of every divisor at a candidate pole.
    fn analyze(&self, py: Python<'_>, s0: &str) -> PyResult<Py<PyAny>> {
        let s0 = parse_rational(s0).map_err(py_err)?;
        to_py(py, &resolution::analyze_candidate(&self.diagram, &s0).map_err(py_err)?)
    }

    fn dot(&self) -> String {
        self.diagram.to_dot()
    }

    fn __repr__(&self) -> String {
        format!("Resolution(nodes={}, blowups={})", self.diagram.nodes.len(), self.diagram.blowups)
    }
}

#[pyfunction]
#[pyo3(signature = (ideal, form = "1", variant = "local", assume_nondegenerate = false))]
fn zeta(ideal: IdealArg, form: &str, variant: &str, assume_nondegenerate: bool) -> PyResult<PyZeta> {
    let req = request(ideal, form, variant, assume_nondegenerate)?;
    let terms = topozeta::zeta::zeta(&req).map_err(py_err)?;
    Ok(PyZeta { normal: terms.normalize(), terms })
}

#[pyfunction]
#[pyo3(signature = (ideal, form = "1", variant = "local", assume_nondegenerate = false))]
fn poles(ideal: IdealArg, form: &str, variant: &str, assume_nondegenerate: bool) -> PyResult<Vec<String>> {
    Ok(zeta(ideal, form, variant, assume_nondegenerate)?.pole_locations())
}

#[pyfunction]
#[pyo3(signature = (ideal, s0, k, form = "1", variant = "local"))]
fn laurent_coefficient(ideal: IdealArg, s0: &str, k: i64, form: &str, variant: &str) -> PyResult<String> {
    zeta(ideal, form, variant, false)?.laurent_coefficient(s0, k)
}

/// Roots of the Bernstein-Sato polynomial, where a closed formula or table applies.
#[pyfunction]
fn roots(ideal: IdealArg) -> PyResult<Vec<String>> {
    let set = bsp::roots_for(&ideal.build()?).map_err(py_err)?;
    Ok(set.roots().iter().map(|r| r.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (ideal, form = "1", variant = "local", assume_nondegenerate = false))]
fn check_inclusion(
    py: Python<'_>,
    ideal: IdealArg,
    form: &str,
    variant: &str,
    assume_nondegenerate: bool,
) -> PyResult<Py<PyAny>> {
    let req = request(ideal, form, variant, assume_nondegenerate)?;
    to_py(py, &analysis::check_inclusion(&req).map_err(py_err)?)
}

/// Bounded search for forms whose poles reach the roots.
#[pyfunction]
#[pyo3(signature = (ideal, family = "monomials", degree_bound = DEFAULT_DEGREE_BOUND, variant = "local", assume_nondegenerate = false))]
fn coverage_search(
    py: Python<'_>,
    ideal: IdealArg,
    family: &str,
    degree_bound: u32,
    variant: &str,
    assume_nondegenerate: bool,
) -> PyResult<Py<PyAny>> {
    let ideal = ideal.build()?;
    let spec = match family {
        "monomials" => FamilySpec::Monomials { degree_bound },
        "case1" => FamilySpec::SquarePlusPower { degree_bound },
        "case2" => FamilySpec::SquareMixedPower { degree_bound },
        "covering" => {
            let two = TwoMonomialIdeal::from_ideal(&ideal)
                .ok_or_else(|| PyValueError::new_err("the covering family needs two generators in two variables"))?;
            analysis::two_monomial_covering_family(&two)
        }
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    let (variant, policy) = settings(variant, assume_nondegenerate)?;
    let opts = SearchOptions { variant, policy, ..SearchOptions::from_env().map_err(py_err)? };
    let report = py.detach(|| analysis::coverage_search(&ideal, &spec, &opts)).map_err(py_err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (ideal, form = "1"))]
fn resolve(ideal: IdealArg, form: &str) -> PyResult<PyResolution> {
    let ideal = ideal.build()?;
    let g = parse_polynomial(form, ideal.dim()).map_err(py_err)?;
    Ok(PyResolution { diagram: resolution::principalize(&ideal, &g).map_err(py_err)? })
}

#[pymodule]
fn topozeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZeta>()?;
    m.add_class::<PyResolution>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(poles, m)?)?;
    m.add_function(wrap_pyfunction!(laurent_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(check_inclusion, m)?)?;
    m.add_function(wrap_pyfunction!(coverage_search, m)?)?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    Ok(())
}
