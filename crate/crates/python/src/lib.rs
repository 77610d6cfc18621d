//! Python bindings. Reports cross the boundary as plain dicts built from the
//! same JSON the command-line tool prints.

use factoriality::construct::{
    cone_over_surface, kollar_quartic, plane_pencil_family, single_point_family, ConstructConfig, ConstructError,
    ConstructionResult,
};
use factoriality::criteria::{decide, BlowupClass, MultiplicityProfile, Position};
use factoriality::invariants::{coplanar, defect as node_defect, intersection_number as top_intersection};
use factoriality::poly::{parse_poly_file, parse_polynomial, write_poly_file, Field, ProjectivePoint};
use factoriality::singularity::{analyze_two_primes, AnalysisConfig, HypersurfaceSpec, SearchLimits};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;
use serde::Serialize;

create_exception!(factoriality, FactorialityError, PyException);
create_exception!(factoriality, BudgetExceeded, FactorialityError);
create_exception!(factoriality, ConstructionFailed, FactorialityError);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| FactorialityError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_field(name: &str) -> PyResult<Field> {
    if name == "Q" {
        return Ok(Field::Rational);
    }
    let p = name
        .strip_prefix("Fp:")
        .or_else(|| name.strip_prefix("F_"))
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| value_error(format!("unknown field '{name}', expected Q or Fp:<prime>")))?;
    Field::prime(p).map_err(value_error)
}

/// A polynomial over Q or F_p in variables x0, x1, ...
#[pyclass(frozen, from_py_object, module = "factoriality")]
#[derive(Clone)]
struct Polynomial {
    inner: factoriality::poly::Polynomial,
}

#[pymethods]
impl Polynomial {
    #[new]
    #[pyo3(signature = (text, nvars, field = "Q"))]
    fn new(text: &str, nvars: usize, field: &str) -> PyResult<Self> {
        let field = parse_field(field)?;
        Ok(Polynomial { inner: parse_polynomial(text, nvars, &field).map_err(value_error)? })
    }

    /// Parse the contents of a .poly file.
    #[staticmethod]
    fn from_poly_file(text: &str) -> PyResult<Self> {
        Ok(Polynomial { inner: parse_poly_file(text).map_err(value_error)?.poly })
    }

    /// Contents of a .poly file holding this polynomial.
    fn to_poly_file(&self) -> String {
        write_poly_file(&self.inner)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn derivative(&self, i: usize) -> PyResult<Self> {
        Ok(Polynomial { inner: self.inner.partial_derivative(i).map_err(value_error)? })
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Self> {
        Ok(Polynomial { inner: self.inner.checked_add(&other.inner).map_err(value_error)? })
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Self> {
        Ok(Polynomial { inner: self.inner.checked_sub(&other.inner).map_err(value_error)? })
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Self> {
        Ok(Polynomial { inner: self.inner.checked_mul(&other.inner).map_err(value_error)? })
    }

    fn __pow__(&self, exp: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        Polynomial { inner: self.inner.pow(exp) }
    }

    fn __eq__(&self, other: &Polynomial) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', nvars={}, field='{}')", self.inner, self.inner.nvars(), self.inner.field())
    }
}

/// Run the factoriality criteria on a multiplicity profile.
#[pyfunction]
#[pyo3(signature = (d, mults, position = "unknown", n = 4))]
fn check<'py>(py: Python<'py>, d: u64, mults: Vec<u64>, position: &str, n: u32) -> PyResult<Bound<'py, PyAny>> {
    let position: Position = position.parse().map_err(value_error)?;
    let profile = MultiplicityProfile::new(n, d, mults, position).map_err(value_error)?;
    to_py(py, &decide(&profile))
}

fn limits(e_max: usize, groebner_budget: u64) -> PyResult<SearchLimits> {
    if e_max == 0 || groebner_budget == 0 {
        return Err(value_error("e_max and groebner_budget must be positive"));
    }
    Ok(SearchLimits { e_max, groebner_budget, ..SearchLimits::default() })
}

/// Find and certify the singular points of a projective hypersurface,
/// cross-checked at two primes.
#[pyfunction]
#[pyo3(signature = (poly, prime = 101, second_prime = 211, e_max = 2, groebner_budget = 1_000_000))]
fn analyze<'py>(
    py: Python<'py>,
    poly: &Polynomial,
    prime: u64,
    second_prime: u64,
    e_max: usize,
    groebner_budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    if prime == second_prime {
        return Err(value_error("the two primes must differ"));
    }
    let spec = HypersurfaceSpec::new(poly.inner.clone()).map_err(value_error)?;
    let config = AnalysisConfig { prime, second_prime, limits: limits(e_max, groebner_budget)? };
    let run = py.detach(|| analyze_two_primes(&spec, &config)).map_err(|e| {
        if e.is_budget() {
            BudgetExceeded::new_err(e.to_string())
        } else {
            value_error(e)
        }
    })?;
    to_py(py, &run)
}

fn construct_error(e: ConstructError) -> PyErr {
    match e {
        ConstructError::RetriesExhausted { .. } => ConstructionFailed::new_err(e.to_string()),
        e if e.is_budget() => BudgetExceeded::new_err(e.to_string()),
        e => value_error(e),
    }
}

/// Build a hypersurface from one of the explicit families: "single-point"
/// (needs d, m), "plane-pencil" (needs t, delta), "kollar" or "cone" (needs g).
/// "example52" and "prop61" are aliases of the first two.
/// Returns the polynomial and the sidecar record.
#[pyfunction]
#[pyo3(signature = (
    family, *, seed = 0, d = None, m = None, fm = None, t = None, delta = None, g = None,
    assert_pic_z = false, prime = 101, second_prime = 211, e_max = 2, groebner_budget = 1_000_000, retries = 32
))]
#[allow(clippy::too_many_arguments)]
fn construct<'py>(
    py: Python<'py>,
    family: &str,
    seed: u64,
    d: Option<u32>,
    m: Option<u32>,
    fm: Option<Polynomial>,
    t: Option<u32>,
    delta: Option<u32>,
    g: Option<Polynomial>,
    assert_pic_z: bool,
    prime: u64,
    second_prime: u64,
    e_max: usize,
    groebner_budget: u64,
    retries: u32,
) -> PyResult<Bound<'py, PyTuple>> {
    if retries == 0 {
        return Err(value_error("retries must be positive"));
    }
    let cfg = ConstructConfig {
        prime,
        second_prime: Some(second_prime),
        limits: limits(e_max, groebner_budget)?,
        max_retries: retries,
    };
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| value_error(format!("{family} needs {name}")));
    let result: Result<ConstructionResult, ConstructError> = match family {
        "single-point" | "example52" => {
            let (d, m) = (need(d, "d")?, need(m, "m")?);
            let fm = fm.map(|p| p.inner);
            py.detach(|| single_point_family(d, m, fm.as_ref(), seed, &cfg))
        }
        "plane-pencil" | "prop61" => {
            let (t, delta) = (need(t, "t")?, need(delta, "delta")?);
            py.detach(|| plane_pencil_family(t, delta, seed, &cfg))
        }
        "kollar" => py.detach(|| kollar_quartic(seed, &cfg)),
        "cone" => {
            let g = g.ok_or_else(|| value_error("cone needs g"))?.inner;
            py.detach(|| cone_over_surface(&g, assert_pic_z, &cfg))
        }
        other => return Err(value_error(format!("unknown family '{other}'"))),
    };
    let result = result.map_err(construct_error)?;
    let poly = Polynomial { inner: result.spec.poly().clone() };
    let record = to_py(py, &result)?;
    PyTuple::new(py, [Bound::new(py, poly)?.into_any(), record])
}

/// Defect and b4 of a nodal hypersurface of degree d from its nodes, given
/// as lists of integers or rational strings such as "1/2".
#[pyfunction]
fn defect<'py>(py: Python<'py>, points: Vec<Vec<Bound<'py, PyAny>>>, d: u32) -> PyResult<Bound<'py, PyAny>> {
    let mut pts = Vec::with_capacity(points.len());
    for coords in &points {
        let coords = coords
            .iter()
            .map(|c| {
                let s = c.str()?.to_string();
                s.trim().parse::<BigRational>().map_err(|_| value_error(format!("bad coordinate '{s}'")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        pts.push(ProjectivePoint::from_rationals(&Field::Rational, &coords).map_err(value_error)?);
    }
    let report = node_defect(&pts, d).map_err(value_error)?;
    let flat = coplanar(&pts).map_err(value_error)?;
    let out = to_py(py, &report)?;
    out.set_item("coplanar", flat)?;
    Ok(out)
}

/// Top self-intersection of aH - sum b_i E_i on the blow-up of P^n at points.
#[pyfunction]
#[pyo3(signature = (a, bs, n = 4))]
fn intersection_number(a: i64, bs: Vec<i64>, n: u32) -> PyResult<BigInt> {
    if n == 0 {
        return Err(value_error("n must be at least 1"));
    }
    Ok(top_intersection(&BlowupClass { n, a, bs }))
}

#[pymodule]
#[pyo3(name = "factoriality")]
fn factoriality_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Polynomial>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(defect, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_number, m)?)?;
    m.add("FactorialityError", py.get_type::<FactorialityError>())?;
    m.add("BudgetExceeded", py.get_type::<BudgetExceeded>())?;
    m.add("ConstructionFailed", py.get_type::<ConstructionFailed>())?;
    Ok(())
}
