//! Python bindings. Tables and certification reports come back as plain
//! dicts (decoded from the same JSON the CLI prints).

use num_bigint::BigUint;
use orbitcode::codes::{self, DEFAULT_PAIR_CAP};
use orbitcode::io::{self, FieldSpec};
use orbitcode::linpoly::{self, DEFAULT_SPLITTING_CAP};
use orbitcode::subspace;
use orbitcode::tables;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(orbitcode, OrbitcodeError, PyException);
create_exception!(orbitcode, CapExceeded, OrbitcodeError);

fn err(e: orbitcode::Error) -> PyErr {
    match e {
        orbitcode::Error::CapExceeded { .. } => CapExceeded::new_err(e.to_string()),
        _ => OrbitcodeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn same_field(a: &orbitcode::FieldCtx, b: &orbitcode::FieldCtx) -> PyResult<()> {
    if a == b {
        Ok(())
    } else {
        Err(PyValueError::new_err("elements from different fields"))
    }
}

/// A finite field F_{p^m} with a marked coefficient level F_q.
#[pyclass(name = "Field", module = "orbitcode", frozen, from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyField(orbitcode::FieldCtx);

#[pymethods]
impl PyField {
    /// `tower` lists absolute degrees over F_p; the first is F_q.
    #[new]
    #[pyo3(signature = (p, tower=None, defining_poly=None, generator=None))]
    fn new(
        p: u64,
        tower: Option<Vec<u32>>,
        defining_poly: Option<Vec<u32>>,
        generator: Option<Vec<u32>>,
    ) -> PyResult<Self> {
        let spec = FieldSpec {
            p,
            tower: tower.unwrap_or_else(|| vec![1]),
            defining_poly,
            generator,
        };
        spec.build().map(Self).map_err(err)
    }

    /// F_{q^n} with default presentations.
    #[staticmethod]
    fn for_q_n(q: u64, n: u32) -> PyResult<Self> {
        FieldSpec::for_q_n(q, n)
            .and_then(|s| s.build())
            .map(Self)
            .map_err(err)
    }

    /// Extension of relative degree `degree`.
    #[pyo3(signature = (degree, defining_poly=None))]
    fn extend(&self, degree: u32, defining_poly: Option<Vec<u32>>) -> PyResult<Self> {
        self.0.extend(degree, defining_poly.as_deref()).map(Self).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.characteristic()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.0.q()
    }

    /// Degree over F_q.
    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree_over_q()
    }

    #[getter]
    fn defining_poly(&self) -> Vec<u32> {
        self.0.defining_poly().to_vec()
    }

    fn size(&self) -> BigUint {
        self.0.size()
    }

    fn zero(&self) -> PyElement {
        PyElement(self.0.zero())
    }

    fn one(&self) -> PyElement {
        PyElement(self.0.one())
    }

    fn generator(&self) -> PyElement {
        PyElement(self.0.generator())
    }

    /// From prime-field digits (constant term first) or an integer.
    fn element(&self, value: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        if let Ok(v) = value.extract::<i64>() {
            return Ok(PyElement(self.0.from_int(v)));
        }
        let digits: Vec<u32> = value.extract()?;
        self.0.element(&digits).map(PyElement).map_err(err)
    }

    fn element_from_index(&self, index: u64) -> PyElement {
        PyElement(self.0.element_from_index(index))
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "Element", module = "orbitcode", frozen, from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement(orbitcode::FieldElement);

#[pymethods]
impl PyElement {
    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.ctx().clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        same_field(self.0.ctx(), other.0.ctx())?;
        Ok(Self(&self.0 + &other.0))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        same_field(self.0.ctx(), other.0.ctx())?;
        Ok(Self(&self.0 - &other.0))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Self).map_err(err)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.div(&other.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __pow__(&self, e: BigUint, modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular pow is not supported"));
        }
        Ok(Self(self.0.pow(&e)))
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(Self).map_err(err)
    }

    /// `x^{q^i}`.
    fn frobenius(&self, i: u64) -> Self {
        Self(self.0.frobenius(i))
    }

    fn multiplicative_order(&self) -> PyResult<BigUint> {
        self.0.multiplicative_order().map_err(err)
    }

    fn embed(&self, field: &PyField) -> PyResult<Self> {
        self.0.embed(&field.0).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

/// `Σ a_i X^{q^i}` over some field.
#[pyclass(name = "LinearizedPoly", module = "orbitcode", frozen, from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyLinPoly(orbitcode::LinearizedPoly);

#[pymethods]
impl PyLinPoly {
    /// `coeffs[i]` is `a_i`.
    #[new]
    fn new(field: &PyField, coeffs: Vec<PyElement>) -> PyResult<Self> {
        let coeffs = coeffs.into_iter().map(|c| c.0).collect();
        orbitcode::LinearizedPoly::new(&field.0, coeffs).map(Self).map_err(err)
    }

    /// From `{"q_coeffs": [[i, a_i], ...]}`.
    #[staticmethod]
    fn from_json(field: &PyField, text: &str) -> PyResult<Self> {
        io::poly_from_json(&field.0, text).map(Self).map_err(err)
    }

    /// `X^{q^k} + a_l X^{q^l} + a_0 X`.
    #[staticmethod]
    fn trinomial(k: usize, l: usize, a_l: &PyElement, a0: &PyElement) -> PyResult<Self> {
        orbitcode::LinearizedPoly::trinomial(k, l, &a_l.0, &a0.0).map(Self).map_err(err)
    }

    /// `X^{q^k} - a_0 X`.
    #[staticmethod]
    fn binomial(k: usize, a0: &PyElement) -> Self {
        Self(orbitcode::LinearizedPoly::binomial(k, &a0.0))
    }

    #[getter]
    fn coeffs(&self) -> Vec<PyElement> {
        self.0.coeffs().iter().cloned().map(PyElement).collect()
    }

    fn q_degree(&self) -> Option<usize> {
        self.0.q_degree()
    }

    fn evaluate(&self, x: &PyElement) -> PyResult<PyElement> {
        self.0.evaluate(&x.0).map(PyElement).map_err(err)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.skew_mul(&other.0).map(Self).map_err(err)
    }

    /// `(quotient, remainder)` with `self = quotient ∘ divisor + remainder`.
    fn divmod(&self, divisor: &Self) -> PyResult<(Self, Self)> {
        let qr = self.0.skew_divmod(&divisor.0).map_err(err)?;
        Ok((Self(qr.quotient), Self(qr.remainder)))
    }

    #[pyo3(signature = (cap=DEFAULT_SPLITTING_CAP))]
    fn splitting_degree(&self, cap: u64) -> PyResult<u64> {
        self.0.splitting_degree(cap).map_err(err)
    }

    fn root_space(&self, ambient: &PyField) -> PyResult<PySubspace> {
        self.0.root_space(&ambient.0).map(PySubspace).map_err(err)
    }

    fn shift(&self, alpha: &PyElement) -> PyResult<Self> {
        subspace::shift_polynomial(&self.0, &alpha.0).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        io::poly_to_json(&self.0).to_string()
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

/// An F_q-subspace of some F_{q^N}.
#[pyclass(name = "Subspace", module = "orbitcode", frozen, from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySubspace(orbitcode::Subspace);

#[pymethods]
impl PySubspace {
    #[staticmethod]
    fn span(field: &PyField, elements: Vec<PyElement>) -> PyResult<Self> {
        let elements: Vec<_> = elements.into_iter().map(|e| e.0).collect();
        orbitcode::Subspace::span(&field.0, &elements).map(Self).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn ambient(&self) -> PyField {
        PyField(self.0.ambient().clone())
    }

    fn basis(&self) -> Vec<PyElement> {
        self.0.basis_elements().into_iter().map(PyElement).collect()
    }

    fn __contains__(&self, x: &PyElement) -> PyResult<bool> {
        self.0.contains(&x.0).map_err(err)
    }

    fn sum(&self, other: &Self) -> PyResult<Self> {
        self.0.sum(&other.0).map(Self).map_err(err)
    }

    fn intersect(&self, other: &Self) -> PyResult<Self> {
        self.0.intersect(&other.0).map(Self).map_err(err)
    }

    fn intersection_dim(&self, other: &Self) -> PyResult<usize> {
        self.0.intersection_dim(&other.0).map_err(err)
    }

    fn distance(&self, other: &Self) -> PyResult<usize> {
        self.0.distance(&other.0).map_err(err)
    }

    fn cyclic_shift(&self, alpha: &PyElement) -> PyResult<Self> {
        self.0.cyclic_shift(&alpha.0).map(Self).map_err(err)
    }

    fn annihilator(&self) -> PyLinPoly {
        PyLinPoly(linpoly::annihilator(&self.0))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyfunction]
fn binomial_splitting_degree(q: u64, k: u32, s: u64) -> PyResult<u64> {
    linpoly::binomial_splitting_degree(q, k, s).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (cap=DEFAULT_SPLITTING_CAP))]
fn table31(py: Python<'_>, cap: u64) -> PyResult<Bound<'_, PyAny>> {
    let t = py.detach(|| tables::table31(cap)).map_err(err)?;
    json_to_py(py, &serde_json::to_value(t).expect("plain data"))
}

/// Defaults to F_2[X]/(X^5 + X^2 + 1).
#[pyfunction]
#[pyo3(signature = (field=None, cap=DEFAULT_SPLITTING_CAP))]
fn table32<'py>(py: Python<'py>, field: Option<&PyField>, cap: u64) -> PyResult<Bound<'py, PyAny>> {
    let ctx = match field {
        Some(f) => f.0.clone(),
        None => FieldSpec::for_q_n(2, 5).and_then(|s| s.build()).map_err(err)?,
    };
    let t = py.detach(|| tables::table32(&ctx, cap)).map_err(err)?;
    json_to_py(py, &serde_json::to_value(t).expect("plain data"))
}

/// Builds the code described by `spec` (JSON text, same format as the CLI)
/// and certifies it. `mode` is "auto", "exact" or "sampled".
#[pyfunction]
#[pyo3(signature = (spec, mode="auto", samples=1000, seed=0, cap=DEFAULT_PAIR_CAP, skip_preconditions=false))]
fn certify<'py>(
    py: Python<'py>,
    spec: &str,
    mode: &str,
    samples: u64,
    seed: u64,
    cap: u64,
    skip_preconditions: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = io::code_spec_from_json(spec, None).map_err(err)?;
    let report = py
        .detach(|| {
            let code = if skip_preconditions {
                codes::build_code_unchecked(&spec)?
            } else {
                codes::build_code(&spec)?
            };
            let exact = match mode {
                "exact" => true,
                "sampled" => false,
                "auto" => code.exact_pair_count() <= cap.into(),
                other => {
                    return Err(orbitcode::Error::InvalidInput(format!("unknown mode {other}")))
                }
            };
            if exact {
                codes::certify_exact(&code, cap)
            } else {
                codes::certify_sampled(&code, samples, seed)
            }
        })
        .map_err(err)?;
    json_to_py(py, &serde_json::to_value(report.without_timing()).expect("plain data"))
}

#[pymodule(name = "orbitcode")]
fn orbitcode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyLinPoly>()?;
    m.add_class::<PySubspace>()?;
    m.add_function(wrap_pyfunction!(binomial_splitting_degree, m)?)?;
    m.add_function(wrap_pyfunction!(table31, m)?)?;
    m.add_function(wrap_pyfunction!(table32, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add("OrbitcodeError", m.py().get_type::<OrbitcodeError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    Ok(())
}
