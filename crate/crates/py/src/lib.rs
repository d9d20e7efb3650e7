use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::linroots as core;
use core::{lowdeg, oracle, rootcount, FieldElement, FieldSpec, LinearizedPoly, SqMatrix};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn codes(xs: &[FieldElement]) -> Vec<u32> {
    xs.iter().map(|x| x.code()).collect()
}

fn matrix_rows(m: &SqMatrix) -> Vec<Vec<u32>> {
    m.rows().iter().map(|r| codes(r)).collect()
}

/// The field `F_{q^n}` with `q = p^m` and `σ = x ↦ x^{q^s}`.
#[pyclass(name = "Field", module = "linroots", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Arc<FieldSpec>,
}

impl PyField {
    fn el(&self, code: u64) -> PyResult<FieldElement> {
        self.inner.element(code).map_err(err)
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m, n, s=1, modulus=None))]
    fn new(p: u32, m: u32, n: u32, s: u32, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let inner = FieldSpec::new(p, m, n, s, modulus.as_deref()).map_err(err)?;
        Ok(PyField {
            inner: Arc::new(inner),
        })
    }

    /// Parses `p=..,m=..,n=..,s=..[,mod=..]`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner: FieldSpec = text.parse().map_err(err)?;
        Ok(PyField {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }
    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }
    #[getter]
    fn s(&self) -> u32 {
        self.inner.s()
    }
    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }
    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.add(self.el(a)?, self.el(b)?).code())
    }
    fn sub(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.sub(self.el(a)?, self.el(b)?).code())
    }
    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.mul(self.el(a)?, self.el(b)?).code())
    }
    fn div(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self
            .inner
            .div(self.el(a)?, self.el(b)?)
            .map_err(err)?
            .code())
    }
    fn inv(&self, a: u64) -> PyResult<u32> {
        Ok(self.inner.inv(self.el(a)?).map_err(err)?.code())
    }
    fn pow(&self, a: u64, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.el(a)?, e).code())
    }
    /// `x^{σ^k}`; `k` may be negative.
    #[pyo3(signature = (x, k=1))]
    fn frobenius(&self, x: u64, k: i64) -> PyResult<u32> {
        Ok(self.inner.frobenius(self.el(x)?, k).code())
    }
    fn norm(&self, x: u64) -> PyResult<u32> {
        Ok(self.inner.norm(self.el(x)?).code())
    }
    fn trace(&self, x: u64) -> PyResult<u32> {
        Ok(self.inner.trace(self.el(x)?).code())
    }
    fn in_base_field(&self, x: u64) -> PyResult<bool> {
        Ok(self.inner.in_base_field(self.el(x)?))
    }
    fn from_int(&self, v: i64) -> u32 {
        self.inner.from_int(v).code()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
    fn __repr__(&self) -> String {
        format!("Field('{}')", self.inner)
    }
    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// `L = Σ a_i x^{σ^i}` over a [`PyField`].
#[pyclass(name = "LinPoly", module = "linroots", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLinPoly {
    inner: LinearizedPoly,
}

fn wrap(inner: LinearizedPoly) -> PyLinPoly {
    PyLinPoly { inner }
}

#[pymethods]
impl PyLinPoly {
    #[new]
    fn new(field: &PyField, coeffs: Vec<u64>) -> PyResult<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| field.el(c))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(wrap(
            LinearizedPoly::new(field.inner.clone(), coeffs).map_err(err)?,
        ))
    }

    /// Parses `a_0;a_1;...`.
    #[staticmethod]
    fn parse(field: &PyField, text: &str) -> PyResult<Self> {
        Ok(wrap(
            LinearizedPoly::parse(field.inner.clone(), text).map_err(err)?,
        ))
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }
    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        codes(self.inner.coeffs())
    }
    /// σ-degree, or `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn eval(&self, x: u64) -> PyResult<u32> {
        let x = self.inner.field().element(x).map_err(err)?;
        Ok(self.inner.eval(x).code())
    }
    fn proj_eval(&self, y: u64) -> PyResult<u32> {
        let y = self.inner.field().element(y).map_err(err)?;
        Ok(self.inner.proj_eval(y).code())
    }
    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.add(&other.inner).map_err(err)?))
    }
    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.sub(&other.inner).map_err(err)?))
    }
    /// `(self ∘ other)(x) = self(other(x))`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.compose(&other.inner).map_err(err)?))
    }
    /// `(Q, R)` with `self = Q ∘ divisor + R`.
    fn div_rem_right(&self, divisor: &Self) -> PyResult<(Self, Self)> {
        let (q, r) = self.inner.div_rem_right(&divisor.inner).map_err(err)?;
        Ok((wrap(q), wrap(r)))
    }
    fn gcrc(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.gcrc(&other.inner).map_err(err)?))
    }
    fn lclc(&self, other: &Self) -> PyResult<Self> {
        Ok(wrap(self.inner.lclc(&other.inner).map_err(err)?))
    }
    fn twist(&self, alpha: u64) -> PyResult<Self> {
        let a = self.inner.field().element(alpha).map_err(err)?;
        Ok(wrap(self.inner.twist(a).map_err(err)?))
    }

    fn a_matrix(&self) -> PyResult<Vec<Vec<u32>>> {
        Ok(matrix_rows(&SqMatrix::a_matrix(&self.inner).map_err(err)?))
    }
    fn dickson(&self) -> PyResult<Vec<Vec<u32>>> {
        Ok(matrix_rows(&self.inner.dickson().map_err(err)?))
    }
    /// Coefficients `c_0..c_d` of the characteristic polynomial of `A_L`.
    fn char_poly(&self) -> PyResult<Vec<u32>> {
        let m = SqMatrix::a_matrix(&self.inner).map_err(err)?;
        Ok(codes(m.char_poly().map_err(err)?.coeffs()))
    }
    fn nullity(&self) -> PyResult<usize> {
        rootcount::nullity_of(&self.inner).map_err(err)
    }
    fn count_proj_roots(&self) -> PyResult<u64> {
        rootcount::count_proj_roots(&self.inner).map_err(err)
    }

    /// Coefficient-only classification (σ-degree 2 or 3).
    fn classify(&self) -> PyResult<BTreeMap<String, String>> {
        let l = &self.inner;
        let mut out = BTreeMap::new();
        match l.degree() {
            Some(2) => {
                let p = lowdeg::classify_proj_deg2(l).map_err(err)?;
                let n = lowdeg::classify_lin_deg2(l).map_err(err)?;
                out.insert("proj_roots".into(), p.count.to_string());
                out.insert("proj_case".into(), p.tag.into());
                out.insert("nullity".into(), n.count.to_string());
                out.insert("nullity_case".into(), n.tag.into());
            }
            Some(3) => {
                let p = lowdeg::classify_proj_deg3(l).map_err(err)?;
                let n = lowdeg::classify_lin_deg3(l).map_err(err)?;
                out.insert("proj_roots".into(), p.count.to_string());
                out.insert("proj_case".into(), p.tag.into());
                out.insert("nullity".into(), n.nullity.to_string());
                out.insert("permutation".into(), n.permutation.to_string());
            }
            other => {
                return Err(err(core::Error::WrongDegree {
                    expected: 2,
                    found: other,
                }))
            }
        }
        Ok(out)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
    fn __repr__(&self) -> String {
        format!("LinPoly('{}')", self.inner)
    }
    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// All roots of `L` and the dimension of the root space, by enumeration.
#[pyfunction]
fn brute_roots_lin(poly: &PyLinPoly) -> PyResult<(Vec<u32>, usize)> {
    let (roots, dim) = oracle::brute_roots_lin(&poly.inner).map_err(err)?;
    Ok((codes(&roots), dim))
}

/// All roots of `P_L`, by enumeration.
#[pyfunction]
fn brute_roots_proj(poly: &PyLinPoly) -> PyResult<Vec<u32>> {
    Ok(codes(&oracle::brute_roots_proj(&poly.inner).map_err(err)?))
}

/// Every count of `poly` by every applicable method, plus the list of
/// disagreements (empty when all methods agree).
#[pyfunction]
fn crosscheck(py: Python<'_>, poly: &PyLinPoly) -> PyResult<Py<PyAny>> {
    let c = oracle::crosscheck(&poly.inner).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("nullity_brute", c.nullity_brute)?;
    d.set_item("nullity_matrix", c.nullity_matrix)?;
    d.set_item("nullity_gcrc", c.nullity_gcrc)?;
    d.set_item("nullity_dickson", c.nullity_dickson)?;
    d.set_item("nullity_closed", c.nullity_closed)?;
    d.set_item("proj_brute", c.proj_brute)?;
    d.set_item("proj_matrix", c.proj_matrix)?;
    d.set_item("proj_gcrc", c.proj_gcrc)?;
    d.set_item("proj_closed", c.proj_closed)?;
    d.set_item("tags", c.tags.clone())?;
    d.set_item("disagreements", c.disagreements.clone())?;
    d.set_item("agree", c.agree())?;
    Ok(d.into_any().unbind())
}

/// Runs a verification sweep; returns tuple and disagreement counts and the
/// per-branch case counts.
#[pyfunction]
#[pyo3(signature = (field, degree, samples=None, seed=0))]
fn sweep(
    py: Python<'_>,
    field: &PyField,
    degree: usize,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let mode = match samples {
        None => oracle::SweepMode::Exhaustive,
        Some(samples) => oracle::SweepMode::Random { samples, seed },
    };
    let plan = oracle::SweepPlan::new(field.inner.clone(), degree, mode).map_err(err)?;
    let s = py.detach(|| oracle::run_sweep(&plan)).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("tuples", s.tuples)?;
    d.set_item("disagreements", s.disagreements)?;
    d.set_item("cases", s.cases.clone())?;
    d.set_item(
        "examples",
        s.examples.iter().map(|e| e.1.clone()).collect::<Vec<_>>(),
    )?;
    Ok(d.into_any().unbind())
}

/// Exhaustive search for σ-degree 2 or 3 polynomials whose `P_L` splits
/// completely; returns the coefficient tuples.
#[pyfunction]
fn search_split(py: Python<'_>, field: &PyField, degree: usize) -> PyResult<Vec<Vec<u32>>> {
    let f = field.inner.clone();
    let r = py
        .detach(|| {
            oracle::search_split(
                f,
                degree,
                oracle::SweepMode::Exhaustive,
                oracle::DEFAULT_BUDGET,
            )
        })
        .map_err(err)?;
    Ok(r.hits.iter().map(|t| codes(t)).collect())
}

#[pymodule]
#[pyo3(name = "linroots")]
fn linroots_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyField>()?;
    m.add_class::<PyLinPoly>()?;
    m.add_function(wrap_pyfunction!(brute_roots_lin, m)?)?;
    m.add_function(wrap_pyfunction!(brute_roots_proj, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(search_split, m)?)?;
    Ok(())
}
