//! Python bindings. Report-style results are returned as plain dicts and lists
//! with the same layout as the CLI's JSON output; big integers become Python ints.

use genlie::braid_hecke::{BraidMonoid, HeckeAlgebra};
use genlie::defining_char::DefiningContext;
use genlie::degeneration::{build_isomorphism, dg_cohomology_check, AbelianLGroup};
use genlie::ell_local::{sylow_structure_gl, sylow_structure_in};
use genlie::fock_llt::{llt_canonical_basis, FockMatrix};
use genlie::generic_order::{generic_order as core_generic_order, generic_order_gl as core_generic_order_gl, CycloFactorization};
use genlie::root_datum::RootDatum as CoreDatum;
use genlie::weyl::WeylGroup as CoreWeyl;
use genlie::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(genlie_py, GenlieError, PyException, "Base class for library errors.");
create_exception!(genlie_py, GuardExceededError, GenlieError, "A size guard would be exceeded.");
create_exception!(genlie_py, InvariantBreachError, GenlieError, "A checked identity failed.");

fn err(e: Error) -> PyErr {
    match e {
        Error::GuardExceeded { .. } => GuardExceededError::new_err(e.to_string()),
        Error::InvariantBreach { .. } => InvariantBreachError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serialize through JSON; decimal strings for big counts are left as strings.
fn to_py<'py, T: Serialize>(py: Python<'py>, t: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(t).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

#[pyclass(module = "genlie_py", frozen)]
struct RootDatum {
    inner: CoreDatum,
}

#[pymethods]
impl RootDatum {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        Ok(RootDatum { inner: CoreDatum::build(label).map_err(err)? })
    }
    #[getter]
    fn label(&self) -> &str {
        &self.inner.type_label
    }
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }
    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan.clone()
    }
    #[getter]
    fn phi(&self) -> Vec<usize> {
        self.inner.phi.clone()
    }
    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.inner.n_pos
    }
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.pos_roots.clone()
    }
    fn summary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.summary())
    }
    fn __repr__(&self) -> String {
        format!("RootDatum('{}')", self.inner.type_label)
    }
}

#[pyclass(module = "genlie_py", frozen)]
struct WeylGroup {
    inner: CoreWeyl,
}

#[pymethods]
impl WeylGroup {
    #[new]
    #[pyo3(signature = (label, limit=None))]
    fn new(label: &str, limit: Option<u128>) -> PyResult<Self> {
        let d = CoreDatum::build(label).map_err(err)?;
        let inner = match limit {
            Some(l) => CoreWeyl::generate_with_limit(&d, l),
            None => CoreWeyl::generate(&d),
        }
        .map_err(err)?;
        Ok(WeylGroup { inner })
    }
    fn order(&self) -> usize {
        self.inner.order()
    }
    fn __len__(&self) -> usize {
        self.inner.order()
    }
    fn degrees(&self) -> PyResult<Vec<usize>> {
        self.inner.degrees().map_err(err)
    }
    /// Element `i` as a dict with `matrix`, `word` and `length`.
    fn element<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        if i >= self.inner.order() {
            return Err(PyValueError::new_err(format!("index {i} out of range")));
        }
        to_py(py, &self.inner.element(i))
    }
    /// Twisted conjugacy classes as lists of element indices.
    fn twisted_classes(&self) -> Vec<Vec<usize>> {
        self.inner.f_conjugacy_classes().iter().map(|c| c.members.clone()).collect()
    }
    /// Report on d-regular elements, or None.
    fn regular<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.inner.regular_elements(d).map_err(err)? {
            Some(r) => Ok(Some(to_py(py, &r)?)),
            None => Ok(None),
        }
    }
    fn verify_regular_braid<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Bound<'py, PyAny>> {
        let m = BraidMonoid::from_weyl(self.inner.clone());
        to_py(py, &m.verify_regular_braid_identity(d).map_err(err)?)
    }
    /// Coefficients of `sum_w x^{l(w)}` from degree 0.
    fn poincare(&self) -> Vec<i64> {
        let p = HeckeAlgebra::from_weyl(self.inner.clone()).poincare();
        let top = p.max_degree().unwrap_or(0);
        (0..=top).map(|k| p.coeff(k)).collect()
    }
    fn __repr__(&self) -> String {
        format!("WeylGroup('{}', order={})", self.inner.datum.type_label, self.inner.order())
    }
}

#[pyclass(module = "genlie_py", frozen)]
struct CyclotomicOrder {
    inner: CycloFactorization,
}

#[pymethods]
impl CyclotomicOrder {
    #[getter]
    fn qpower(&self) -> u32 {
        self.inner.qpower as u32
    }
    /// `{d: a(d)}` for the cyclotomic factors `Phi_d^{a(d)}`.
    #[getter]
    fn exponents(&self) -> std::collections::BTreeMap<u32, u32> {
        self.inner.exponents.iter().map(|(&d, &a)| (d as u32, a as u32)).collect()
    }
    fn evaluate<'py>(&self, py: Python<'py>, q: u64) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.evaluate(q).map_err(err)?;
        py.import("builtins")?.getattr("int")?.call1((v.to_string(),))
    }
    /// `(d, nu)` with `d` the order of q mod ell and `ell^nu` exactly dividing the order.
    fn ell_part(&self, q: u64, ell: u64) -> PyResult<(u64, u64)> {
        let (d, nu) = self.inner.ell_part(q, ell).map_err(err)?;
        Ok((d as u64, nu as u64))
    }
}

#[pyfunction]
fn generic_order(label: &str) -> PyResult<CyclotomicOrder> {
    let inner = match gl_label(label) {
        Some((n, u)) => core_generic_order_gl(n, u),
        None => core_generic_order(&CoreDatum::build(label).map_err(err)?),
    }
    .map_err(err)?;
    Ok(CyclotomicOrder { inner })
}

fn gl_label(label: &str) -> Option<(usize, bool)> {
    let (rest, unitary) = match (label.strip_prefix("GL"), label.strip_prefix("GU")) {
        (Some(r), _) => (r, false),
        (_, Some(r)) => (r, true),
        _ => return None,
    };
    rest.parse().ok().filter(|&n| n >= 1).map(|n| (n, unitary))
}

#[pyfunction]
fn sylow<'py>(py: Python<'py>, label: &str, q: u64, ell: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = match gl_label(label) {
        Some((n, u)) => sylow_structure_gl(n, u, q, ell),
        None => {
            let w = CoreWeyl::generate(&CoreDatum::build(label).map_err(err)?).map_err(err)?;
            sylow_structure_in(&w, q, ell)
        }
    }
    .map_err(err)?;
    to_py(py, &r)
}

fn with_context<'py, T: Serialize>(
    py: Python<'py>,
    label: &str,
    q: u64,
    f: impl FnOnce(&DefiningContext) -> genlie::Result<T>,
) -> PyResult<Bound<'py, PyAny>> {
    let d = CoreDatum::build(label).map_err(err)?;
    let ctx = DefiningContext::new(&d, q).map_err(err)?;
    to_py(py, &f(&ctx).map_err(err)?)
}

#[pyfunction]
fn blocks<'py>(py: Python<'py>, label: &str, q: u64) -> PyResult<Bound<'py, PyAny>> {
    with_context(py, label, q, |c| c.block_partition())
}

#[pyfunction]
fn alperin_weights<'py>(py: Python<'py>, label: &str, q: u64) -> PyResult<Bound<'py, PyAny>> {
    with_context(py, label, q, |c| c.alperin_weights())
}

#[pyfunction]
fn kr_sum<'py>(py: Python<'py>, label: &str, q: u64) -> PyResult<Bound<'py, PyAny>> {
    with_context(py, label, q, |c| c.knorr_robinson_sum())
}

/// Canonical basis of the Fock space in weight n.
#[pyclass(module = "genlie_py", frozen)]
struct LltMatrix {
    inner: FockMatrix,
}

#[pymethods]
impl LltMatrix {
    #[new]
    fn new(n: usize, d: usize) -> PyResult<Self> {
        Ok(LltMatrix { inner: llt_canonical_basis(n, d).map_err(err)? })
    }
    #[getter]
    fn partitions(&self) -> Vec<Vec<usize>> {
        self.inner.partitions.iter().map(|p| p.parts.clone()).collect()
    }
    /// Entries at v = 1, `[row][col]` = multiplicity of row in column.
    fn at_one(&self) -> Vec<Vec<i64>> {
        self.inner.at_one()
    }
    /// Entry as `{exponent: coefficient}`.
    fn entry(&self, row: usize, col: usize) -> PyResult<std::collections::BTreeMap<i64, i64>> {
        let e = self
            .inner
            .entries
            .get(row)
            .and_then(|r| r.get(col))
            .ok_or_else(|| PyValueError::new_err("index out of range"))?;
        Ok(e.terms().map(|(k, c)| (k as i64, c as i64)).collect())
    }
}

/// Certificate and dg report for `F_ell P`, `factors` as `(r, n)` pairs.
#[pyfunction]
#[pyo3(signature = (ell, factors, e=None, bound=None))]
fn degenerate<'py>(
    py: Python<'py>,
    ell: u64,
    factors: Vec<(u32, usize)>,
    e: Option<Vec<Vec<Vec<i64>>>>,
    bound: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let p = AbelianLGroup::new(ell, factors, e.unwrap_or_default()).map_err(err)?;
    let iso = build_isomorphism(&p).map_err(err)?;
    let b = bound.unwrap_or(2 * p.moduli().iter().copied().max().unwrap_or(0) as usize);
    let dg = dg_cohomology_check(&p, b).map_err(err)?;
    let out = pyo3::types::PyDict::new(py);
    out.set_item("certificate", to_py(py, &iso.certificate)?)?;
    out.set_item("dg", to_py(py, &dg)?)?;
    Ok(out.into_any())
}

#[pymodule]
fn genlie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GenlieError", m.py().get_type::<GenlieError>())?;
    m.add("GuardExceededError", m.py().get_type::<GuardExceededError>())?;
    m.add("InvariantBreachError", m.py().get_type::<InvariantBreachError>())?;
    m.add_class::<RootDatum>()?;
    m.add_class::<WeylGroup>()?;
    m.add_class::<CyclotomicOrder>()?;
    m.add_class::<LltMatrix>()?;
    m.add_function(wrap_pyfunction!(generic_order, m)?)?;
    m.add_function(wrap_pyfunction!(sylow, m)?)?;
    m.add_function(wrap_pyfunction!(blocks, m)?)?;
    m.add_function(wrap_pyfunction!(alperin_weights, m)?)?;
    m.add_function(wrap_pyfunction!(kr_sum, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate, m)?)?;
    Ok(())
}
