//! Python bindings for `knotted_tori`.
//!
//! Verdicts come back as [`Verdict`] objects, rank bounds as
//! [`PyRankInterval`] objects. Hypothesis violations raise `DomainError`,
//! unreadable rank tables raise `TableError`, and rank tables that contradict
//! a verdict raise `InconsistencyError`.

use knotted_tori::census::{self, io as census_io, GridBounds};
use knotted_tori::criteria::{self, DomainError as CoreDomainError, FinitenessVerdict};
use knotted_tori::fcs::{self, LatticePoint, LineEquation};
use knotted_tori::rank::{
    DefaultProvider, RankContext, RankError, RankInterval, RankProvider,
    TableError as CoreTableError, TableProvider,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    knotted_tori_py,
    DomainError,
    PyValueError,
    "A dimension hypothesis does not hold."
);
create_exception!(
    knotted_tori_py,
    TableError,
    PyException,
    "A rank table could not be read."
);
create_exception!(
    knotted_tori_py,
    InconsistencyError,
    PyException,
    "Rank data contradicts a verdict."
);

fn domain(e: CoreDomainError) -> PyErr {
    DomainError::new_err(e.to_string())
}

fn rank_err(e: RankError) -> PyErr {
    match e {
        RankError::Domain(d) => domain(d),
        other => InconsistencyError::new_err(other.to_string()),
    }
}

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Finite or infinite, with the deciding condition and lattice witness.
#[pyclass(frozen, skip_from_py_object, module = "knotted_tori_py")]
#[derive(Clone)]
pub struct Verdict {
    inner: FinitenessVerdict,
}

#[pymethods]
impl Verdict {
    #[getter]
    fn infinite(&self) -> bool {
        self.inner.is_infinite()
    }

    #[getter]
    fn condition(&self) -> Option<String> {
        self.inner.explanation().map(|e| e.condition.clone())
    }

    #[getter]
    fn witness(&self) -> Option<(i64, i64)> {
        self.inner.witness().map(|w| (w.x, w.y))
    }

    fn explain(&self) -> String {
        format!("{:#}", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({:#})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl From<FinitenessVerdict> for Verdict {
    fn from(inner: FinitenessVerdict) -> Self {
        Verdict { inner }
    }
}

/// Closed interval `[lo, hi]` of possible ranks; `hi` is `None` when unbounded.
#[pyclass(
    frozen,
    skip_from_py_object,
    name = "RankInterval",
    module = "knotted_tori_py"
)]
#[derive(Clone, Copy)]
pub struct PyRankInterval {
    inner: RankInterval,
}

#[pymethods]
impl PyRankInterval {
    #[new]
    #[pyo3(signature = (lo, hi=None))]
    fn new(lo: u64, hi: Option<u64>) -> PyResult<Self> {
        RankInterval::new(lo, hi)
            .map(|inner| PyRankInterval { inner })
            .ok_or_else(|| value_err("lo exceeds hi"))
    }

    #[getter]
    fn lo(&self) -> u64 {
        self.inner.lo()
    }

    #[getter]
    fn hi(&self) -> Option<u64> {
        self.inner.hi()
    }

    fn contains(&self, r: u64) -> bool {
        self.inner.contains(r)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyRankInterval {
            inner: self.inner + other.inner,
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RankInterval({})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl From<RankInterval> for PyRankInterval {
    fn from(inner: RankInterval) -> Self {
        PyRankInterval { inner }
    }
}

#[pyclass(frozen, module = "knotted_tori_py")]
pub struct CensusRecord {
    #[pyo3(get)]
    p: u32,
    #[pyo3(get)]
    q: u32,
    #[pyo3(get)]
    m: u32,
    #[pyo3(get)]
    tori: Verdict,
    #[pyo3(get)]
    rank: PyRankInterval,
}

#[pymethods]
impl CensusRecord {
    fn __repr__(&self) -> String {
        format!(
            "CensusRecord(({},{},{}) {:#} rank {})",
            self.p, self.q, self.m, self.tori.inner, self.rank.inner
        )
    }
}

fn provider(table: Option<&str>) -> PyResult<Box<dyn RankProvider>> {
    match table {
        None => Ok(Box::new(DefaultProvider::default())),
        Some(path) => TableProvider::load(path)
            .map(|p| Box::new(p) as Box<dyn RankProvider>)
            .map_err(|e: CoreTableError| TableError::new_err(e.to_string())),
    }
}

fn grid(p: (u32, u32), q: (u32, u32)) -> PyResult<GridBounds> {
    GridBounds::auto(p.0..=p.1, q.0..=q.1).map_err(value_err)
}

#[pyfunction]
fn knot_infinite(q: u32, m: u32) -> PyResult<Verdict> {
    criteria::knot_infinite(q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn framed_knot_infinite(p: u32, q: u32, m: u32) -> PyResult<Verdict> {
    criteria::framed_knot_infinite(p, q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn link_unknotted_infinite(p: u32, q: u32, m: u32) -> PyResult<Verdict> {
    criteria::link_unknotted_infinite(p, q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn link_zero_infinite(n: u32, q: u32, m: u32) -> PyResult<Verdict> {
    criteria::link_zero_infinite(n, q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn knotted_tori_infinite(p: u32, q: u32, m: u32) -> PyResult<Verdict> {
    criteria::knotted_tori_infinite(p, q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn knotted_tori_infinite_via_components(p: u32, q: u32, m: u32) -> PyResult<Verdict> {
    criteria::knotted_tori_infinite_via_components(p, q, m)
        .map(Verdict::from)
        .map_err(domain)
}

#[pyfunction]
fn fcs_contains(i: i64, j: i64, x: i64, y: i64) -> bool {
    fcs::fcs_contains(i, j, LatticePoint::new(x, y))
}

/// Text of the clause containing `(x, y)`, or `None`.
#[pyfunction]
fn fcs_clause(i: i64, j: i64, x: i64, y: i64) -> Option<String> {
    fcs::fcs_membership(i, j, LatticePoint::new(x, y)).map(|m| m.to_string())
}

#[pyfunction]
fn fcs_window(i: i64, j: i64, x_max: i64, y_max: i64) -> PyResult<Vec<(i64, i64)>> {
    let points = fcs::fcs_window(i, j, x_max, y_max).map_err(value_err)?;
    Ok(points.into_iter().map(|p| (p.x, p.y)).collect())
}

/// First member of `FCS(i, j)` on `ax + by = c`, by increasing `x`.
#[pyfunction]
fn fcs_line_witness(i: i64, j: i64, a: i64, b: i64, c: i64) -> PyResult<Option<(i64, i64)>> {
    let eq = LineEquation::new(a, b, c).map_err(value_err)?;
    Ok(fcs::fcs_line_witness(i, j, &eq).map(|p| (p.x, p.y)))
}

#[pyfunction]
#[pyo3(signature = (p, q, m, table=None))]
fn tori_rank(p: u32, q: u32, m: u32, table: Option<&str>) -> PyResult<PyRankInterval> {
    let provider = provider(table)?;
    let c = criteria::Criteria::standard();
    RankContext::new(&c, provider.as_ref())
        .tori_rank(p, q, m)
        .map(Into::into)
        .map_err(rank_err)
}

#[pyfunction]
#[pyo3(signature = (p, q, m, table=None))]
fn full_link_rank(p: u32, q: u32, m: u32, table: Option<&str>) -> PyResult<PyRankInterval> {
    let provider = provider(table)?;
    let c = criteria::Criteria::standard();
    RankContext::new(&c, provider.as_ref())
        .full_link_rank(p, q, m)
        .map(Into::into)
        .map_err(domain)
}

fn census_records(
    p: (u32, u32),
    q: (u32, u32),
    table: Option<&str>,
) -> PyResult<Vec<census::CensusRecord>> {
    let provider = provider(table)?;
    census::run_census(&grid(p, q)?, provider.as_ref()).map_err(rank_err)
}

/// Every in-domain triple with `p` and `q` in the given inclusive ranges.
#[pyfunction]
#[pyo3(name = "census", signature = (p, q, table=None))]
fn run_census(p: (u32, u32), q: (u32, u32), table: Option<&str>) -> PyResult<Vec<CensusRecord>> {
    Ok(census_records(p, q, table)?
        .into_iter()
        .map(|r| CensusRecord {
            p: r.triple.p,
            q: r.triple.q,
            m: r.triple.m,
            tori: r.tori.into(),
            rank: r.rank.into(),
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (p, q, table=None))]
fn census_csv(p: (u32, u32), q: (u32, u32), table: Option<&str>) -> PyResult<String> {
    census_io::to_csv(&census_records(p, q, table)?).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (p, q, table=None))]
fn census_json(p: (u32, u32), q: (u32, u32), table: Option<&str>) -> PyResult<String> {
    census_io::to_json(&census_records(p, q, table)?).map_err(value_err)
}

/// Failure counts `(equivalence, chain, vacuity)` over the grid.
#[pyfunction]
#[pyo3(signature = (p, q, table=None))]
fn consistency_counts(
    p: (u32, u32),
    q: (u32, u32),
    table: Option<&str>,
) -> PyResult<(usize, usize, usize)> {
    let provider = provider(table)?;
    let r = census::consistency_report(&grid(p, q)?, provider.as_ref());
    Ok((
        r.equivalence_failures.len(),
        r.chain_violations.len(),
        r.vacuity_failures.len(),
    ))
}

#[pymodule]
fn knotted_tori_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("TableError", py.get_type::<TableError>())?;
    m.add("InconsistencyError", py.get_type::<InconsistencyError>())?;
    m.add_class::<Verdict>()?;
    m.add_class::<PyRankInterval>()?;
    m.add_class::<CensusRecord>()?;
    m.add_function(wrap_pyfunction!(knot_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(framed_knot_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(link_unknotted_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(link_zero_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(knotted_tori_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(knotted_tori_infinite_via_components, m)?)?;
    m.add_function(wrap_pyfunction!(fcs_contains, m)?)?;
    m.add_function(wrap_pyfunction!(fcs_clause, m)?)?;
    m.add_function(wrap_pyfunction!(fcs_window, m)?)?;
    m.add_function(wrap_pyfunction!(fcs_line_witness, m)?)?;
    m.add_function(wrap_pyfunction!(tori_rank, m)?)?;
    m.add_function(wrap_pyfunction!(full_link_rank, m)?)?;
    m.add_function(wrap_pyfunction!(run_census, m)?)?;
    m.add_function(wrap_pyfunction!(census_csv, m)?)?;
    m.add_function(wrap_pyfunction!(census_json, m)?)?;
    m.add_function(wrap_pyfunction!(consistency_counts, m)?)?;
    Ok(())
}
