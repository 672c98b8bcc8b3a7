//! Python bindings: collections, affine partitions, the explicit families,
//! bounds and the exhaustive searches.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use subcube::affine::{self, AffinePartition};
use subcube::families::{self, WeightVariant};
use subcube::format::{format_scp, parse_scp};
use subcube::qary::{self, ExpansionMap};
use subcube::search::{self, Objective, SearchConstraints};
use subcube::{Error, SubcubeCollection};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "SubcubeCollection", module = "subcube_py")]
struct PySubcubes {
    inner: SubcubeCollection,
}

#[pymethods]
impl PySubcubes {
    #[new]
    fn new(q: u8, words: Vec<String>) -> PyResult<Self> {
        let words: Vec<&str> = words.iter().map(String::as_str).collect();
        SubcubeCollection::parse_words(q, &words).map(|inner| PySubcubes { inner }).map_err(py_err)
    }

    /// Parses the SCP grammar.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_scp(text).map(|inner| PySubcubes { inner }).map_err(py_err)
    }

    #[getter]
    fn q(&self) -> u8 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn members(&self) -> Vec<String> {
        self.inner.members().iter().map(|m| m.to_string()).collect()
    }

    fn is_partition(&self) -> bool {
        self.inner.is_partition()
    }

    fn is_tight(&self) -> bool {
        self.inner.is_tight()
    }

    fn is_irreducible(&self) -> bool {
        subcube::is_irreducible(&self.inner)
    }

    /// `(members, join)` of a sub-collection uniting to a proper subcube,
    /// or `None`.
    fn witness(&self) -> Option<(Vec<String>, String)> {
        let v = subcube::test_irreducible(&self.inner);
        let w = v.witness()?;
        let members = w.members.iter().map(|&i| self.inner.members()[i].to_string()).collect();
        Some((members, w.join.to_string()))
    }

    fn weight_vector(&self) -> PyResult<Vec<u64>> {
        self.inner.weight_vector().map(|w| w.0).map_err(py_err)
    }

    fn canonical(&self) -> PyResult<Self> {
        subcube::canonical_form(&self.inner).map(|c| PySubcubes { inner: c.form }).map_err(py_err)
    }

    fn sorted(&self) -> Self {
        PySubcubes { inner: self.inner.sorted() }
    }

    fn to_text(&self) -> String {
        format_scp(&self.inner)
    }

    fn __eq__(&self, other: &PySubcubes) -> bool {
        self.inner.same_members(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("SubcubeCollection(q={}, n={}, members={:?})", self.inner.q(), self.inner.n(), self.members())
    }
}

#[pyclass(name = "AffinePartition", module = "subcube_py")]
struct PyAffine {
    inner: AffinePartition,
}

#[pymethods]
impl PyAffine {
    /// Parses the AVSP grammar.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        affine::parse_avsp(text).map(|inner| PyAffine { inner }).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn members(&self) -> Vec<String> {
        self.inner.members().iter().map(|m| m.to_string()).collect()
    }

    fn dimensions(&self) -> Vec<u32> {
        self.inner.members().iter().map(|m| m.dimension()).collect()
    }

    fn is_partition(&self) -> bool {
        self.inner.is_partition()
    }

    fn is_tight(&self) -> bool {
        self.inner.is_tight()
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn to_text(&self) -> String {
        affine::format_avsp(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("AffinePartition(n={}, members={})", self.inner.n(), self.inner.len())
    }
}

#[pyclass(name = "SearchReport", module = "subcube_py", get_all)]
struct PyReport {
    objective: String,
    status: String,
    value: Option<u64>,
    solutions: u64,
    classes: Option<usize>,
    nodes: u64,
    complete: bool,
    /// Each certificate in its file grammar.
    certificates: Vec<String>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("SearchReport(objective={:?}, status={:?}, value={:?})", self.objective, self.status, self.value)
    }
}

#[pyclass(name = "Bounds", module = "subcube_py", get_all)]
struct PyBounds {
    n: usize,
    q: u8,
    min_size_lower: Option<u64>,
    /// Exact, as a Python int.
    max_size_upper: Py<PyAny>,
    cover_lower: u64,
    avsp_lower: u64,
    homogeneous_codims: Vec<u32>,
}

/// Named family member: s, weight, cubic, lagarias-shor, xor, maximal,
/// spm, min-dim, homogeneous-6-4, qary, staircase.
#[pyfunction]
#[pyo3(signature = (name, n, q = 2, variant = None, k = None))]
fn family(name: &str, n: usize, q: u8, variant: Option<&str>, k: Option<usize>) -> PyResult<PySubcubes> {
    let inner = match name {
        "s" => families::family_s(n),
        "weight" => variant
            .unwrap_or("A")
            .parse::<WeightVariant>()
            .and_then(|v| families::family_weight(n, v)),
        "cubic" => families::cubic(n),
        "lagarias-shor" => families::lagarias_shor(n),
        "xor" => families::family_s(n).and_then(|f| families::xor_extend(&f, k.unwrap_or(1))),
        "maximal" => families::maximal_family(n),
        "spm" => families::special_perfect_matching(n),
        "min-dim" => families::min_dim_family(n),
        "homogeneous-6-4" => Ok(families::homogeneous_6_4()),
        "qary" => qary::minimal_qary(n, q),
        "staircase" => qary::staircase_cover(n, q),
        _ => return Err(PyValueError::new_err(format!("unknown family `{name}`"))),
    };
    inner.map(|inner| PySubcubes { inner }).map_err(py_err)
}

#[pyfunction]
fn avsp_family(n: usize) -> PyResult<PyAffine> {
    affine::avsp_family(n).map(|inner| PyAffine { inner }).map_err(py_err)
}

/// `(affine partition, tightness condition)`.
#[pyfunction]
fn compress(f: &PySubcubes) -> PyResult<(PyAffine, bool)> {
    let c = affine::compress(&f.inner).map_err(py_err)?;
    Ok((PyAffine { inner: c.avsp }, c.tightness_condition))
}

/// `maps[i][v]` is the bit that symbol `v` goes to at coordinate `i`;
/// default sends 0 to 0 and everything else to 1.
#[pyfunction]
#[pyo3(signature = (f, q, maps = None))]
fn expand(f: &PySubcubes, q: u8, maps: Option<Vec<Vec<u8>>>) -> PyResult<PySubcubes> {
    let phi = match maps {
        Some(m) => ExpansionMap::new(q, m),
        None => ExpansionMap::threshold(q, f.inner.n()),
    }
    .map_err(py_err)?;
    qary::expand(&f.inner, &phi).map(|inner| PySubcubes { inner }).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, q = 2))]
fn bounds(py: Python<'_>, n: usize, q: u8) -> PyResult<PyBounds> {
    let b = search::bounds(n, q).map_err(py_err)?;
    Ok(PyBounds {
        n: b.n,
        q: b.q,
        min_size_lower: b.min_size_lower,
        max_size_upper: py.import("builtins")?.getattr("int")?.call1((b.max_size_upper.to_string(),))?.unbind(),
        cover_lower: b.cover_lower,
        avsp_lower: b.avsp_lower,
        homogeneous_codims: b.homogeneous_codims,
    })
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(name = "search", signature = (objective, n, q = 2, k = None, budget = None, threads = 1, fix_first = false))]
fn run_search(
    py: Python<'_>,
    objective: &str,
    n: usize,
    q: u8,
    k: Option<u32>,
    budget: Option<u64>,
    threads: usize,
    fix_first: bool,
) -> PyResult<PyReport> {
    let objective: Objective = objective.parse().map_err(py_err)?;
    let c = SearchConstraints {
        node_budget: budget.unwrap_or(search::DEFAULT_NODE_BUDGET),
        threads,
        fix_first_subcube: fix_first,
        ..Default::default()
    };
    let report = py
        .detach(|| match objective {
            Objective::MinSize => search::min_size_search(n, q, &c),
            Objective::MinCover => search::min_cover_search(n, q, &c),
            Objective::MaxPoints => search::max_points_search(n, &c),
            Objective::MaxSize => search::max_size_search(n, &c),
            Objective::AvspMinSize => search::avsp_min_size_search(n, &c),
            Objective::Homogeneous => match k {
                Some(k) => search::homogeneous_search(n, k, &c),
                None => Err(Error::Precondition("homogeneous search needs k".into())),
            },
        })
        .map_err(py_err)?;
    Ok(PyReport {
        objective: report.objective.to_string(),
        status: report.status().name().to_string(),
        value: report.value,
        solutions: report.solutions,
        classes: report.classes,
        nodes: report.nodes,
        complete: report.complete,
        certificates: report.certificates.iter().map(|c| c.to_text()).collect(),
    })
}

#[pymodule]
fn subcube_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySubcubes>()?;
    m.add_class::<PyAffine>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyBounds>()?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(avsp_family, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run_search, m)?)?;
    Ok(())
}
