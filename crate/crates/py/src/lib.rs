//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use std::sync::Arc;

use galmod_core::arith::Q;
use galmod_core::cli::{load_group, resolve_subgroup, run_from};
use galmod_core::dist::{
    self, closed_form_moment, invert_moments, truncated_table, DistributionTable,
};
use galmod_core::group::Group;
use galmod_core::hecke::{hecke_order, nongalois_table};
use galmod_core::limits::Limits;
use galmod_core::module::{enumerate_types, GammaModule, ModuleType, TruncationSpec};
use galmod_core::rep::{good_primes, rank_u, Decomposition, RankSpec};
use galmod_core::triples::{aut_count, build_class_triple, verify_uniqueness, AutMethod};
use galmod_core::verify;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

fn err(e: galmod_core::Error) -> PyErr {
    match e {
        galmod_core::Error::Usage(_)
        | galmod_core::Error::Parse(_)
        | galmod_core::Error::Format(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Q) -> PyResult<Bound<'py, PyAny>> {
    let int = py.import("builtins")?.getattr("int")?;
    let n = int.call1((q.numer().to_string(),))?;
    let d = int.call1((q.denom().to_string(),))?;
    py.import("fractions")?.getattr("Fraction")?.call1((n, d))
}

fn to_q(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    let text: String = x.str()?.extract()?;
    galmod_core::arith::parse_q(&text)
        .ok_or_else(|| PyValueError::new_err(format!("not a rational: {text}")))
}

fn trunc(exponents: Vec<(u64, u32)>, bound: Option<u128>) -> TruncationSpec {
    TruncationSpec::new(exponents, bound)
}

/// A finite group given by name or TOML spec path.
#[pyclass(name = "Group", module = "galmod", frozen)]
struct PyGroup {
    inner: Arc<Group>,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: Arc::new(load_group(spec, &Limits::default()).map_err(err)?),
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.inner.classes().iter().map(|c| c.size()).collect()
    }

    fn elements(&self) -> Vec<String> {
        (0..self.inner.order())
            .map(|x| self.inner.element_label(x))
            .collect()
    }

    /// Subgroup order for `trivial`, `whole`, a named subgroup or an element.
    fn subgroup_order(&self, name: &str) -> PyResult<usize> {
        Ok(resolve_subgroup(&self.inner, name).map_err(err)?.order())
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.inner.name(), self.inner.order())
    }
}

/// `Σ_i m_i e_i` tagged by component, prime and partition.
#[pyclass(
    name = "ModuleType",
    module = "galmod",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyModuleType {
    inner: ModuleType,
}

#[pymethods]
impl PyModuleType {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyModuleType {
            inner: ModuleType::parse(text).map_err(err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(component, prime, parts)` per entry.
    fn entries(&self) -> Vec<(usize, u64, Vec<u32>)> {
        self.inner
            .entries()
            .iter()
            .map(|e| (e.component, e.prime, e.partition.parts().to_vec()))
            .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ModuleType('{}')", self.inner)
    }
}

/// Weights and probabilities of a truncated table.
#[pyclass(name = "DistributionTable", module = "galmod", frozen)]
struct PyTable {
    inner: DistributionTable,
    dec: Arc<Decomposition>,
}

#[pymethods]
impl PyTable {
    fn __len__(&self) -> usize {
        self.inner.rows.len()
    }

    #[getter]
    fn normalizer<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.normalizer)
    }

    /// `(type, weight, probability)` per row.
    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        self.inner
            .rows
            .iter()
            .map(|r| {
                let t = PyModuleType {
                    inner: r.module_type.clone(),
                }
                .into_pyobject(py)?
                .into_any();
                PyTuple::new(
                    py,
                    [t, fraction(py, &r.weight)?, fraction(py, &r.probability)?],
                )
            })
            .collect()
    }

    fn probability<'py>(&self, py: Python<'py>, t: &PyModuleType) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.probability_of(&t.inner))
    }

    /// Truncated `E[#Sur(X, H)]`.
    fn moment<'py>(&self, py: Python<'py>, t: &PyModuleType) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &dist::moment(&self.inner, &t.inner, &self.dec)
                .map_err(err)?
                .truncated,
        )
    }

    fn sample(&self, seed: u64, count: usize) -> PyResult<Vec<PyModuleType>> {
        let draws = dist::sample(&self.inner, seed, count).map_err(err)?;
        Ok(draws
            .into_iter()
            .map(|inner| PyModuleType { inner })
            .collect())
    }
}

/// Wedderburn decomposition of the rational group algebra.
#[pyclass(name = "Decomposition", module = "galmod", frozen)]
struct PyDecomposition {
    inner: Arc<Decomposition>,
}

impl PyDecomposition {
    fn ranks(
        &self,
        places: Option<Vec<String>>,
        u: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<RankSpec> {
        match (places, u) {
            (Some(p), None) => {
                let g = &self.inner.group;
                let subs = p
                    .iter()
                    .map(|x| resolve_subgroup(g, x))
                    .collect::<galmod_core::Result<Vec<_>>>()
                    .map_err(err)?;
                Ok(rank_u(&self.inner, &subs))
            }
            (None, Some(u)) => {
                let u = u.iter().map(to_q).collect::<PyResult<Vec<_>>>()?;
                if u.len() != self.inner.num_components() {
                    return Err(PyValueError::new_err("u needs one entry per component"));
                }
                Ok(RankSpec::from_vector(u))
            }
            _ => Err(PyValueError::new_err("give exactly one of places or u")),
        }
    }
}

#[pymethods]
impl PyDecomposition {
    #[new]
    fn new(group: &PyGroup) -> PyResult<Self> {
        Ok(PyDecomposition {
            inner: Arc::new(Decomposition::new(&group.inner).map_err(err)?),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.num_components()
    }

    /// One dict per component: index, h, center_degree, dim, split.
    fn components<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, pyo3::types::PyDict>>> {
        self.inner
            .components
            .iter()
            .map(|c| {
                let d = pyo3::types::PyDict::new(py);
                d.set_item("index", c.index)?;
                d.set_item("h", c.h)?;
                d.set_item("center_degree", c.center_degree)?;
                d.set_item("dim", c.dim)?;
                d.set_item("split", c.split)?;
                Ok(d)
            })
            .collect()
    }

    /// Verdict (`good`, `bad`, `unsupported`) per prime for the given components.
    fn good_primes(&self, components: Vec<usize>, primes: Vec<u64>) -> Vec<(u64, String)> {
        good_primes(&self.inner, &components, &primes)
            .into_values()
            .map(|r| (r.prime, r.verdict.to_string()))
            .collect()
    }

    #[pyo3(signature = (places))]
    fn rank_u<'py>(
        &self,
        py: Python<'py>,
        places: Vec<String>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.ranks(Some(places), None)?
            .u
            .iter()
            .map(|x| fraction(py, x))
            .collect()
    }

    #[pyo3(signature = (components, exponents, bound=None))]
    fn enumerate_types(
        &self,
        components: Vec<usize>,
        exponents: Vec<(u64, u32)>,
        bound: Option<u128>,
    ) -> PyResult<Vec<PyModuleType>> {
        let types =
            enumerate_types(&self.inner, &components, &trunc(exponents, bound)).map_err(err)?;
        Ok(types
            .into_iter()
            .map(|inner| PyModuleType { inner })
            .collect())
    }

    /// Cyclic orders of the module of the given type.
    fn module_orders(&self, t: &PyModuleType) -> PyResult<Vec<u64>> {
        Ok(GammaModule::from_type(&t.inner, &self.inner)
            .map_err(err)?
            .orders()
            .to_vec())
    }

    #[pyo3(signature = (components, exponents, bound=None, places=None, u=None))]
    fn table(
        &self,
        components: Vec<usize>,
        exponents: Vec<(u64, u32)>,
        bound: Option<u128>,
        places: Option<Vec<String>>,
        u: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<PyTable> {
        let r = self.ranks(places, u)?;
        let inner =
            truncated_table(&self.inner, &components, &r, &trunc(exponents, bound)).map_err(err)?;
        Ok(PyTable {
            inner,
            dec: self.inner.clone(),
        })
    }

    /// `1/|H|^u` over the given components.
    #[pyo3(signature = (t, components, places=None, u=None))]
    fn closed_form_moment<'py>(
        &self,
        py: Python<'py>,
        t: &PyModuleType,
        components: Vec<usize>,
        places: Option<Vec<String>>,
        u: Option<Vec<Bound<'py, PyAny>>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let r = self.ranks(places, u)?;
        fraction(
            py,
            &closed_form_moment(&t.inner, &r, &components, &self.inner).map_err(err)?,
        )
    }

    fn invert_moments<'py>(
        &self,
        py: Python<'py>,
        types: Vec<PyModuleType>,
        moments: Vec<Bound<'py, PyAny>>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let types: Vec<ModuleType> = types.into_iter().map(|t| t.inner).collect();
        let m = moments.iter().map(to_q).collect::<PyResult<Vec<_>>>()?;
        invert_moments(&types, &m, &self.inner)
            .map_err(err)?
            .iter()
            .map(|x| fraction(py, x))
            .collect()
    }

    /// `(formula, search, unique)` for the class triple of `t` and `s`.
    fn class_triple(&self, t: &PyModuleType, s: &str) -> PyResult<(u128, u128, bool)> {
        let limits = Limits::default();
        let g = &self.inner.group;
        let h = GammaModule::from_type(&t.inner, &self.inner).map_err(err)?;
        let s = g.parse_element(s).map_err(err)?;
        let triple = build_class_triple(&h, g, s, &limits).map_err(err)?;
        let formula =
            aut_count(&triple, &h, &self.inner, AutMethod::Formula, &limits).map_err(err)?;
        let search =
            aut_count(&triple, &h, &self.inner, AutMethod::BruteForce, &limits).map_err(err)?;
        Ok((
            formula,
            search,
            verify_uniqueness(&triple, &limits).map_err(err)?,
        ))
    }

    fn hecke_rank(&self, subgroup: &str, primes: Vec<u64>) -> PyResult<usize> {
        let sub = resolve_subgroup(&self.inner.group, subgroup).map_err(err)?;
        Ok(hecke_order(&self.inner, &sub, &primes).map_err(err)?.rank)
    }

    /// `(order, column_a, column_b)` per Hecke-module class.
    #[pyo3(signature = (subgroup, prime, exponent, bound=None, places=None, u=None))]
    #[allow(clippy::too_many_arguments)]
    fn nongalois<'py>(
        &self,
        py: Python<'py>,
        subgroup: &str,
        prime: u64,
        exponent: u32,
        bound: Option<u128>,
        places: Option<Vec<String>>,
        u: Option<Vec<Bound<'py, PyAny>>>,
    ) -> PyResult<Vec<(u128, Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        let r = self.ranks(places, u)?;
        let sub = resolve_subgroup(&self.inner.group, subgroup).map_err(err)?;
        let o = hecke_order(&self.inner, &sub, &[prime]).map_err(err)?;
        let rows = nongalois_table(
            &o,
            &self.inner,
            &r,
            &trunc(vec![(prime, exponent)], bound),
            &Limits::default(),
        )
        .map_err(err)?;
        rows.iter()
            .map(|row| {
                Ok((
                    row.module.order(),
                    fraction(py, &row.column_a)?,
                    fraction(py, &row.column_b)?,
                ))
            })
            .collect()
    }
}

/// Runs the command line with the given arguments; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = run_from(std::iter::once("galmod".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

/// `(passed, detail)` for one verification suite.
#[pyfunction]
fn verify_suite(criterion: usize) -> PyResult<(bool, String)> {
    if !verify::SUITES.iter().any(|s| s.0 == criterion) {
        return Err(PyValueError::new_err(format!("no suite {criterion}")));
    }
    let o = verify::run_suite(criterion);
    Ok((o.passed, o.detail))
}

#[pymodule]
fn galmod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyModuleType>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
