//! Python bindings: permutation groups, the named constructions, and the
//! Sha² / Hasse norm principle decisions.

use knot_core::cohom::{drakokhrust_sha, schur_multiplier_small, sha2_chevalley, sha_omega, DecompositionSet, ShaOptions};
use knot_core::groupzoo::{build_heisenberg_cover, build_semidirect_std, sl2_generators};
use knot_core::io::{parse_matrices, InputDocument, NamedConstruction};
use knot_core::knot::{adequacy_criterion, decide_h1pic, decide_hnp, DecideOptions, Method};
use knot_core::permgroup::{close, Perm, PermGroup};
use knot_core::verify::run_suite;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(knot_py, KnotError, PyValueError, "Raised for invalid groups, parameters or inputs.");

fn err(e: knot_core::KnotError) -> PyErr {
    KnotError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| KnotError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A permutation group on `{0, …, degree-1}`.
#[pyclass(name = "PermGroup", module = "knot_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermGroup {
    inner: PermGroup,
}

impl From<PermGroup> for PyPermGroup {
    fn from(inner: PermGroup) -> Self {
        PyPermGroup { inner }
    }
}

fn perms(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Vec<Perm>> {
    generators
        .into_iter()
        .map(|g| {
            if g.len() != degree {
                return Err(KnotError::new_err(format!("expected {degree} images, found {}", g.len())));
            }
            Perm::new(g).map_err(err)
        })
        .collect()
}

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(close(&perms(degree, generators)?, degree).map_err(err)?.into())
    }

    /// `P<n>`, `P'<n>`, `E<n>`, `H<n>`, `C<m>`, `semidirect-std`,
    /// `heisenberg-cover`.
    #[staticmethod]
    #[pyo3(signature = (name, p=None, n=None, matrices=None))]
    fn named(name: &str, p: Option<usize>, n: Option<usize>, matrices: Option<Vec<[[i64; 2]; 2]>>) -> PyResult<Self> {
        let c = NamedConstruction {
            name: name.to_string(),
            p,
            n,
            matrices: matrices.unwrap_or_default(),
        };
        Ok(c.build().map_err(err)?.group.into())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        self.inner.generators().iter().map(Perm::images).collect()
    }

    fn contains(&self, images: Vec<usize>) -> bool {
        images.len() == self.inner.degree() && Perm::new(images).is_ok_and(|g| self.inner.contains(&g))
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn exponent(&self) -> usize {
        self.inner.exponent()
    }

    fn center(&self) -> Self {
        self.inner.center().into()
    }

    fn derived_subgroup(&self) -> Self {
        self.inner.derived_subgroup().into()
    }

    fn point_stabilizer(&self, point: usize) -> PyResult<Self> {
        if point >= self.inner.degree() {
            return Err(KnotError::new_err(format!("point {point} out of range")));
        }
        Ok(self.inner.point_stabilizer(point).into())
    }

    fn sylow(&self, p: usize) -> Self {
        self.inner.sylow_p(p).into()
    }

    fn subgroup(&self, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        let gens = perms(self.inner.degree(), generators)?;
        Ok(self.inner.subgroup(&gens).map_err(err)?.into())
    }

    fn intersection(&self, other: &PyPermGroup) -> Self {
        self.inner.intersection(&other.inner).into()
    }

    fn is_subgroup_of(&self, other: &PyPermGroup) -> bool {
        self.inner.is_subgroup_of(&other.inner)
    }

    fn is_normal_in(&self, other: &PyPermGroup) -> bool {
        self.inner.is_normal_in(&other.inner)
    }

    fn cyclic_subgroups(&self) -> Vec<Self> {
        self.inner.cyclic_subgroups().into_iter().map(Into::into).collect()
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.inner.degree(), self.inner.order())
    }
}

fn decomposition_set(g: &PyPermGroup, groups: Option<Vec<PyPermGroup>>) -> PyResult<DecompositionSet> {
    let given: Vec<PermGroup> = groups.unwrap_or_default().into_iter().map(|d| d.inner).collect();
    DecompositionSet::admissible(&g.inner, &given).map_err(err)
}

fn parse_method(method: &str) -> PyResult<Method> {
    match method {
        "classifier" => Ok(Method::Classifier),
        "cohomology" => Ok(Method::Cohomology),
        "both" => Ok(Method::Both),
        other => Err(KnotError::new_err(format!("unknown method {other:?}"))),
    }
}

/// `(C_p)² ⋊ G†` for matrices generating `G†`, with the complement.
#[pyfunction]
fn semidirect_std(p: usize, matrices: Vec<[[i64; 2]; 2]>) -> PyResult<(PyPermGroup, PyPermGroup)> {
    let (g, h) = build_semidirect_std(p, &parse_matrices(p, &matrices).map_err(err)?).map_err(err)?;
    Ok((g.into(), h.into()))
}

/// Invariant factors of Sha²_ω(G, J_{G/H}).
#[pyfunction]
fn sha_omega_invariants(g: &PyPermGroup, h: &PyPermGroup) -> PyResult<Vec<u64>> {
    Ok(sha_omega(&g.inner, &h.inner).map_err(err)?.invariants().factors().to_vec())
}

/// Sha²_𝒟(G, J_{G/H}); 𝒟 is the conjugation closure of the given groups
/// together with every cyclic subgroup.
#[pyfunction]
#[pyo3(signature = (g, h, decomposition_groups=None, fast_p_part=false))]
fn sha2_invariants(
    g: &PyPermGroup,
    h: &PyPermGroup,
    decomposition_groups: Option<Vec<PyPermGroup>>,
    fast_p_part: bool,
) -> PyResult<Vec<u64>> {
    let set = decomposition_set(g, decomposition_groups)?;
    let mut opts = ShaOptions::suited_to(&g.inner, &h.inner);
    opts.fast_p_part = fast_p_part && opts.sylow_reduction;
    Ok(sha2_chevalley(&g.inner, &h.inner, &set, &opts).map_err(err)?.invariants().factors().to_vec())
}

/// Full decision report as a dict.
#[pyfunction]
#[pyo3(signature = (g, h, decomposition_groups=None, method="both"))]
fn decide<'py>(
    py: Python<'py>,
    g: &PyPermGroup,
    h: &PyPermGroup,
    decomposition_groups: Option<Vec<PyPermGroup>>,
    method: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let set = decomposition_set(g, decomposition_groups)?;
    let opts = DecideOptions {
        method: parse_method(method)?,
        sha: ShaOptions::default(),
    };
    to_py(py, &decide_hnp(&g.inner, &h.inner, &set, &opts).map_err(err)?)
}

#[derive(Serialize)]
struct DocumentReport {
    input_hash: String,
    report: knot_core::knot::KnotReport,
}

/// Decides from a JSON input document; the result echoes its hash.
#[pyfunction]
fn decide_document<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let doc = InputDocument::parse(text).map_err(err)?;
    let prep = doc.prepare().map_err(err)?;
    let set = DecompositionSet::admissible(&prep.group, &prep.decomposition_groups).map_err(err)?;
    let mut method = Method::Both;
    if doc.methods.len() == 1 {
        method = parse_method(&doc.methods[0])?;
    }
    let opts = DecideOptions {
        method,
        sha: ShaOptions::default(),
    };
    let report = decide_hnp(&prep.group, &prep.stabilizer, &set, &opts).map_err(err)?;
    to_py(
        py,
        &DocumentReport {
            input_hash: doc.canonical_hash(),
            report,
        },
    )
}

#[pyfunction]
fn h1pic_invariants(g: &PyPermGroup, h: &PyPermGroup) -> PyResult<Vec<u64>> {
    Ok(decide_h1pic(&g.inner, &h.inner).map_err(err)?.invariants.factors().to_vec())
}

#[pyfunction]
#[pyo3(signature = (g, h, decomposition_groups=None))]
fn adequacy(g: &PyPermGroup, h: &PyPermGroup, decomposition_groups: Option<Vec<PyPermGroup>>) -> PyResult<bool> {
    let set = decomposition_set(g, decomposition_groups)?;
    adequacy_criterion(&g.inner, &h.inner, &set).map_err(err)
}

#[pyfunction]
fn schur_multiplier(g: &PyPermGroup) -> PyResult<Vec<u64>> {
    Ok(schur_multiplier_small(&g.inner).map_err(err)?.factors().to_vec())
}

/// Sha² through the Heisenberg cover of `(C_p)² ⋊ G†`, with `H` the
/// complement. Matrices default to generators of SL₂(F_p).
#[pyfunction]
#[pyo3(signature = (p, matrices=None))]
fn drakokhrust_heisenberg(p: usize, matrices: Option<Vec<[[i64; 2]; 2]>>) -> PyResult<Vec<u64>> {
    let mats = match matrices {
        Some(m) => parse_matrices(p, &m).map_err(err)?,
        None => sl2_generators(p as u64),
    };
    let ext = build_heisenberg_cover(p, &mats).map_err(err)?;
    let h = ext.base().point_stabilizer(0);
    Ok(drakokhrust_sha(&ext, &h).map_err(err)?.factors().to_vec())
}

/// Runs a named verification suite; one dict per case.
#[pyfunction]
fn verify<'py>(py: Python<'py>, suite: &str) -> PyResult<Bound<'py, PyAny>> {
    let cases = run_suite(suite).ok_or_else(|| KnotError::new_err(format!("unknown suite {suite}")))?;
    to_py(py, &cases)
}

#[pyfunction]
fn set_order_cap(cap: usize) {
    knot_core::permgroup::set_order_cap(cap);
}

#[pymodule]
fn knot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KnotError", m.py().get_type::<KnotError>())?;
    m.add_class::<PyPermGroup>()?;
    m.add_function(wrap_pyfunction!(semidirect_std, m)?)?;
    m.add_function(wrap_pyfunction!(sha_omega_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(sha2_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(decide_document, m)?)?;
    m.add_function(wrap_pyfunction!(h1pic_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(adequacy, m)?)?;
    m.add_function(wrap_pyfunction!(schur_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(drakokhrust_heisenberg, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(set_order_cap, m)?)?;
    Ok(())
}
