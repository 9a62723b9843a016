//! Python bindings: digraphs, complexes, homology and the map f_X.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dvrtop_core::fx::{self, RealizationPoint, SampleOptions};
use dvrtop_core::generators::{self, Figure, LatticePoint};
use dvrtop_core::homology::les::les_exactness_check;
use dvrtop_core::homology::pi1::{abelianization, pi1_presentation};
use dvrtop_core::homology::{euler_characteristic, relative_homology_field};
use dvrtop_core::{self as core, Coefficients, Error, VertexSet};

fn err(e: Error) -> PyErr {
    match e {
        Error::EdgeOutOfRange { .. } | Error::VertexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coefficients(s: &str) -> PyResult<Option<Coefficients>> {
    if s == "z" {
        return Ok(None);
    }
    s.parse::<Coefficients>().map(Some).map_err(err)
}

type Group = (usize, Vec<BigInt>);

fn groups(h: Vec<core::HomologyGroup>) -> Vec<Group> {
    h.into_iter().map(|g| (g.betti, g.torsion)).collect()
}

/// A finite digraph with every loop present.
#[pyclass(name = "Digraph", module = "dvrtop", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyDigraph(core::Digraph);

#[pymethods]
impl PyDigraph {
    #[new]
    #[pyo3(signature = (n, edges, labels=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let g = core::Digraph::from_edge_list(n, &edges).map_err(err)?;
        Ok(PyDigraph(match labels {
            Some(l) => g.with_labels(l).map_err(err)?,
            None => g,
        }))
    }

    /// Parse edgelist or json text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dvrtop_cli::parse_digraph(text, dvrtop_cli::Format::Auto)
            .map(PyDigraph)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn circulant(n: usize, m: usize) -> PyResult<Self> {
        generators::circulant(n, m).map(PyDigraph).map_err(err)
    }

    #[staticmethod]
    fn digital_image(points: Vec<Vec<i64>>) -> PyResult<Self> {
        let pts: Vec<LatticePoint> = points.into_iter().map(LatticePoint).collect();
        generators::digital_image(&pts).map(PyDigraph).map_err(err)
    }

    #[staticmethod]
    fn digital_sphere() -> Self {
        PyDigraph(generators::digital_image(&generators::digital_sphere_points()).expect("fixed points"))
    }

    /// `"left"`, `"middle"` or `"right"`.
    #[staticmethod]
    fn figure(which: &str) -> PyResult<Self> {
        let f: Figure = which.parse().map_err(err)?;
        Ok(PyDigraph(generators::figure_digraph(f)))
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed=0))]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        generators::random_digraph(n, p, seed).map(PyDigraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn labels(&self) -> Option<Vec<String>> {
        self.0.labels().map(<[String]>::to_vec)
    }

    /// Non-loop edges in lexicographic order.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.0.check_vertex(u).and(self.0.check_vertex(v)).map_err(err)?;
        Ok(self.0.has_edge(u, v))
    }

    fn closure(&self, a: Vec<usize>) -> PyResult<Vec<usize>> {
        self.0.closure_of(&VertexSet::new(a)).map(VertexSet::into_vec).map_err(err)
    }

    fn interior(&self, a: Vec<usize>) -> PyResult<Vec<usize>> {
        self.0.interior_of(&VertexSet::new(a)).map(VertexSet::into_vec).map_err(err)
    }

    /// In-neighbors of `x`, including `x`.
    fn minimal_neighborhood(&self, x: usize) -> PyResult<Vec<usize>> {
        self.0.minimal_neighborhood(x).map(VertexSet::into_vec).map_err(err)
    }

    fn is_interior_cover(&self, family: Vec<Vec<usize>>) -> PyResult<bool> {
        let family: Vec<VertexSet> = family.into_iter().map(VertexSet::new).collect();
        self.0.is_interior_cover(&family).map_err(err)
    }

    fn induced_subgraph(&self, a: Vec<usize>) -> PyResult<Self> {
        self.0.induced_subgraph(&VertexSet::new(a)).map(PyDigraph).map_err(err)
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    /// A witness ordering of `s`, or None if `s` is not a simplex.
    fn is_simplex(&self, s: Vec<usize>) -> PyResult<Option<Vec<usize>>> {
        core::is_simplex(&self.0, &VertexSet::new(s)).map_err(err)
    }

    #[pyo3(signature = (max_dim=None))]
    fn complex(&self, max_dim: Option<usize>) -> PyComplex {
        PyComplex(core::build_complex(&self.0, max_dim))
    }

    fn check_cone(&self, x: usize) -> PyResult<bool> {
        core::check_cone(&self.0, x).map_err(err)
    }

    #[pyo3(signature = (a, max_dim=None))]
    fn check_full_subcomplex(&self, a: Vec<usize>, max_dim: Option<usize>) -> PyResult<bool> {
        core::check_full_subcomplex(&self.0, &VertexSet::new(a), max_dim).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Digraph(n={}, edges={})", self.0.n(), self.0.edges().len())
    }
}

/// A simplicial complex whose simplices carry witness orderings.
#[pyclass(name = "Complex", module = "dvrtop", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyComplex(core::SimplicialComplex);

impl PyComplex {
    fn carrier(&self, verts: &[usize]) -> PyResult<&core::Simplex> {
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        self.0
            .get(&sorted)
            .ok_or_else(|| PyValueError::new_err(format!("{verts:?} is not a simplex of this complex")))
    }

    fn point(&self, verts: &[usize], coords: Vec<BigRational>) -> PyResult<RealizationPoint> {
        RealizationPoint::new(self.carrier(verts)?, coords).map_err(err)
    }
}

#[pymethods]
impl PyComplex {
    /// Abstract complex from simplices given as witness orderings.
    #[staticmethod]
    fn from_witnessed(simplices: Vec<Vec<usize>>) -> PyResult<Self> {
        core::SimplicialComplex::from_witnessed(simplices).map(PyComplex).map_err(err)
    }

    /// Face closure of the given simplices.
    #[staticmethod]
    fn from_facets(facets: Vec<Vec<usize>>) -> PyResult<Self> {
        core::SimplicialComplex::from_facets(&facets).map(PyComplex).map_err(err)
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.f_vector()
    }

    /// `(vertices, witness)` pairs by dimension, then vertex tuple.
    fn simplices(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.0.iter().map(|s| (s.vertices().to_vec(), s.witness().to_vec())).collect()
    }

    #[getter]
    fn truncated(&self) -> bool {
        self.0.truncated()
    }

    #[getter]
    fn top_dim(&self) -> Option<usize> {
        self.0.top_dim()
    }

    fn full_subcomplex(&self, verts: Vec<usize>) -> Self {
        PyComplex(self.0.full_subcomplex(&VertexSet::new(verts)))
    }

    fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.0)
    }

    /// `(betti, torsion)` per degree. `coeff` is `"z"`, `"q"` or `"zp:<p>"`.
    #[pyo3(signature = (coeff="z", reduced=false))]
    fn homology(&self, coeff: &str, reduced: bool) -> PyResult<Vec<Group>> {
        match coefficients(coeff)? {
            None => Ok(groups(core::homology_integer(&self.0, reduced).groups)),
            Some(c) => {
                let mut b = core::homology_field(&self.0, c).map_err(err)?;
                if reduced {
                    if let Some(b0) = b.first_mut() {
                        *b0 -= 1;
                    }
                }
                Ok(b.into_iter().map(|x| (x, Vec::new())).collect())
            }
        }
    }

    #[pyo3(signature = (sub, coeff="z"))]
    fn relative_homology(&self, sub: &PyComplex, coeff: &str) -> PyResult<Vec<Group>> {
        match coefficients(coeff)? {
            None => core::relative_homology(&self.0, &sub.0).map(|h| groups(h.groups)).map_err(err),
            Some(c) => relative_homology_field(&self.0, &sub.0, c)
                .map(|b| b.into_iter().map(|x| (x, Vec::new())).collect())
                .map_err(err),
        }
    }

    /// `(exact, nodes)`; each node is a dict of ranks for one term.
    #[pyo3(signature = (sub, coeff="q"))]
    fn les_check<'py>(&self, py: Python<'py>, sub: &PyComplex, coeff: &str) -> PyResult<(bool, Vec<Bound<'py, PyDict>>)> {
        let c = coefficients(coeff)?.ok_or_else(|| PyValueError::new_err("the sequence is checked over a field"))?;
        let r = les_exactness_check(&self.0, &sub.0, c).map_err(err)?;
        let nodes = r
            .nodes
            .iter()
            .map(|n| {
                let d = PyDict::new(py);
                d.set_item("node", n.to_string())?;
                d.set_item("degree", n.degree)?;
                d.set_item("dim", n.dim)?;
                d.set_item("rank_in", n.rank_in)?;
                d.set_item("rank_out", n.rank_out)?;
                d.set_item("exact", n.exact)?;
                Ok(d)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok((r.exact(), nodes))
    }

    /// `(generators, relators, abelianization)`; relators are lists of
    /// generator names, `^-1` marking inverses.
    #[pyo3(signature = (basepoint=0))]
    fn pi1(&self, basepoint: usize) -> PyResult<(Vec<String>, Vec<Vec<String>>, Group)> {
        let p = pi1_presentation(&self.0, basepoint).map_err(err)?;
        let rels = p
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| {
                        let g = &p.generators[l.generator];
                        if l.inverse { format!("{g}^-1") } else { g.clone() }
                    })
                    .collect()
            })
            .collect();
        let ab = abelianization(&p);
        Ok((p.generators, rels, (ab.betti, ab.torsion)))
    }

    /// f_X at the point of `|simplex|` with barycentric `coords` (Fractions,
    /// against the simplex's witness order).
    fn evaluate_fx(&self, simplex: Vec<usize>, coords: Vec<BigRational>) -> PyResult<usize> {
        Ok(fx::evaluate_fx(&self.point(&simplex, coords)?))
    }

    fn tie_set(&self, simplex: Vec<usize>, coords: Vec<BigRational>) -> PyResult<Vec<usize>> {
        Ok(fx::tie_set(&self.point(&simplex, coords)?).0.into_vec())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Complex(f_vector={:?})", self.0.f_vector())
    }
}

/// `(simplex, face, tie, image)` of a failed check.
type CertificateViolation = (Vec<usize>, Vec<usize>, Vec<usize>, usize);

/// `(passed, checked, counterexample)`; the counterexample is
/// `(simplex, face, tie, image)` or None.
#[pyfunction]
fn continuity_certificate(k: &PyComplex, g: &PyDigraph) -> (bool, usize, Option<CertificateViolation>) {
    let c = fx::continuity_certificate(&k.0, &g.0);
    (c.passed, c.checked, c.counterexample.map(|ce| (ce.simplex, ce.face, ce.tie, ce.image)))
}

/// Returns `(samples, failures, singleton_failures, tied_samples)`.
#[pyfunction]
#[pyo3(signature = (k, g, samples=10_000, delta=None, seed=0))]
fn sampled_continuity_check(
    k: &PyComplex,
    g: &PyDigraph,
    samples: usize,
    delta: Option<BigRational>,
    seed: u64,
) -> PyResult<(usize, usize, usize, usize)> {
    let delta = delta.unwrap_or_else(|| BigRational::new(1.into(), 1000.into()));
    let r = fx::sampled_continuity_check(&k.0, &g.0, &SampleOptions { samples, delta, seed }).map_err(err)?;
    Ok((r.samples, r.failures, r.singleton_failures, r.tied_samples))
}

/// Runs the command line tool in-process: `run(["homology", "--coeff",
/// "q"], stdin=text)` returns `(report_json, exit_code)`.
#[pyfunction]
#[pyo3(signature = (args, stdin=None))]
fn run(args: Vec<String>, stdin: Option<String>) -> PyResult<(String, i32)> {
    let argv = std::iter::once("dvrtop".to_owned()).chain(args);
    match dvrtop_cli::run_args(argv, Some(stdin.as_deref().unwrap_or(""))) {
        Ok(o) => Ok((o.render(), o.code)),
        Err(e) if e.use_stderr() => Err(PyRuntimeError::new_err(e.to_string())),
        Err(e) => Ok((e.to_string(), 0)),
    }
}

#[pymodule]
fn dvrtop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(continuity_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(sampled_continuity_check, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
