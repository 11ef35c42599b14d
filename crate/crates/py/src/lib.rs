//! Python bindings: formulas, the gadget reduction, the embedding search and the verifier.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use griddy::embedder::{decide_griddy, SearchConfig, SearchMode};
use griddy::engine::EngineConfig;
use griddy::formula::{brute_force_nae_sat, parse_formula, Formula as CoreFormula};
use griddy::io::{embedding_from_json, embedding_to_json, graph_from_json, graph_to_json, index_to_json};
use griddy::lattice::{verify_embedding, Embedding, Graph};
use griddy::reduction::{canonical_frame_embedding, default_params, reduce, GadgetGraph, ReductionParams};
use griddy::render::render_svg;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An NAE-3SAT formula.
#[pyclass(frozen)]
struct Formula {
    inner: CoreFormula,
}

#[pymethods]
impl Formula {
    /// Parses the `p nae3sat n m` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Formula { inner: parse_formula(text).map_err(value_error)? })
    }

    /// Builds a formula from signed variable indices, three per clause.
    #[staticmethod]
    fn from_clauses(num_vars: usize, clauses: Vec<[i64; 3]>) -> PyResult<Self> {
        Ok(Formula { inner: CoreFormula::from_dimacs(num_vars, &clauses).map_err(value_error)? })
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    #[getter]
    fn num_clauses(&self) -> usize {
        self.inner.num_clauses()
    }

    /// A not-all-equal satisfying assignment, or `None`.
    fn solve(&self) -> PyResult<Option<Vec<bool>>> {
        Ok(brute_force_nae_sat(&self.inner).map_err(value_error)?.map(|a| a.values))
    }

    fn to_text(&self) -> String {
        self.inner.to_dimacs_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula(num_vars={}, num_clauses={})", self.inner.num_vars(), self.inner.num_clauses())
    }
}

/// The unit-distance graph built from a formula.
#[pyclass(frozen)]
struct Gadget {
    inner: GadgetGraph,
}

#[pymethods]
impl Gadget {
    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.graph.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.graph.edge_count()
    }

    #[getter]
    fn flag_count(&self) -> usize {
        self.inner.engine.flag_count()
    }

    /// Frame size as `(w, h)`.
    #[getter]
    fn size(&self) -> (i64, i64) {
        (self.inner.params.w, self.inner.params.h)
    }

    fn graph_json(&self) -> String {
        graph_to_json(&self.inner.graph)
    }

    fn index_json(&self) -> String {
        index_to_json(&self.inner)
    }

    /// Text dump of a flat engine configuration, or `None`.
    fn flat_config(&self) -> PyResult<Option<String>> {
        Ok(self.inner.engine.exists_flat().map_err(value_error)?.map(|c| c.dump()))
    }

    /// Embedding JSON built from `config` (a dump) or from any flat configuration.
    #[pyo3(signature = (config=None))]
    fn witness_json(&self, config: Option<&str>) -> PyResult<Option<String>> {
        let cfg = match config {
            Some(text) => EngineConfig::parse_dump(text, self.inner.n, self.inner.m).map_err(value_error)?,
            None => match self.inner.engine.exists_flat().map_err(value_error)? {
                Some(c) => c,
                None => return Ok(None),
            },
        };
        let e = griddy::reduction::witness_embedding(&self.inner, &cfg).map_err(value_error)?;
        Ok(Some(embedding_to_json(&e)))
    }

    /// Canonical frame and axis positions as embedding JSON.
    fn frame_pins_json(&self) -> PyResult<String> {
        let pins = canonical_frame_embedding(self.inner.params, &self.inner.graph).map_err(value_error)?;
        Ok(embedding_to_json(&pins))
    }
}

/// Reduces a formula; `w` and `h` default to the smallest legal frame.
#[pyfunction]
#[pyo3(signature = (formula, w=None, h=None))]
fn reduce_formula(formula: &Formula, w: Option<i64>, h: Option<i64>) -> PyResult<Gadget> {
    let f = &formula.inner;
    let min = default_params(f);
    let params = ReductionParams::new(w.unwrap_or(min.w), h.unwrap_or(min.h), f.num_vars(), f.num_clauses())
        .map_err(value_error)?;
    Ok(Gadget { inner: reduce(f, params).map_err(value_error)? })
}

/// Outcome of an embedding search.
#[pyclass(frozen, get_all)]
struct SearchResult {
    /// One of `Embedded`, `Unrealizable`, `BudgetExhausted`.
    outcome: String,
    nodes: u64,
    solutions: Option<u64>,
    witness_json: Option<String>,
}

#[pymethods]
impl SearchResult {
    fn __repr__(&self) -> String {
        format!("SearchResult(outcome={}, nodes={})", self.outcome, self.nodes)
    }
}

fn parse_graph(text: &str) -> PyResult<Graph> {
    graph_from_json(text).map_err(value_error)
}

fn parse_embedding(text: &str) -> PyResult<Embedding> {
    embedding_from_json(text).map_err(value_error)
}

/// Searches for a lattice embedding of a graph given as JSON.
#[pyfunction]
#[pyo3(signature = (graph_json, budget=griddy::embedder::DEFAULT_BUDGET, threads=1, pins_json=None, count=false))]
fn embed(
    py: Python<'_>,
    graph_json: &str,
    budget: u64,
    threads: usize,
    pins_json: Option<&str>,
    count: bool,
) -> PyResult<SearchResult> {
    let g = parse_graph(graph_json)?;
    let mut cfg = SearchConfig::default().with_budget(budget).with_threads(threads.max(1));
    if let Some(text) = pins_json {
        cfg = cfg.with_pins(parse_embedding(text)?);
    }
    if count {
        cfg.mode = SearchMode::CountAll;
    }
    let out = py.detach(|| decide_griddy(&g, &cfg)).map_err(value_error)?;
    Ok(SearchResult {
        outcome: out.kind.to_string(),
        nodes: out.nodes_expanded,
        solutions: out.solution_count,
        witness_json: out.witness.as_ref().map(embedding_to_json),
    })
}

/// True when every edge has unit length and no two vertices share a point.
#[pyfunction]
fn verify(graph_json: &str, embedding_json: &str) -> PyResult<bool> {
    let g = parse_graph(graph_json)?;
    let e = parse_embedding(embedding_json)?;
    Ok(verify_embedding(&g, &e).map_err(value_error)?.accepted())
}

#[pyfunction]
#[pyo3(signature = (graph_json, embedding_json, highlight=Vec::new()))]
fn render(graph_json: &str, embedding_json: &str, highlight: Vec<usize>) -> PyResult<String> {
    let g = parse_graph(graph_json)?;
    let e = parse_embedding(embedding_json)?;
    render_svg(&g, &e, &highlight).map_err(value_error)
}

#[pymodule]
fn griddy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<Gadget>()?;
    m.add_class::<SearchResult>()?;
    m.add_function(wrap_pyfunction!(reduce_formula, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    Ok(())
}
