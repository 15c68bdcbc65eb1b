//! Python bindings: diamonds, cone reports, determinantal classes.
//!
//! Structured results come back as plain dicts/lists (via json).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use hodgecone::catalog::{self, CatalogEntry};
use hodgecone::determinantal::{self, DeterminantalCase, Family};
use hodgecone::hodge::{primitive_decomposition, validate_diamond};
use hodgecone::report::{build_cone_report, build_determinantal_row};
use hodgecone::verify::{run_suites, Suite};
use hodgecone::{ConeSetup, ExtendedLevel, HodgeDiamond};

type Pieces = Vec<(i64, i64, u64)>;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

/// A validated Hodge diamond.
#[pyclass(name = "Diamond", module = "hodgecone", frozen)]
struct PyDiamond {
    entry: CatalogEntry,
}

#[pymethods]
impl PyDiamond {
    /// entries: iterable of (k, p, q, dim); missing dual entries are not filled in.
    #[new]
    #[pyo3(signature = (dim, entries, name = "custom".to_string()))]
    fn new(dim: u32, entries: Vec<(i64, i64, i64, u64)>, name: String) -> PyResult<Self> {
        let raw = HodgeDiamond::from_entries(dim, entries).map_err(err)?;
        let diamond = validate_diamond(raw).map_err(err)?;
        let entry = CatalogEntry {
            name,
            diamond,
            provenance: "python".into(),
            rhm: true,
            hrh_bound: ExtendedLevel::Inf,
        };
        Ok(PyDiamond { entry })
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        Ok(PyDiamond { entry: catalog::lookup(name).map_err(err)? })
    }

    /// Catalog JSON text; missing dual halves are completed.
    #[staticmethod]
    #[pyo3(signature = (text, name = "file".to_string()))]
    fn from_json(text: &str, name: String) -> PyResult<Self> {
        Ok(PyDiamond { entry: catalog::parse_diamond(text, &name).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.entry.name
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.entry.diamond.dim()
    }

    fn h(&self, k: i64, p: i64, q: i64) -> u64 {
        self.entry.diamond.h(k, p, q)
    }

    fn betti(&self, k: i64) -> u64 {
        self.entry.diamond.betti(k)
    }

    /// [(k, p, q, dim)] with nonzero dim.
    fn entries(&self) -> Vec<(i64, i64, i64, u64)> {
        self.entry.diamond.entries().collect()
    }

    /// [(k, [(p, q, dim)])] for the primitive parts.
    fn primitive(&self) -> PyResult<Vec<(i64, Pieces)>> {
        let prim = primitive_decomposition(&self.entry.diamond).map_err(err)?;
        Ok((0..=prim.dim() as i64).map(|k| (k, prim.get(k).pieces().collect())).collect())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&catalog::to_json(&self.entry)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Diamond({:?}, dim={})", self.entry.name, self.entry.diamond.dim())
    }
}

fn parse_level(s: &str) -> PyResult<ExtendedLevel> {
    s.parse().map_err(|_| PyValueError::new_err(format!("bad level '{s}'")))
}

/// Full report for the cone of rank `rank` over a diamond (or catalog name).
#[pyfunction]
#[pyo3(signature = (base, rank = 1, embed_codim = 1, hrh_base = None))]
fn cone_report<'py>(
    py: Python<'py>,
    base: &Bound<'py, PyAny>,
    rank: u32,
    embed_codim: u32,
    hrh_base: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let entry = if let Ok(name) = base.extract::<String>() {
        catalog::lookup(&name).map_err(err)?
    } else {
        base.extract::<PyRef<'_, PyDiamond>>()?.entry.clone()
    };
    if rank == 0 {
        return Err(PyValueError::new_err("rank must be at least 1"));
    }
    let k = hrh_base.map(parse_level).transpose()?.unwrap_or(entry.hrh_bound);
    let setup = ConeSetup::new(entry.diamond.dim(), rank - 1, embed_codim, k).map_err(err)?;
    let report = build_cone_report(&entry, setup).map_err(err)?;
    to_py(py, &report)
}

fn family(name: &str, sizes: &[u32]) -> PyResult<(Family, u32)> {
    Ok(match (name, sizes) {
        ("generic", &[m, n, p]) => (Family::Generic { m, n }, p),
        ("odd-skew", &[n, p]) => (Family::OddSkew { n }, p),
        ("even-skew", &[n, p]) => (Family::EvenSkew { n }, p),
        ("symmetric", &[n, p]) => (Family::Symmetric { n }, p),
        _ => return Err(PyValueError::new_err(format!("cannot read {name} {sizes:?}"))),
    })
}

/// Determinantal row: family is generic (m, n, p) or odd-skew/even-skew/symmetric (n, p).
#[pyfunction(name = "determinantal")]
#[pyo3(signature = (family_name, *sizes))]
fn determinantal_row<'py>(py: Python<'py>, family_name: &str, sizes: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    let (f, p) = family(family_name, &sizes)?;
    let case = DeterminantalCase::new(f, p).map_err(err)?;
    to_py(py, &build_determinantal_row(case).map_err(err)?)
}

/// Coefficients of the Gaussian binomial [a choose b]_q, lowest degree first.
#[pyfunction]
fn q_binomial(a: i64, b: i64) -> PyResult<Vec<i64>> {
    Ok(determinantal::q_binomial(a, b).map_err(err)?.dense())
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::builtin().into_iter().map(|e| e.name).collect()
}

/// Runs the named suites (all by default); returns per-suite dicts.
#[pyfunction]
#[pyo3(signature = (suites = None))]
fn verify<'py>(py: Python<'py>, suites: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names.iter().map(|s| s.parse::<Suite>().map_err(err)).collect::<PyResult<_>>()?,
    };
    to_py(py, &run_suites(&suites, &[]))
}

#[pymodule(name = "hodgecone")]
fn hodgecone_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiamond>()?;
    m.add_function(wrap_pyfunction!(cone_report, m)?)?;
    m.add_function(wrap_pyfunction!(determinantal_row, m)?)?;
    m.add_function(wrap_pyfunction!(q_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
