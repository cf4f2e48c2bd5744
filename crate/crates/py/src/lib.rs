//! Python bindings for `mpf-core`.
//!
//! Rationals cross the boundary as strings such as `"3/2"`, points as strings
//! such as `"(1,1/2)"`. Library errors surface as `ValueError`.

use mpf_core::{
    self as core, cantor, format_rational, metric, parse_rational, Combiner, FiniteMetricSpace, PointN, ProductSpec,
    Rational,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat(text: &str) -> PyResult<Rational> {
    parse_rational(text).map_err(err)
}

fn point(text: &str) -> PyResult<PointN> {
    PointN::parse(text).map_err(err)
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// A nonnegative function known on finitely many points of the orthant.
#[pyclass(name = "SampledFunction", frozen)]
struct PySampledFunction(core::SampledFunction);

#[pymethods]
impl PySampledFunction {
    /// From `[(point, value), ...]` with both sides as strings.
    #[new]
    fn new(pairs: Vec<(String, String)>) -> PyResult<Self> {
        let parsed = pairs
            .iter()
            .map(|(p, v)| Ok((point(p)?, rat(v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self(core::SampledFunction::new(parsed).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(core::SampledFunction::from_json(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn items(&self) -> Vec<(String, String)> {
        self.0.iter().map(|(p, v)| (p.to_string(), format_rational(v))).collect()
    }

    fn is_isotone(&self) -> bool {
        self.0.is_isotone()
    }

    fn is_amenable(&self) -> PyResult<bool> {
        self.0.is_amenable().map_err(err)
    }

    fn is_subadditive(&self) -> PyResult<bool> {
        self.0.is_subadditive().map_err(err)
    }

    /// Whether every product of metric spaces under this function is a metric
    /// on the sampled distance tuples.
    fn is_metric_preserving(&self) -> PyResult<bool> {
        Ok(metric::metric_preserving_verdict(&self.0).map_err(err)?.holds())
    }

    fn sup_continuation(&self, y: &str) -> PyResult<String> {
        Ok(format_rational(&core::sup_continuation(&self.0, &point(y)?).map_err(err)?))
    }

    fn amenable_continuation(&self, y: &str) -> PyResult<String> {
        let v = core::amenable_isotone_continuation(&self.0, &point(y)?).map_err(err)?;
        Ok(format_rational(&v))
    }

    /// Envelope value at `y` and its cover certificate as JSON.
    #[pyo3(signature = (y, c = "1"))]
    fn envelope(&self, y: &str, c: &str) -> PyResult<(String, String)> {
        let (v, cert) = core::subadditive_envelope(&self.0, &point(y)?, &rat(c)?).map_err(err)?;
        Ok((format_rational(&v), json(&cert)))
    }

    fn __repr__(&self) -> String {
        format!("SampledFunction(dim={}, points={})", self.0.dim(), self.0.len())
    }
}

/// A function tabulated on the lattice `{0, h, ..., T}^n`.
#[pyclass(name = "GridFunction", frozen)]
struct PyGridFunction(core::GridFunction);

#[pymethods]
impl PyGridFunction {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(core::GridFunction::from_json(text).map_err(err)?))
    }

    /// A named combiner (`SUM`, `MAX`, ...) on `[0, bound]^n` with step `step`.
    #[staticmethod]
    #[pyo3(signature = (name, n, bound = "2", step = "1/4"))]
    fn from_combiner(name: &str, n: usize, bound: &str, step: &str) -> PyResult<Self> {
        let c = Combiner::named(name, None).map_err(err)?;
        Ok(Self(core::GridFunction::from_combiner(n, rat(bound)?, rat(step)?, &c).map_err(err)?))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn modulus(&self, eps: &str) -> PyResult<String> {
        Ok(format_rational(&self.0.modulus(&point(eps)?).map_err(err)?))
    }

    fn modulus_table(&self) -> Self {
        Self(self.0.modulus_table())
    }

    fn is_fixed_point(&self) -> bool {
        self.0.is_fixed_point().holds
    }

    fn lemma42_holds(&self) -> bool {
        self.0.lemma42_holds().0
    }

    fn nonconstant_wrt(&self, i: usize) -> PyResult<bool> {
        self.0.nonconstant_wrt(i).map_err(err)
    }
}

fn matrix(rows: Vec<Vec<String>>) -> PyResult<Vec<Vec<Rational>>> {
    rows.iter().map(|row| row.iter().map(|t| rat(t)).collect()).collect()
}

/// Whether a square matrix of rational strings is a metric.
#[pyfunction]
fn verify_metric(rows: Vec<Vec<String>>) -> PyResult<bool> {
    Ok(metric::verify_metric(&matrix(rows)?).map_err(err)?.holds())
}

/// Product distance matrix of line spaces, one list of coordinates per factor.
#[pyfunction]
#[pyo3(signature = (factors, combiner = "SUM"))]
fn product_of_lines(factors: Vec<Vec<String>>, combiner: &str) -> PyResult<Vec<Vec<String>>> {
    let factors = factors
        .iter()
        .map(|xs| {
            let pts = xs.iter().map(|t| rat(t)).collect::<PyResult<Vec<_>>>()?;
            FiniteMetricSpace::line(&pts).map_err(err)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let spec = ProductSpec {
        factors,
        combiner: Combiner::named(combiner, None).map_err(err)?,
    };
    let m = metric::product_metric(&spec).map_err(err)?;
    Ok(m.dist.iter().map(|row| row.iter().map(format_rational).collect()).collect())
}

#[pyfunction]
fn in_cantor(t: &str) -> PyResult<bool> {
    Ok(cantor::in_cantor(&rat(t)?))
}

#[pyfunction]
fn in_ce(t: &str) -> PyResult<bool> {
    Ok(cantor::in_ce(&rat(t)?))
}

/// Base-3 expansion such as `"0.(02)"`.
#[pyfunction]
fn to_base3(t: &str) -> PyResult<String> {
    Ok(cantor::to_base3(&rat(t)?).map_err(err)?.to_string())
}

/// `(x, y)` in the Cantor set with `x - y = t`, for triadic `t` in `[0, 1]`.
#[pyfunction]
fn cantor_decompose(t: &str) -> PyResult<(String, String)> {
    let (x, y) = cantor::cantor_decompose(&rat(t)?).map_err(err)?;
    Ok((format_rational(&x), format_rational(&y)))
}

#[pyfunction]
fn ce_level_set(level: u32) -> PyResult<Vec<String>> {
    Ok(cantor::ce_level_set(level).map_err(err)?.iter().map(format_rational).collect())
}

#[pyfunction]
fn three_point_search(set: Vec<String>, a: &str, b: &str) -> PyResult<Option<(String, String, String)>> {
    let values = set.iter().map(|t| rat(t)).collect::<PyResult<Vec<_>>>()?;
    Ok(cantor::three_point_search(&values, &rat(a)?, &rat(b)?)
        .map(|(x, y, z)| (format_rational(&x), format_rational(&y), format_rational(&z))))
}

/// Refutation evidence at the given level, as JSON.
#[pyfunction]
#[pyo3(signature = (level = 10))]
fn ce_triple_refutation(level: u32) -> PyResult<String> {
    Ok(json(&cantor::ce_triple_refutation(level).map_err(err)?))
}

/// `(a, image)` pairs with images written as `q + r*tau`.
#[pyfunction]
fn transcendental_embed(set: Vec<String>) -> PyResult<Vec<(String, String)>> {
    let values = set.iter().map(|t| rat(t)).collect::<PyResult<Vec<_>>>()?;
    Ok(core::transcendental_embed(&values)
        .iter()
        .map(|(a, img)| (format_rational(a), img.to_string()))
        .collect())
}

#[pyfunction]
fn unbounded_witness(bound: &str) -> PyResult<(String, String)> {
    let (x, y) = metric::unbounded_witness(&rat(bound)?).map_err(err)?;
    Ok((format_rational(&x), format_rational(&y)))
}

#[pymodule]
fn mpf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySampledFunction>()?;
    m.add_class::<PyGridFunction>()?;
    m.add_function(wrap_pyfunction!(verify_metric, m)?)?;
    m.add_function(wrap_pyfunction!(product_of_lines, m)?)?;
    m.add_function(wrap_pyfunction!(in_cantor, m)?)?;
    m.add_function(wrap_pyfunction!(in_ce, m)?)?;
    m.add_function(wrap_pyfunction!(to_base3, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(ce_level_set, m)?)?;
    m.add_function(wrap_pyfunction!(three_point_search, m)?)?;
    m.add_function(wrap_pyfunction!(ce_triple_refutation, m)?)?;
    m.add_function(wrap_pyfunction!(transcendental_embed, m)?)?;
    m.add_function(wrap_pyfunction!(unbounded_witness, m)?)?;
    Ok(())
}
