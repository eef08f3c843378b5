use knotalg_core::algebra::{opacity, trace};
use knotalg_core::bracket::{bracket_with, raw_bracket_with, LaurentPoly};
use knotalg_core::enumerate::{table, Kind};
use knotalg_core::graph::{laplacian_components, mod2_laplacian, nullity_gf2, PlaneGraph};
use knotalg_core::oracle::trace_components;
use knotalg_core::rational::{cf_of_fraction, cf_value, classify_fraction, Fraction};
use knotalg_core::tensor::build_cube_with;
use knotalg_core::{closure_components, Capacity, Error};
use num_bigint::BigInt;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Capacity { .. } => PyOverflowError::new_err(e.to_string()),
        Error::Internal(_) | Error::Tensor(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn capacity(max_crossings: Option<u32>) -> PyResult<Capacity> {
    match max_crossings {
        None => Ok(Capacity::DEFAULT),
        Some(n) => Capacity::new(n).ok_or_else(|| PyValueError::new_err(format!("max_crossings {n} is above 63"))),
    }
}

fn fraction(p: BigInt, q: BigInt) -> PyResult<Fraction> {
    if p == BigInt::from(0) && q == BigInt::from(0) {
        return Err(PyValueError::new_err("0/0 is not a fraction"));
    }
    Ok(Fraction::new(p, q))
}

fn poly_terms(p: &LaurentPoly) -> Vec<(i64, BigInt)> {
    p.terms().rev().map(|(e, c)| (e, c.clone())).collect()
}

/// A tangle expression such as `"<<2> <-2>> <2> <-2>"` or `"[3,7,16]"`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "knotalg")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Expr {
    inner: knotalg_core::Expr,
}

#[pymethods]
impl Expr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        knotalg_core::parse(text)
            .map(|inner| Expr { inner })
            .map_err(|e| to_py(e.into()))
    }

    /// `[a1, ..., an]` as an expression.
    #[staticmethod]
    fn continued_fraction(terms: Vec<i64>) -> PyResult<Self> {
        if terms.is_empty() {
            return Err(PyValueError::new_err("empty continued fraction"));
        }
        Ok(Expr { inner: knotalg_core::Expr::continued_fraction(&terms) })
    }

    #[staticmethod]
    fn pretzel(terms: Vec<i64>) -> PyResult<Self> {
        if terms.is_empty() {
            return Err(PyValueError::new_err("empty pretzel"));
        }
        Ok(Expr { inner: knotalg_core::Expr::pretzel(&terms) })
    }

    fn cross(&self) -> Self {
        Expr { inner: knotalg_core::Expr::cross(self.inner.clone()) }
    }

    fn mirror(&self) -> Self {
        Expr { inner: self.inner.mirror() }
    }

    fn __add__(&self, other: &Expr) -> Self {
        Expr { inner: knotalg_core::Expr::concat([self.inner.clone(), other.inner.clone()]) }
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_text())
    }

    #[getter]
    fn crossings(&self) -> u64 {
        self.inner.crossing_count()
    }

    /// Leaves as `(position, text)`, positions starting at 1.
    fn leaves(&self) -> Vec<(usize, String)> {
        self.inner.leaves().into_iter().map(|(p, l)| (p.index(), l.to_string())).collect()
    }

    /// `(class, loops)` with class one of `"E"`, `"V"`, `"O"`.
    fn value(&self) -> (String, u32) {
        let v = knotalg_core::eval_conn(&self.inner);
        (v.class.to_string(), v.loops)
    }

    /// The expression with a mark after every closing bracket.
    fn trace(&self) -> String {
        trace(&self.inner).annotated
    }

    fn components(&self) -> u32 {
        closure_components(&self.inner)
    }

    /// Components by strand tracing, without the algebra.
    fn traced_components(&self) -> usize {
        trace_components(&self.inner)
    }

    /// Components as the nullity of the mod-2 Laplacian of the closed network.
    fn nullity(&self) -> usize {
        laplacian_components(&self.inner)
    }

    /// Leaves as `(position, "opaque" | "transparent", components after toggling)`.
    fn opacity(&self) -> Vec<(usize, String, u32)> {
        opacity(&self.inner)
            .leaves
            .into_iter()
            .map(|l| (l.path.index(), format!("{:?}", l.opacity).to_lowercase(), l.toggled_components))
            .collect()
    }

    /// Bracket polynomial as `[(exponent, coefficient)]`, highest first.
    #[pyo3(signature = (max_crossings=None))]
    fn bracket(&self, max_crossings: Option<u32>) -> PyResult<Vec<(i64, BigInt)>> {
        let p = bracket_with(&self.inner, capacity(max_crossings)?).map_err(to_py)?;
        Ok(poly_terms(&p))
    }

    /// Bracket polynomial as text.
    #[pyo3(signature = (max_crossings=None))]
    fn bracket_str(&self, max_crossings: Option<u32>) -> PyResult<String> {
        Ok(bracket_with(&self.inner, capacity(max_crossings)?).map_err(to_py)?.to_string())
    }

    /// State sum as `{(i, j, k): multiplicity}` for `A^i B^j d^k`.
    #[pyo3(signature = (max_crossings=None))]
    fn raw_bracket(&self, max_crossings: Option<u32>) -> PyResult<std::collections::HashMap<(u32, u32, u32), u64>> {
        let r = raw_bracket_with(&self.inner, capacity(max_crossings)?).map_err(to_py)?;
        Ok(r.terms().collect())
    }

    /// State cube as a JSON string.
    #[pyo3(signature = (max_crossings=None))]
    fn cube_json(&self, max_crossings: Option<u32>) -> PyResult<String> {
        let cube = build_cube_with(&self.inner, capacity(max_crossings)?).map_err(to_py)?;
        serde_json::to_string(&cube).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }
}

/// Parse a tangle expression.
#[pyfunction]
fn parse(text: &str) -> PyResult<Expr> {
    Expr::new(text)
}

/// Closure components of an expression given as text.
#[pyfunction]
fn components(text: &str) -> PyResult<u32> {
    Ok(Expr::new(text)?.components())
}

/// `"link (E)"`, `"knot (O)"` or `"knot (V)"` for a proper positive fraction p/q.
#[pyfunction]
fn classify(p: BigInt, q: BigInt) -> PyResult<String> {
    let f = fraction(p, q)?;
    classify_fraction(&f).map(|c| c.to_string()).map_err(|e| to_py(e.into()))
}

/// Continued fraction terms of p/q.
#[pyfunction]
fn continued_fraction(p: BigInt, q: BigInt) -> PyResult<Vec<BigInt>> {
    cf_of_fraction(&fraction(p, q)?).map_err(|e| to_py(e.into()))
}

/// `(p, q)` for `[a1, ..., an]`; `q` is 0 for infinity.
#[pyfunction]
fn cf_fraction(terms: Vec<BigInt>) -> PyResult<(BigInt, BigInt)> {
    let f = cf_value(&terms).map_err(|e| to_py(e.into()))?;
    Ok((f.numer().clone(), f.denom().clone()))
}

/// Rational knots and links with n crossings, as
/// `(parts, (p, q), "knot" | "link", components)`.
#[pyfunction]
fn enumerate(n: u32) -> PyResult<Vec<(Vec<u32>, (BigInt, BigInt), &'static str, u32)>> {
    let entries = table(n).map_err(to_py)?;
    Ok(entries
        .into_iter()
        .map(|e| {
            let kind = if e.class == Kind::Knot { "knot" } else { "link" };
            (e.parts.0, (e.fraction.numer().clone(), e.fraction.denom().clone()), kind, e.components)
        })
        .collect())
}

/// GF(2) nullity of the mod-2 Laplacian of a multigraph.
#[pyfunction]
fn graph_nullity(nodes: usize, edges: Vec<(usize, usize)>) -> PyResult<usize> {
    let g = PlaneGraph::new(nodes, edges.into_iter().map(|(u, v)| [u, v]).collect()).map_err(PyValueError::new_err)?;
    Ok(nullity_gf2(&mod2_laplacian(&g)))
}

#[pymodule]
pub fn knotalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Expr>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(cf_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(graph_nullity, m)?)?;
    Ok(())
}
