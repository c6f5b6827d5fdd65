//! Python bindings: `import zetaxray`.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use zeta_xray::{gram, special, xray as xr, zeta, Complex64, ComplexPoint, Error, Rectangle};

create_exception!(zetaxray, DomainError, PyValueError);
create_exception!(zetaxray, ConvergenceError, PyArithmeticError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NonConvergence(_) | Error::Precision(_) => ConvergenceError::new_err(e.to_string()),
        _ => DomainError::new_err(e.to_string()),
    }
}

fn point(z: Complex64) -> PyResult<ComplexPoint> {
    ComplexPoint::new(z.re, z.im).map_err(py_err)
}

/// A value with an absolute error bound and the method that produced it.
#[pyclass(frozen, module = "zetaxray")]
struct EvalResult {
    #[pyo3(get)]
    value: Complex64,
    #[pyo3(get)]
    error_bound: f64,
    #[pyo3(get)]
    method: String,
    #[pyo3(get)]
    warning: Option<String>,
}

#[pymethods]
impl EvalResult {
    fn __repr__(&self) -> String {
        format!("EvalResult(value={}, error_bound={:e}, method='{}')", self.value, self.error_bound, self.method)
    }
}

impl From<zeta::EvalResult> for EvalResult {
    fn from(r: zeta::EvalResult) -> Self {
        Self {
            value: r.value,
            error_bound: r.error_bound,
            method: r.method.to_string(),
            warning: r.warning.map(|w| format!("{w:?}")),
        }
    }
}

/// ζ(s) with an error bound.
#[pyfunction]
#[pyo3(signature = (s, accuracy = zeta::DEFAULT_TARGET))]
fn zeta_value(s: Complex64, accuracy: f64) -> PyResult<EvalResult> {
    Ok(zeta::zeta(point(s)?, accuracy).map_err(py_err)?.into())
}

/// Hardy's Z(t).
#[pyfunction]
fn hardy_z(t: f64) -> PyResult<EvalResult> {
    Ok(zeta::hardy_z(t).map_err(py_err)?.into())
}

/// Riemann-Siegel θ(t).
#[pyfunction]
fn theta(t: f64) -> PyResult<f64> {
    zeta::theta(t).map_err(py_err)
}

/// Evaluate one of the gallery functions by name.
#[pyfunction]
fn evaluate(function: &str, z: Complex64) -> PyResult<EvalResult> {
    let o = special::oracle_by_name(function).map_err(py_err)?;
    Ok(o.eval(z).map_err(py_err)?.into())
}

/// Heights of the zeros on the critical line with t_lo < t <= t_hi, as
/// (ordinal, t) pairs.
#[pyfunction]
fn find_zeros(py: Python<'_>, t_lo: f64, t_hi: f64) -> PyResult<Vec<(i64, f64)>> {
    let r = py.detach(|| gram::find_zeros(t_lo, t_hi)).map_err(py_err)?;
    if let Some(w) = &r.warning {
        return Err(ConvergenceError::new_err(w.clone()));
    }
    Ok(r.zeros.iter().map(|z| (z.ordinal, z.t)).collect())
}

/// N(T), the number of zeros with 0 < t <= T.
#[pyfunction]
fn count_n(t: f64) -> PyResult<i64> {
    gram::count_n(t).map_err(py_err)
}

/// S(T).
#[pyfunction]
fn s_of_t(t: f64) -> PyResult<f64> {
    Ok(gram::s_of_t(t).map_err(py_err)?.s_value)
}

#[pyclass(frozen, module = "zetaxray")]
struct GramPoint {
    #[pyo3(get)]
    index: i64,
    #[pyo3(get)]
    t: f64,
    #[pyo3(get)]
    z: f64,
    #[pyo3(get)]
    good: bool,
}

#[pymethods]
impl GramPoint {
    fn __repr__(&self) -> String {
        format!("GramPoint(index={}, t={}, z={}, good={})", self.index, self.t, self.z, self.good)
    }
}

/// Gram point g_n (indices start at −1).
#[pyfunction]
fn gram_point(n: i64) -> PyResult<GramPoint> {
    let p = gram::gram_point(n).map_err(py_err)?;
    Ok(GramPoint { index: p.index, t: p.t, z: p.z_value, good: p.quality == gram::Quality::Good })
}

#[pyclass(frozen, module = "zetaxray")]
struct AuditReport {
    inner: gram::AuditReport,
}

#[pymethods]
impl AuditReport {
    /// Gram-law failures as (interval index, zero count).
    #[getter]
    fn gram_violations(&self) -> Vec<(i64, i64)> {
        self.inner.gram_violations.iter().map(|v| (v.interval.index, v.interval.zero_count)).collect()
    }

    /// Rosser-rule failures as (start index, end index, zero count).
    #[getter]
    fn rosser_violations(&self) -> Vec<(i64, i64, i64)> {
        self.inner.rosser_violations.iter().map(|b| (b.start_index, b.end_index, b.zero_count)).collect()
    }

    /// Gram blocks as (start index, end index, zero count).
    #[getter]
    fn blocks(&self) -> Vec<(i64, i64, i64)> {
        self.inner.classification.blocks.iter().map(|b| (b.start_index, b.end_index, b.zero_count)).collect()
    }

    fn summary(&self) -> String {
        self.inner.summary()
    }

    fn table(&self) -> String {
        self.inner.table()
    }
}

/// Audit Gram's law and Rosser's rule over Gram indices n_lo..=n_hi.
#[pyfunction]
fn audit(py: Python<'_>, n_lo: i64, n_hi: i64) -> PyResult<AuditReport> {
    let inner = py.detach(|| gram::audit_laws(n_lo, n_hi)).map_err(py_err)?;
    Ok(AuditReport { inner })
}

/// The van de Lune constant σ₀ rounded to `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (digits = 12))]
fn sigma0(py: Python<'_>, digits: u32) -> PyResult<f64> {
    py.detach(|| gram::van_de_lune_sigma0(digits)).map_err(py_err)
}

#[pyclass(frozen, module = "zetaxray")]
struct Curve {
    #[pyo3(get)]
    kind: String,
    #[pyo3(get)]
    points: Vec<Complex64>,
    #[pyo3(get)]
    line_number: Option<i64>,
    #[pyo3(get)]
    line_numbers: Vec<i64>,
    #[pyo3(get)]
    closed: bool,
}

#[pymethods]
impl Curve {
    fn __repr__(&self) -> String {
        format!("Curve(kind='{}', points={}, line_number={:?})", self.kind, self.points.len(), self.line_number)
    }
}

#[pyclass(frozen, module = "zetaxray")]
struct Singularity {
    #[pyo3(get)]
    kind: String,
    #[pyo3(get)]
    point: Complex64,
    #[pyo3(get)]
    multiplicity: u32,
    #[pyo3(get)]
    thick_branches: u32,
    #[pyo3(get)]
    thin_branches: u32,
}

#[pymethods]
impl Singularity {
    fn __repr__(&self) -> String {
        format!("Singularity(kind='{}', point={}, multiplicity={})", self.kind, self.point, self.multiplicity)
    }
}

/// The level curves Re f = 0 (thin) and Im f = 0 (thick) over a rectangle.
#[pyclass(frozen, module = "zetaxray")]
struct XRay {
    inner: xr::XRay,
}

#[pymethods]
impl XRay {
    #[getter]
    fn curves(&self) -> Vec<Curve> {
        self.inner
            .curves
            .iter()
            .map(|c| Curve {
                kind: c.kind.name().to_string(),
                points: c.points.iter().map(|p| p.to_complex()).collect(),
                line_number: c.line_number,
                line_numbers: c.line_numbers.clone(),
                closed: c.closed,
            })
            .collect()
    }

    #[getter]
    fn singularities(&self) -> Vec<Singularity> {
        self.inner
            .singularities
            .iter()
            .map(|s| Singularity {
                kind: format!("{:?}", s.kind).to_lowercase(),
                point: s.point.to_complex(),
                multiplicity: s.multiplicity,
                thick_branches: s.thick_branches,
                thin_branches: s.thin_branches,
            })
            .collect()
    }

    #[getter]
    fn diagnostics(&self) -> Vec<String> {
        self.inner.diagnostics.clone()
    }

    fn svg(&self) -> String {
        xr::render_svg(&self.inner.curves, &self.inner.singularities, &self.inner.rect, &xr::RenderStyle::default())
    }

    fn inventory(&self) -> String {
        xr::inventory_jsonl(&self.inner.curves)
    }

    fn point_dump(&self) -> String {
        xr::point_dump(&self.inner.curves)
    }
}

/// X-ray of a named function (zeta, hermite7, bessel_j7, airy_ai, gamma or
/// poly:c_n,...,c_0) over (sigma_min, sigma_max, t_min, t_max).
#[pyfunction]
#[pyo3(signature = (function, rect, nx = None, ny = None, depth = None))]
fn xray(
    py: Python<'_>,
    function: &str,
    rect: (f64, f64, f64, f64),
    nx: Option<usize>,
    ny: Option<usize>,
    depth: Option<u32>,
) -> PyResult<XRay> {
    let oracle = special::oracle_by_name(function).map_err(py_err)?;
    let rect = Rectangle::new(rect.0, rect.1, rect.2, rect.3).map_err(py_err)?;
    let d = xr::GridSpec::default_for(&rect);
    let grid = xr::GridSpec::new(nx.unwrap_or(d.nx), ny.unwrap_or(d.ny), depth.unwrap_or(d.max_refinement_depth))
        .map_err(py_err)?;
    let inner = py.detach(|| xr::xray(oracle, rect, grid)).map_err(py_err)?;
    Ok(XRay { inner })
}

/// Zero ordinals paired with Gram points n_lo..n_hi (n_hi excluded).
#[pyfunction]
fn sheet_permutation(py: Python<'_>, n_lo: i64, n_hi: i64) -> PyResult<Vec<Option<i64>>> {
    let oracle = special::ZetaOracle::default();
    let sheets = py.detach(|| xr::sheet_permutation(n_lo, n_hi, &oracle)).map_err(py_err)?;
    Ok(sheets.iter().map(|s| s.zero_ordinal).collect())
}

#[pymodule]
fn zetaxray(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    m.add_class::<EvalResult>()?;
    m.add_class::<GramPoint>()?;
    m.add_class::<AuditReport>()?;
    m.add_class::<Curve>()?;
    m.add_class::<Singularity>()?;
    m.add_class::<XRay>()?;
    m.add_function(wrap_pyfunction!(zeta_value, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_z, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(find_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(count_n, m)?)?;
    m.add_function(wrap_pyfunction!(s_of_t, m)?)?;
    m.add_function(wrap_pyfunction!(gram_point, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(sigma0, m)?)?;
    m.add_function(wrap_pyfunction!(xray, m)?)?;
    m.add_function(wrap_pyfunction!(sheet_permutation, m)?)?;
    Ok(())
}
