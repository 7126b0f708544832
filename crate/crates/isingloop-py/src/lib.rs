//! Python bindings for the loop-geometry solver and its dense oracle.
//!
//! The module mirrors the library surface: parameter points, loop
//! classification, energies and gaps, the reference states, and the
//! small-ring cross-validation. All errors surface as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use isingloop::freefermion::{self, ChainSize};
use isingloop::scan::{self, SweepSpec};
use isingloop::{edoracle, export, loopgeo, ModelParams, ParamName};

fn value_err(e: isingloop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Coupling set of the chain; all fields default to zero.
#[pyclass(name = "ModelParams", module = "isingloop_py", skip_from_py_object)]
#[derive(Clone, Copy)]
struct Params {
    #[pyo3(get, set)]
    a: f64,
    #[pyo3(get, set)]
    b: f64,
    #[pyo3(get, set)]
    gamma: f64,
    #[pyo3(get, set)]
    delta: f64,
    #[pyo3(get, set)]
    g: f64,
}

impl Params {
    fn inner(&self) -> ModelParams {
        ModelParams::new(self.a, self.b, self.gamma, self.delta, self.g)
    }

    fn wrap(p: ModelParams) -> Params {
        Params { a: p.a, b: p.b, gamma: p.gamma, delta: p.delta, g: p.g }
    }
}

#[pymethods]
impl Params {
    #[new]
    #[pyo3(signature = (a=0.0, b=0.0, gamma=0.0, delta=0.0, g=0.0))]
    fn new(a: f64, b: f64, gamma: f64, delta: f64, g: f64) -> Params {
        Params { a, b, gamma, delta, g }
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(a={}, b={}, gamma={}, delta={}, g={})",
            self.a, self.b, self.gamma, self.delta, self.g
        )
    }

    fn __eq__(&self, other: &Params) -> bool {
        self.inner() == other.inner()
    }
}

/// Topological class of a parameter point.
#[pyclass(name = "LoopClass", module = "isingloop_py", skip_from_py_object)]
#[derive(Clone)]
struct LoopClassPy {
    /// Signed turn count (clockwise positive); None when the loop hits the origin.
    #[pyo3(get)]
    winding: Option<i64>,
    #[pyo3(get)]
    min_radius: f64,
    #[pyo3(get)]
    degenerate: bool,
}

#[pymethods]
impl LoopClassPy {
    fn __repr__(&self) -> String {
        match self.winding {
            Some(w) => format!("LoopClass(winding={w}, min_radius={:.6e})", self.min_radius),
            None => format!("LoopClass(degenerate, min_radius={:.6e})", self.min_radius),
        }
    }
}

/// Named parameter point from the built-in table.
#[pyclass(name = "Preset", module = "isingloop_py", skip_from_py_object)]
#[derive(Clone)]
struct PresetPy {
    #[pyo3(get)]
    name: String,
    #[pyo3(get)]
    params: Params,
    #[pyo3(get)]
    expected_winding: Option<i64>,
    #[pyo3(get)]
    family_label: String,
}

#[pymethods]
impl PresetPy {
    fn __repr__(&self) -> String {
        format!("Preset({:?}, {})", self.name, self.params.__repr__())
    }
}

/// Summary of a dense diagonalization on a small ring.
#[pyclass(name = "GroundInfo", module = "isingloop_py", skip_from_py_object)]
#[derive(Clone, Copy)]
struct GroundInfoPy {
    #[pyo3(get)]
    ground_energy: f64,
    #[pyo3(get)]
    even_sector_energy: f64,
    /// Parity of the ground state, +1 or -1.
    #[pyo3(get)]
    parity: i32,
    #[pyo3(get)]
    degeneracy_gap: f64,
}

#[pymethods]
impl GroundInfoPy {
    fn __repr__(&self) -> String {
        format!(
            "GroundInfo(ground_energy={}, even_sector_energy={}, parity={:+}, degeneracy_gap={})",
            self.ground_energy, self.even_sector_energy, self.parity, self.degeneracy_gap
        )
    }
}

/// Residual between the dense even-sector energy and the closed form.
#[pyclass(name = "CrossValidation", module = "isingloop_py", skip_from_py_object)]
#[derive(Clone, Copy)]
struct CrossValidationPy {
    #[pyo3(get)]
    n: usize,
    #[pyo3(get)]
    residual: f64,
    #[pyo3(get)]
    parity: i32,
    #[pyo3(get)]
    degeneracy_gap: f64,
    #[pyo3(get)]
    passed: bool,
}

#[pymethods]
impl CrossValidationPy {
    fn __repr__(&self) -> String {
        format!(
            "CrossValidation(n={}, residual={:.3e}, passed={})",
            self.n, self.residual, self.passed
        )
    }
}

/// Classifies the loop of `params`: winding number and origin clearance.
#[pyfunction]
fn classify_loop(params: &Params) -> PyResult<LoopClassPy> {
    let c = scan::classify_loop(&params.inner()).map_err(value_err)?;
    Ok(LoopClassPy { winding: c.winding, min_radius: c.min_radius, degenerate: c.degenerate })
}

/// Global minimum of |r(k)| over the loop.
#[pyfunction]
fn min_radius(params: &Params) -> f64 {
    loopgeo::min_radius(&params.inner())
}

/// Momenta in (-pi, pi] where the loop passes through the origin.
#[pyfunction]
fn origin_crossings(params: &Params) -> Vec<f64> {
    loopgeo::origin_crossings(&params.inner())
}

/// Directional derivative of the energy density along `direction`.
#[pyfunction]
#[pyo3(signature = (params, direction, quad_tol=1e-8))]
fn first_variation(params: &Params, direction: &Params, quad_tol: f64) -> PyResult<f64> {
    loopgeo::first_variation(&params.inner(), &direction.inner(), quad_tol).map_err(value_err)
}

/// Ground-state energy per site in the thermodynamic limit.
/// Returns `(value, error_estimate)`.
#[pyfunction]
#[pyo3(signature = (params, tol=1e-8))]
fn energy_density(params: &Params, tol: f64) -> PyResult<(f64, f64)> {
    let r = freefermion::energy_density(&params.inner(), tol).map_err(value_err)?;
    Ok((r.value, r.quadrature_error_estimate))
}

/// Even-sector ground energy of a ring of `n` sites (exact mode sum).
#[pyfunction]
fn finite_ground_energy(params: &Params, n: usize) -> PyResult<f64> {
    Ok(freefermion::finite_ground_energy(&params.inner(), n).map_err(value_err)?.value)
}

/// Excitation gap; thermodynamic limit when `n` is omitted.
#[pyfunction]
#[pyo3(signature = (params, n=None))]
fn gap(params: &Params, n: Option<usize>) -> PyResult<f64> {
    let size = match n {
        Some(n) => ChainSize::Finite(n),
        None => ChainSize::Thermodynamic,
    };
    freefermion::gap(&params.inner(), size).map_err(value_err)
}

/// Antiperiodic-sector momenta of a ring of `n` sites, ascending.
#[pyfunction]
fn momentum_grid(n: usize) -> PyResult<Vec<f64>> {
    Ok(freefermion::momentum_grid(n).map_err(value_err)?.k_values)
}

/// Samples the loop at `num_points` momenta spanning [-pi, pi].
/// Returns `(k_values, x_values, y_values)`.
#[pyfunction]
#[pyo3(signature = (params, num_points=201))]
fn loop_samples(params: &Params, num_points: usize) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let s = loopgeo::sample_loop(&params.inner(), num_points).map_err(value_err)?;
    let xs = s.points.iter().map(|p| p.x).collect();
    let ys = s.points.iter().map(|p| p.y).collect();
    Ok((s.k_values, xs, ys))
}

/// The built-in table of named parameter points.
#[pyfunction]
fn presets() -> Vec<PresetPy> {
    isingloop::presets()
        .iter()
        .map(|p| PresetPy {
            name: p.name.clone(),
            params: Params::wrap(p.params),
            expected_winding: p.expected_winding,
            family_label: p.family_label.clone(),
        })
        .collect()
}

/// Amplitudes of the frustration-free reference state at coupling
/// `lambda` on `n` sites, in the computational basis (site 1 = MSB).
#[pyfunction]
fn special_state(lambda: i32, n: usize) -> PyResult<Vec<Complex64>> {
    let state = edoracle::special_state(lambda, n).map_err(value_err)?;
    Ok(state.amplitudes().to_vec())
}

/// 5x5 overlap-sign matrix of the reference states, lambda and rho in -2..=2.
#[pyfunction]
fn order_parameter_matrix(n: usize) -> PyResult<Vec<Vec<f64>>> {
    let m = edoracle::order_parameter_matrix(n).map_err(value_err)?;
    Ok(m.entries.iter().map(|row| row.to_vec()).collect())
}

/// Dense diagonalization of a ring of `n` sites (n <= 14).
#[pyfunction]
fn dense_ground(params: &Params, n: usize) -> PyResult<GroundInfoPy> {
    let strings = edoracle::build_hamiltonian(&params.inner(), n).map_err(value_err)?;
    let s = edoracle::dense_ground(&strings, n).map_err(value_err)?;
    Ok(GroundInfoPy {
        ground_energy: s.ground_energy,
        even_sector_energy: s.even_sector_energy,
        parity: s.parity_of_ground,
        degeneracy_gap: s.degeneracy_gap,
    })
}

/// Checks the closed-form even-sector energy against the dense oracle.
#[pyfunction]
fn cross_validate(params: &Params, n: usize) -> PyResult<CrossValidationPy> {
    let cv = edoracle::cross_validate(&params.inner(), n).map_err(value_err)?;
    Ok(CrossValidationPy {
        n: cv.n,
        residual: cv.residual,
        parity: cv.parity,
        degeneracy_gap: cv.degeneracy_gap,
        passed: cv.passed(),
    })
}

/// Sweeps one coupling and returns the rows as a JSON array string
/// (fields: alpha, eps_g, d1, d2, winding, degenerate, min_radius).
#[pyfunction]
#[pyo3(signature = (param, start, end, steps, fixed, quad_tol=1e-8))]
fn sweep_json(
    param: &str,
    start: f64,
    end: f64,
    steps: usize,
    fixed: &Params,
    quad_tol: f64,
) -> PyResult<String> {
    let varied: ParamName = param.parse().map_err(value_err)?;
    let spec = SweepSpec { varied, start, end, steps, fixed: fixed.inner(), quad_tol };
    let rows = scan::sweep(&spec).map_err(value_err)?;
    export::sweep_json(&rows).map_err(value_err)
}

#[pymodule]
fn isingloop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Params>()?;
    m.add_class::<LoopClassPy>()?;
    m.add_class::<PresetPy>()?;
    m.add_class::<GroundInfoPy>()?;
    m.add_class::<CrossValidationPy>()?;
    m.add_function(wrap_pyfunction!(classify_loop, m)?)?;
    m.add_function(wrap_pyfunction!(min_radius, m)?)?;
    m.add_function(wrap_pyfunction!(origin_crossings, m)?)?;
    m.add_function(wrap_pyfunction!(first_variation, m)?)?;
    m.add_function(wrap_pyfunction!(energy_density, m)?)?;
    m.add_function(wrap_pyfunction!(finite_ground_energy, m)?)?;
    m.add_function(wrap_pyfunction!(gap, m)?)?;
    m.add_function(wrap_pyfunction!(momentum_grid, m)?)?;
    m.add_function(wrap_pyfunction!(loop_samples, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(special_state, m)?)?;
    m.add_function(wrap_pyfunction!(order_parameter_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(dense_ground, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_json, m)?)?;
    Ok(())
}
