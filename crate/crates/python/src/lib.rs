//! Python bindings for `adjq-core`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use adjq_core::adjusted::{rho_c_binding, rho_d_binding};
use adjq_core::comonotone::Marginal;
use adjq_core::harness::run_suite as core_run_suite;

fn err(e: adjq_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts the JSON layout too: one value per cell plus the infinite one.
fn drop_infinite_cell(cuts: usize, mut values: Vec<f64>, at_end: bool, inf: f64) -> Vec<f64> {
    if values.len() == cuts + 1 {
        if at_end && values.last() == Some(&inf) {
            values.pop();
        } else if !at_end && values.first() == Some(&inf) {
            values.remove(0);
        }
    }
    values
}

/// Right-continuous step CDF of a finite distribution.
#[pyclass(frozen, skip_from_py_object, eq, name = "StepCdf", module = "adjq")]
#[derive(Clone, PartialEq)]
struct PyStepCdf(adjq_core::StepCdf);

#[pymethods]
impl PyStepCdf {
    #[new]
    fn new(breakpoints: Vec<f64>, levels: Vec<f64>) -> PyResult<Self> {
        adjq_core::StepCdf::new(breakpoints, levels).map(Self).map_err(err)
    }

    /// Empirical CDF, optionally weighted (weights must sum to 1).
    #[staticmethod]
    #[pyo3(signature = (samples, weights=None))]
    fn from_samples(samples: Vec<f64>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        adjq_core::StepCdf::from_samples(&samples, weights.as_deref())
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn point_mass(x: f64) -> Self {
        Self(adjq_core::StepCdf::point_mass(x))
    }

    #[getter]
    fn breakpoints(&self) -> Vec<f64> {
        self.0.breakpoints().to_vec()
    }

    #[getter]
    fn levels(&self) -> Vec<f64> {
        self.0.levels().to_vec()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.eval(x).value()
    }

    fn eval_left(&self, x: f64) -> f64 {
        self.0.eval_left(x).value()
    }

    /// Whether `self` first-order stochastically dominates `other`.
    fn dominates(&self, other: &Self) -> bool {
        self.0.fosd_ge(&other.0)
    }

    fn join(&self, other: &Self) -> Self {
        Self(self.0.join(&other.0))
    }

    fn meet(&self, other: &Self) -> Self {
        Self(self.0.meet(&other.0))
    }

    fn translate(&self, shift: f64) -> Self {
        Self(self.0.translate(shift))
    }

    fn affine_push(&self, scale: f64, shift: f64) -> PyResult<Self> {
        self.0.affine_push(scale, shift).map(Self).map_err(err)
    }

    fn reflect(&self) -> Self {
        Self(self.0.reflect())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("StepCdf(breakpoints={:?}, levels={:?})", self.0.breakpoints(), self.0.levels())
    }
}

/// Nondecreasing step function of the outcome with values in [0, 1].
#[pyclass(frozen, skip_from_py_object, eq, name = "ShapeFn", module = "adjq")]
#[derive(Clone, PartialEq)]
struct PyShapeFn(adjq_core::ShapeFn);

#[pymethods]
impl PyShapeFn {
    #[new]
    fn new(jump_points: Vec<f64>, jump_levels: Vec<f64>) -> PyResult<Self> {
        adjq_core::ShapeFn::new(jump_points, jump_levels).map(Self).map_err(err)
    }

    #[getter]
    fn jump_points(&self) -> Vec<f64> {
        self.0.jump_points().to_vec()
    }

    #[getter]
    fn jump_levels(&self) -> Vec<f64> {
        self.0.jump_levels().to_vec()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    fn __repr__(&self) -> String {
        format!("ShapeFn(jump_points={:?}, jump_levels={:?})", self.0.jump_points(), self.0.jump_levels())
    }
}

/// Nondecreasing step function of the level, `+inf` past its threshold.
#[pyclass(frozen, skip_from_py_object, eq, name = "HandicapFn", module = "adjq")]
#[derive(Clone, PartialEq)]
struct PyHandicapFn(adjq_core::HandicapFn);

#[pymethods]
impl PyHandicapFn {
    /// `values` holds one finite value per cut point, optionally followed
    /// by `inf`.
    #[new]
    fn new(cut_points: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        let values = drop_infinite_cell(cut_points.len(), values, true, f64::INFINITY);
        adjq_core::HandicapFn::new(cut_points, values).map(Self).map_err(err)
    }

    /// The handicap whose adjusted quantile is the lower quantile at `alpha`.
    #[staticmethod]
    fn quantile(alpha: f64) -> PyResult<Self> {
        adjq_core::quantile_handicap(alpha).map(Self).map_err(err)
    }

    #[getter]
    fn cut_points(&self) -> Vec<f64> {
        self.0.cut_points().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    fn __call__(&self, alpha: f64) -> f64 {
        self.0.eval(alpha)
    }

    fn __repr__(&self) -> String {
        format!("HandicapFn(cut_points={:?}, values={:?})", self.0.cut_points(), self.0.values())
    }
}

#[pyclass(frozen, skip_from_py_object, eq, name = "DualShapeFn", module = "adjq")]
#[derive(Clone, PartialEq)]
struct PyDualShapeFn(adjq_core::DualShapeFn);

#[pymethods]
impl PyDualShapeFn {
    #[new]
    fn new(jump_points: Vec<f64>, levels_below: Vec<f64>) -> PyResult<Self> {
        adjq_core::DualShapeFn::new(jump_points, levels_below).map(Self).map_err(err)
    }

    #[getter]
    fn jump_points(&self) -> Vec<f64> {
        self.0.jump_points().to_vec()
    }

    #[getter]
    fn levels_below(&self) -> Vec<f64> {
        self.0.levels_below().to_vec()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    fn __repr__(&self) -> String {
        format!(
            "DualShapeFn(jump_points={:?}, levels_below={:?})",
            self.0.jump_points(),
            self.0.levels_below()
        )
    }
}

#[pyclass(frozen, skip_from_py_object, eq, name = "DualHandicapFn", module = "adjq")]
#[derive(Clone, PartialEq)]
struct PyDualHandicapFn(adjq_core::DualHandicapFn);

#[pymethods]
impl PyDualHandicapFn {
    /// `values` holds one finite value per cut point, optionally preceded
    /// by `-inf`.
    #[new]
    fn new(cut_points: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        let values = drop_infinite_cell(cut_points.len(), values, false, f64::NEG_INFINITY);
        adjq_core::DualHandicapFn::new(cut_points, values).map(Self).map_err(err)
    }

    #[getter]
    fn cut_points(&self) -> Vec<f64> {
        self.0.cut_points().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    fn __call__(&self, alpha: f64) -> f64 {
        self.0.eval(alpha)
    }

    fn __repr__(&self) -> String {
        format!("DualHandicapFn(cut_points={:?}, values={:?})", self.0.cut_points(), self.0.values())
    }
}

/// Joint distribution of two random variables on finitely many outcomes.
#[pyclass(frozen, skip_from_py_object, name = "FiniteJoint", module = "adjq")]
#[derive(Clone)]
struct PyFiniteJoint(adjq_core::FiniteJoint);

#[pymethods]
impl PyFiniteJoint {
    /// `outcomes` is a list of `(probability, x, y)`.
    #[new]
    fn new(outcomes: Vec<(f64, f64, f64)>) -> PyResult<Self> {
        adjq_core::FiniteJoint::new(outcomes).map(Self).map_err(err)
    }

    #[getter]
    fn outcomes(&self) -> Vec<(f64, f64, f64)> {
        self.0.outcomes().to_vec()
    }

    fn is_comonotonic(&self) -> bool {
        self.0.is_comonotonic()
    }

    fn marginal_x(&self) -> PyStepCdf {
        PyStepCdf(self.0.marginal_cdf(Marginal::X))
    }

    fn marginal_y(&self) -> PyStepCdf {
        PyStepCdf(self.0.marginal_cdf(Marginal::Y))
    }

    /// CDF of `max(X, Y)`.
    fn max_cdf(&self) -> PyStepCdf {
        PyStepCdf(self.0.rv_join_cdf())
    }

    /// CDF of `min(X, Y)`.
    fn min_cdf(&self) -> PyStepCdf {
        PyStepCdf(self.0.rv_meet_cdf())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyfunction]
fn lower_quantile(f: &PyStepCdf, alpha: f64) -> PyResult<f64> {
    adjq_core::lower_quantile(&f.0, alpha).map_err(err)
}

#[pyfunction]
fn upper_quantile(f: &PyStepCdf, alpha: f64) -> PyResult<f64> {
    adjq_core::upper_quantile(&f.0, alpha).map_err(err)
}

#[pyfunction]
fn rho_phi(f: &PyStepCdf, phi: &PyShapeFn) -> f64 {
    adjq_core::rho_phi(&f.0, &phi.0)
}

#[pyfunction]
fn rho_c(f: &PyStepCdf, c: &PyHandicapFn) -> f64 {
    adjq_core::rho_c(&f.0, &c.0)
}

#[pyfunction]
fn rho_psi(f: &PyStepCdf, psi: &PyDualShapeFn) -> f64 {
    adjq_core::rho_psi(&f.0, &psi.0)
}

#[pyfunction]
fn rho_d(f: &PyStepCdf, d: &PyDualHandicapFn) -> f64 {
    adjq_core::rho_d(&f.0, &d.0)
}

/// `(value, alpha, quantile)` of the handicap statistic at its binding cell.
#[pyfunction]
fn binding_c(f: &PyStepCdf, c: &PyHandicapFn) -> (f64, f64, f64) {
    let b = rho_c_binding(&f.0, &c.0);
    (b.value, b.alpha, b.quantile)
}

#[pyfunction]
fn binding_d(f: &PyStepCdf, d: &PyDualHandicapFn) -> (f64, f64, f64) {
    let b = rho_d_binding(&f.0, &d.0);
    (b.value, b.alpha, b.quantile)
}

#[pyfunction]
fn phi_to_c(phi: &PyShapeFn) -> PyHandicapFn {
    PyHandicapFn(adjq_core::phi_to_c(&phi.0))
}

#[pyfunction]
fn c_to_phi(c: &PyHandicapFn) -> PyShapeFn {
    PyShapeFn(adjq_core::c_to_phi(&c.0))
}

#[pyfunction]
fn psi_to_d(psi: &PyDualShapeFn) -> PyDualHandicapFn {
    PyDualHandicapFn(adjq_core::psi_to_d(&psi.0))
}

#[pyfunction]
fn d_to_psi(d: &PyDualHandicapFn) -> PyDualShapeFn {
    PyDualShapeFn(adjq_core::d_to_psi(&d.0))
}

#[pyfunction]
fn dual_shape_of(phi: &PyShapeFn) -> PyDualShapeFn {
    PyDualShapeFn(adjq_core::dual_shape_of(&phi.0))
}

#[pyfunction]
fn dual_handicap_of(c: &PyHandicapFn) -> PyDualHandicapFn {
    PyDualHandicapFn(adjq_core::dual_handicap_of(&c.0))
}

#[pyfunction]
fn levy_distance(f: &PyStepCdf, g: &PyStepCdf) -> f64 {
    adjq_core::levy_distance(&f.0, &g.0)
}

#[pyfunction]
fn comonotone_coupling(f: &PyStepCdf, g: &PyStepCdf) -> PyFiniteJoint {
    PyFiniteJoint(adjq_core::comonotone_coupling(&f.0, &g.0))
}

/// Flags comparing the max/min of a joint with the lattice operations on
/// its marginals.
#[pyfunction]
fn check_lattice_commutation<'py>(py: Python<'py>, joint: &PyFiniteJoint) -> PyResult<Bound<'py, PyDict>> {
    let c = adjq_core::check_lattice_commutation(&joint.0);
    let d = PyDict::new(py);
    d.set_item("max_dominates_join", c.ineq_join)?;
    d.set_item("meet_dominates_min", c.ineq_meet)?;
    d.set_item("equalities_if_comonotonic", c.eq_if_comonotone)?;
    Ok(d)
}

/// Runs the randomized axiom checks; one dict per check.
#[pyfunction]
#[pyo3(signature = (seed=0, trials=1000, inject_mean=false))]
fn run_suite<'py>(
    py: Python<'py>,
    seed: u64,
    trials: usize,
    inject_mean: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = py.detach(|| core_run_suite(seed, trials, inject_mean));
    reports
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("check", r.check)?;
            d.set_item("trials", r.trials)?;
            d.set_item("failures", r.failures)?;
            d.set_item("first_failure_seed", r.first_failure_seed)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn adjq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStepCdf>()?;
    m.add_class::<PyShapeFn>()?;
    m.add_class::<PyHandicapFn>()?;
    m.add_class::<PyDualShapeFn>()?;
    m.add_class::<PyDualHandicapFn>()?;
    m.add_class::<PyFiniteJoint>()?;
    m.add_function(wrap_pyfunction!(lower_quantile, m)?)?;
    m.add_function(wrap_pyfunction!(upper_quantile, m)?)?;
    m.add_function(wrap_pyfunction!(rho_phi, m)?)?;
    m.add_function(wrap_pyfunction!(rho_c, m)?)?;
    m.add_function(wrap_pyfunction!(rho_psi, m)?)?;
    m.add_function(wrap_pyfunction!(rho_d, m)?)?;
    m.add_function(wrap_pyfunction!(binding_c, m)?)?;
    m.add_function(wrap_pyfunction!(binding_d, m)?)?;
    m.add_function(wrap_pyfunction!(phi_to_c, m)?)?;
    m.add_function(wrap_pyfunction!(c_to_phi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_to_d, m)?)?;
    m.add_function(wrap_pyfunction!(d_to_psi, m)?)?;
    m.add_function(wrap_pyfunction!(dual_shape_of, m)?)?;
    m.add_function(wrap_pyfunction!(dual_handicap_of, m)?)?;
    m.add_function(wrap_pyfunction!(levy_distance, m)?)?;
    m.add_function(wrap_pyfunction!(comonotone_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(check_lattice_commutation, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
