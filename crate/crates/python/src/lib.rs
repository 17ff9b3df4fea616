//! Python face of the workbench.  Thin wrappers around the core types plus
//! free functions for the main operations; superpotentials are passed as
//! spec strings ("power:2") and the potential is always the generated one.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use bskyrme_core::energy;
use bskyrme_core::field::{lift_radial, FieldState};
use bskyrme_core::flow::{flow as flow_rs, FlowConfig};
use bskyrme_core::grid::Grid2D;
use bskyrme_core::io;
use bskyrme_core::model::ModelParams;
use bskyrme_core::potential::{potential_from_g, GProfile};
use bskyrme_core::radial::{
    onshell_identity_check, radial_energy, solve_radial as solve_radial_rs, RadialProfile,
    SolveOpts,
};
use bskyrme_core::residual::{
    bogomolny_residual as bog_rs, dual_el_consistency, dual_tautology_check,
    el_residual as el_rs, sample_jets, DEFAULT_POLE_GUARD,
};
use bskyrme_core::topology::{bound_report as bound_rs, degree as degree_rs};
use bskyrme_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) => PyRuntimeError::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn profile_of(spec: &str) -> PyResult<GProfile> {
    GProfile::from_spec(spec).map_err(err)
}

/// Couplings and winding number.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Model {
    inner: ModelParams,
}

#[pymethods]
impl Model {
    #[new]
    fn new(lambda1: f64, lambda2: f64, lambda4: f64, n: i32) -> PyResult<Self> {
        Ok(Self { inner: ModelParams::new(lambda1, lambda2, lambda4, n).map_err(err)? })
    }

    #[getter]
    fn lambda1(&self) -> f64 {
        self.inner.lambda1
    }

    #[getter]
    fn lambda2(&self) -> f64 {
        self.inner.lambda2
    }

    #[getter]
    fn lambda4(&self) -> f64 {
        self.inner.lambda4
    }

    #[getter]
    fn n(&self) -> i32 {
        self.inner.n
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(lambda1={}, lambda2={}, lambda4={}, n={})",
            self.inner.lambda1, self.inner.lambda2, self.inner.lambda4, self.inner.n
        )
    }
}

/// Radial solution samples (r, u, a) with stored slopes.
#[pyclass]
struct Profile {
    inner: RadialProfile,
}

#[pymethods]
impl Profile {
    #[getter]
    fn r(&self) -> Vec<f64> {
        self.inner.r.clone()
    }

    #[getter]
    fn u(&self) -> Vec<f64> {
        self.inner.u.clone()
    }

    #[getter]
    fn a(&self) -> Vec<f64> {
        self.inner.a.clone()
    }

    #[getter]
    fn du(&self) -> Vec<f64> {
        self.inner.du.clone()
    }

    #[getter]
    fn da(&self) -> Vec<f64> {
        self.inner.da.clone()
    }

    #[getter]
    fn termination(&self) -> &'static str {
        self.inner.termination.label()
    }

    #[getter]
    fn r_last(&self) -> f64 {
        self.inner.r_last()
    }

    fn stretched(&self, factor: f64) -> PyResult<Profile> {
        Ok(Profile { inner: self.inner.stretched(factor).map_err(err)? })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        io::write_profile(path.as_ref(), &self.inner, &Vec::new()).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Profile> {
        let (inner, _) = io::read_profile(path.as_ref()).map_err(err)?;
        Ok(Profile { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.r.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile({} samples, r_last={:.4}, {})",
            self.inner.r.len(),
            self.inner.r_last(),
            self.inner.termination.label()
        )
    }
}

/// Planar field configuration (ω, A₁, A₂) on a rectangular grid.
#[pyclass]
struct State {
    inner: FieldState,
}

#[pymethods]
impl State {
    #[getter]
    fn nx(&self) -> usize {
        self.inner.grid.nx
    }

    #[getter]
    fn ny(&self) -> usize {
        self.inner.grid.ny
    }

    /// Re ω, row-major.
    #[getter]
    fn omega_re(&self) -> Vec<f64> {
        self.inner.omega.iter().map(|w| w.re).collect()
    }

    /// Im ω, row-major.
    #[getter]
    fn omega_im(&self) -> Vec<f64> {
        self.inner.omega.iter().map(|w| w.im).collect()
    }

    #[getter]
    fn a1(&self) -> Vec<f64> {
        self.inner.a1.clone()
    }

    #[getter]
    fn a2(&self) -> Vec<f64> {
        self.inner.a2.clone()
    }

    fn save(&self, path: &str) -> PyResult<()> {
        io::write_snapshot(path.as_ref(), &self.inner, &Vec::new()).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<State> {
        let (inner, _) = io::read_snapshot(path.as_ref()).map_err(err)?;
        Ok(State { inner })
    }

    fn __repr__(&self) -> String {
        format!("State({}x{} grid)", self.inner.grid.nx, self.inner.grid.ny)
    }
}

/// Integrate the radial first-order system out of u = 2 at the origin.
#[pyfunction]
#[pyo3(signature = (model, g1, rtol=1e-10, r_max=60.0, max_step=0.01))]
fn solve_radial(model: &Model, g1: &str, rtol: f64, r_max: f64, max_step: f64) -> PyResult<Profile> {
    let opts = SolveOpts { rtol, r_max, max_step, ..Default::default() };
    let inner = solve_radial_rs(&model.inner, &profile_of(g1)?, &opts).map_err(err)?;
    Ok(Profile { inner })
}

/// (energy, −½∫I₁, exact bound πnλ₄G₁(2)) of a radial profile.
#[pyfunction]
fn energy_of_profile(profile: &Profile, model: &Model, g1: &str) -> PyResult<(f64, f64, f64)> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let e = radial_energy(&profile.inner, &model.inner, &g, &pot).map_err(err)?;
    Ok((e.energy, e.bound, e.exact_bound))
}

/// (relative sup of 𝓗 vs 2V, absolute sup of 𝓗 + I₁) along the profile.
#[pyfunction]
fn onshell_gaps(profile: &Profile, model: &Model, g1: &str) -> PyResult<(f64, f64)> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let check = onshell_identity_check(&profile.inner, &model.inner, &g, &pot);
    Ok((check.max_density_minus_2v, check.max_density_plus_invariant))
}

/// Lift a radial profile onto a centered square grid.
#[pyfunction]
#[pyo3(signature = (profile, model, grid_size=128, half_extent=6.5))]
fn lift(profile: &Profile, model: &Model, grid_size: usize, half_extent: f64) -> PyResult<State> {
    let grid = Grid2D::centered_square(grid_size, half_extent).map_err(err)?;
    let inner = lift_radial(&profile.inner, &grid, &model.inner).map_err(err)?;
    Ok(State { inner })
}

/// Total energy ½∫𝓗 of a planar state.
#[pyfunction]
fn total_energy(state: &State, model: &Model, g1: &str) -> PyResult<f64> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let jets = state.inner.jets().map_err(err)?;
    energy::total_energy(&state.inner, &jets, &model.inner, &pot).map_err(err)
}

/// (sup, l2) of the first-order residuals outside the pole guard.
#[pyfunction]
#[pyo3(signature = (state, model, g1, guard=DEFAULT_POLE_GUARD))]
fn bogomolny_residual(state: &State, model: &Model, g1: &str, guard: f64) -> PyResult<(f64, f64)> {
    let jets = state.inner.jets().map_err(err)?;
    let rep = bog_rs(&state.inner, &jets, &model.inner, &profile_of(g1)?, guard);
    Ok((rep.sup_norm, rep.l2_norm))
}

/// (sup, l2) of the second-order residuals outside the pole guard.
#[pyfunction]
#[pyo3(signature = (state, model, g1, guard=DEFAULT_POLE_GUARD))]
fn el_residual(state: &State, model: &Model, g1: &str, guard: f64) -> PyResult<(f64, f64)> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let jets = state.inner.jets().map_err(err)?;
    let rep = el_rs(&state.inner, &jets, &model.inner, &pot, guard).map_err(err)?;
    Ok((rep.sup_norm, rep.l2_norm))
}

/// (½∫𝓗, ½∫I₁, degree, sup identity gap) over the guarded region.
#[pyfunction]
#[pyo3(signature = (state, model, g1, guard=DEFAULT_POLE_GUARD))]
fn bound_report(state: &State, model: &Model, g1: &str, guard: f64) -> PyResult<(f64, f64, f64, f64)> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let jets = state.inner.jets().map_err(err)?;
    let rep = bound_rs(&state.inner, &jets, &model.inner, &g, &pot, guard).map_err(err)?;
    Ok((rep.region_energy, rep.region_invariant, rep.degree, rep.max_identity_gap))
}

/// Topological degree by full-grid quadrature.
#[pyfunction]
fn degree(state: &State) -> PyResult<f64> {
    degree_rs(&state.inner).map_err(err)
}

/// Gradient descent on the discrete energy; returns
/// (state, final energy, iterations, converged).
#[pyfunction]
#[pyo3(signature = (state, model, g1, max_iters=2000, grad_tol=1e-6, initial_step=1e-2))]
fn flow(
    state: &State,
    model: &Model,
    g1: &str,
    max_iters: usize,
    grad_tol: f64,
    initial_step: f64,
) -> PyResult<(State, f64, usize, bool)> {
    let g = profile_of(g1)?;
    let pot = potential_from_g(&g, &model.inner);
    let cfg = FlowConfig { max_iters, grad_tol, initial_step, ..Default::default() };
    let out = flow_rs(&state.inner, &model.inner, &pot, &cfg).map_err(err)?;
    let energy = out.history.last().map(|s| s.energy).unwrap_or(f64::NAN);
    Ok((State { inner: out.state }, energy, out.iters, out.converged))
}

/// Max residual of the substituted dual equations over random jets —
/// rounding-level by construction, any bigger value is a defect.
#[pyfunction]
#[pyo3(signature = (model, g1, seed=7, count=1000, amplitude=2.0))]
fn check_tautology(model: &Model, g1: &str, seed: u64, count: usize, amplitude: f64) -> PyResult<f64> {
    let g = profile_of(g1)?;
    let jets = sample_jets(seed, count, amplitude);
    let rep = dual_tautology_check(&g, &model.inner, &jets);
    let pot = potential_from_g(&g, &model.inner);
    let consistency = dual_el_consistency(&g, &pot, &model.inner, &jets);
    Ok(rep.max.max(consistency))
}

#[pymodule]
fn bskyrme(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Profile>()?;
    m.add_class::<State>()?;
    m.add_function(wrap_pyfunction!(solve_radial, m)?)?;
    m.add_function(wrap_pyfunction!(energy_of_profile, m)?)?;
    m.add_function(wrap_pyfunction!(onshell_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(total_energy, m)?)?;
    m.add_function(wrap_pyfunction!(bogomolny_residual, m)?)?;
    m.add_function(wrap_pyfunction!(el_residual, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(degree, m)?)?;
    m.add_function(wrap_pyfunction!(flow, m)?)?;
    m.add_function(wrap_pyfunction!(check_tautology, m)?)?;
    m.add("DEFAULT_POLE_GUARD", DEFAULT_POLE_GUARD)?;
    Ok(())
}
