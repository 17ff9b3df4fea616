//! Field configurations on a grid and the stereographic dictionary.
//!
//! A state is the complex scalar ω together with the spatial gauge
//! potential (A₁, A₂).  Everything downstream — energies, residuals,
//! topological charge — consumes the first-derivative jet of a state, so
//! the jet is computed once per state and passed around explicitly.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fd::{diff_x, diff_y};
use crate::grid::Grid2D;
use crate::model::ModelParams;
use crate::radial::{RadialProfile, Termination};

/// Largest u admitted when lifting: keeps |ω| = √(u/(2−u)) finite on nodes
/// that land arbitrarily close to the core pole.
pub const U_LIFT_CLAMP: f64 = 2.0 - 1e-12;

/// Unit three-vector of the stereographic image of ω.
pub fn stereographic(omega: Complex64) -> [f64; 3] {
    let s = 1.0 + omega.norm_sqr();
    [2.0 * omega.re / s, 2.0 * omega.im / s, (1.0 - omega.norm_sqr()) / s]
}

/// First-derivative data of a state at one node.
#[derive(Debug, Clone, Copy)]
pub struct PointJet {
    pub omega: Complex64,
    pub omega_x: Complex64,
    pub omega_y: Complex64,
    pub a1: f64,
    pub a2: f64,
    /// Magnetic field B = ∂ₓA₂ − ∂ᵧA₁.
    pub b: f64,
}

impl PointJet {
    /// s = 1 + |ω|².
    pub fn s(&self) -> f64 {
        1.0 + self.omega.norm_sqr()
    }

    /// u = 2|ω|²/(1 + |ω|²) ∈ [0, 2].
    pub fn u(&self) -> f64 {
        2.0 * self.omega.norm_sqr() / self.s()
    }

    /// The gauged kinetic bracket
    /// X = i(ω,ₓ ω̄,ᵧ − ω,ᵧ ω̄,ₓ) − A₁ ∂ᵧ|ω|² + A₂ ∂ₓ|ω|².
    pub fn x_bracket(&self) -> f64 {
        let antisym = (self.omega_x * self.omega_y.conj()).im;
        let mx = 2.0 * (self.omega_x * self.omega.conj()).re;
        let my = 2.0 * (self.omega_y * self.omega.conj()).re;
        -2.0 * antisym - self.a1 * my + self.a2 * mx
    }
}

/// Spatial derivatives of a state, node by node.
#[derive(Debug, Clone)]
pub struct Jets {
    pub omega_x: Vec<Complex64>,
    pub omega_y: Vec<Complex64>,
    pub b: Vec<f64>,
}

/// A field configuration sampled on a rectangular grid.
#[derive(Debug, Clone)]
pub struct FieldState {
    pub grid: Grid2D,
    pub omega: Vec<Complex64>,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
}

impl FieldState {
    pub fn new(grid: Grid2D, omega: Vec<Complex64>, a1: Vec<f64>, a2: Vec<f64>) -> Result<Self> {
        grid.check_len(&omega, "omega")?;
        grid.check_len(&a1, "a1")?;
        grid.check_len(&a2, "a2")?;
        if omega.iter().any(|w| !w.re.is_finite() || !w.im.is_finite())
            || a1.iter().chain(&a2).any(|v| !v.is_finite())
        {
            return Err(Error::Numerical("field state contains non-finite entries".into()));
        }
        Ok(Self { grid, omega, a1, a2 })
    }

    /// Vacuum state: ω = 0, A = 0.
    pub fn vacuum(grid: Grid2D) -> Self {
        let n = grid.n_nodes();
        Self { grid, omega: vec![Complex64::ZERO; n], a1: vec![0.0; n], a2: vec![0.0; n] }
    }

    /// FD jet of the state.
    pub fn jets(&self) -> Result<Jets> {
        let omega_x = diff_x(&self.omega, &self.grid)?;
        let omega_y = diff_y(&self.omega, &self.grid)?;
        let a2_x = diff_x(&self.a2, &self.grid)?;
        let a1_y = diff_y(&self.a1, &self.grid)?;
        let b = a2_x.iter().zip(&a1_y).map(|(p, q)| p - q).collect();
        Ok(Jets { omega_x, omega_y, b })
    }

    /// Assemble the jet at node `k`.
    pub fn point_jet(&self, jets: &Jets, k: usize) -> PointJet {
        PointJet {
            omega: self.omega[k],
            omega_x: jets.omega_x[k],
            omega_y: jets.omega_y[k],
            a1: self.a1[k],
            a2: self.a2[k],
            b: jets.b[k],
        }
    }

    /// Band-limited random state, reproducible from `seed`.  Useful for
    /// off-shell verification sweeps; carries no topology (ω is bounded
    /// away from the pole).
    pub fn synthetic(grid: Grid2D, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lx = grid.x_max - grid.x_min;
        let ly = grid.y_max - grid.y_min;
        let mut modes = Vec::new();
        for _ in 0..4 {
            modes.push((
                rng.random_range(-2i32..=2) as f64 * std::f64::consts::TAU / lx,
                rng.random_range(-2i32..=2) as f64 * std::f64::consts::TAU / ly,
                Complex64::new(rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4)),
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.3..0.3),
            ));
        }
        let omega = grid.map_nodes(|x, y| {
            let mut w = Complex64::ZERO;
            for &(kx, ky, c, _, _) in &modes {
                w += c * Complex64::new(0.0, kx * x + ky * y).exp();
            }
            w
        });
        let a1 = grid.map_nodes(|x, y| {
            modes.iter().map(|&(kx, ky, _, c1, _)| c1 * (kx * x + ky * y).cos()).sum()
        });
        let a2 = grid.map_nodes(|x, y| {
            modes.iter().map(|&(kx, ky, _, _, c2)| c2 * (kx * x + ky * y + 0.7).sin()).sum()
        });
        Self { grid, omega, a1, a2 }
    }
}

/// Lift a hedgehog profile onto a grid:
/// ω = √(u/(2−u)) e^{inθ},  (A₁, A₂) = n a(r) (−y, x)/r².
///
/// Vacuum- or compacton-terminated profiles are extended past their last
/// sample by ω = 0 and a = a(r_last); truncated profiles (max-radius or
/// singularity) must cover the grid's corner radius and error out
/// otherwise.
pub fn lift_radial(profile: &RadialProfile, grid: &Grid2D, params: &ModelParams) -> Result<FieldState> {
    let (u_of_r, a_of_r) = profile.interpolants()?;
    let r_last = u_of_r.x_max();
    let extendable = matches!(
        profile.termination,
        Termination::VacuumReached | Termination::CompactonBoundary
    );
    if !extendable && grid.corner_radius() > r_last {
        return Err(Error::Domain(format!(
            "profile ends at r = {r_last:.6} ({}) but the grid reaches r = {:.6}; \
             only vacuum- or compacton-terminated profiles can be extended",
            profile.termination.label(),
            grid.corner_radius()
        )));
    }
    let a_last = *profile.a.last().unwrap();
    let nf = params.n as f64;
    let n_nodes = grid.n_nodes();
    let mut omega = vec![Complex64::ZERO; n_nodes];
    let mut a1 = vec![0.0; n_nodes];
    let mut a2 = vec![0.0; n_nodes];
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            let k = grid.idx(ix, iy);
            let (x, y) = (grid.x(ix), grid.y(iy));
            let r = x.hypot(y);
            let (uv, av) = if r <= r_last {
                (u_of_r.eval(r).clamp(0.0, U_LIFT_CLAMP), a_of_r.eval(r))
            } else {
                (0.0, a_last)
            };
            if r > 1e-12 {
                let f = (uv / (2.0 - uv)).sqrt();
                let phase = nf * y.atan2(x);
                omega[k] = Complex64::from_polar(f, phase);
                let scale = nf * av / (r * r);
                a1[k] = -scale * y;
                a2[k] = scale * x;
            } else {
                // a node exactly at the core: the phase is undefined and
                // a(r)/r² → finite; both are set by continuity of A (→ 0)
                omega[k] = Complex64::new((uv / (2.0 - uv)).sqrt(), 0.0);
            }
        }
    }
    FieldState::new(grid.clone(), omega, a1, a2)
}
