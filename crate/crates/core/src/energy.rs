//! Static energy of a configuration.
//!
//! Density (in the rescaled units used throughout):
//!
//! ```text
//!   𝓗 = 4λ₁ X²/s⁴ + λ₂ B² + V(u),   s = 1 + |ω|²,   E = ½ ∫ 𝓗 d²x,
//! ```
//!
//! with X the gauged kinetic bracket of [`PointJet::x_bracket`].  The same
//! density is also available through the unit-vector (S¹, S², S³)
//! representation; both routes consume the *same* FD jet, so agreement is
//! an algebraic identity rather than a discretization statement.

use crate::error::Result;
use crate::field::{stereographic, FieldState, Jets, PointJet};
use crate::model::ModelParams;
use crate::potential::PotentialSpec;

/// X at every node.
pub fn x_grid(state: &FieldState, jets: &Jets) -> Vec<f64> {
    (0..state.grid.n_nodes()).map(|k| state.point_jet(jets, k).x_bracket()).collect()
}

/// 𝓗 at one node from its jet.
pub fn density_at(jet: &PointJet, params: &ModelParams, pot: &PotentialSpec) -> f64 {
    let s = jet.s();
    let x = jet.x_bracket();
    4.0 * params.lambda1 * x * x / s.powi(4) + params.lambda2 * jet.b * jet.b + pot.v(jet.u())
}

/// 𝓗 on the whole grid, ω-representation route.
pub fn energy_density(
    state: &FieldState,
    jets: &Jets,
    params: &ModelParams,
    pot: &PotentialSpec,
) -> Result<Vec<f64>> {
    Ok((0..state.grid.n_nodes())
        .map(|k| density_at(&state.point_jet(jets, k), params, pot))
        .collect())
}

/// 𝓗 on the whole grid through the unit-vector representation:
/// the jet of ω is pushed forward to the jet of S⃗ analytically and the
/// density is assembled as λ₁ [S⃗·(D₁S⃗ × D₂S⃗)]² + λ₂B² + V(1 − S³).
pub fn energy_density_svector(
    state: &FieldState,
    jets: &Jets,
    params: &ModelParams,
    pot: &PotentialSpec,
) -> Result<Vec<f64>> {
    let mut out = vec![0.0; state.grid.n_nodes()];
    for (k, h) in out.iter_mut().enumerate() {
        let jet = state.point_jet(jets, k);
        let sv = stereographic(jet.omega);
        let d1 = covariant_s_derivative(&jet, jet.omega_x, jet.a1, &sv);
        let d2 = covariant_s_derivative(&jet, jet.omega_y, jet.a2, &sv);
        let cross = [
            d1[1] * d2[2] - d1[2] * d2[1],
            d1[2] * d2[0] - d1[0] * d2[2],
            d1[0] * d2[1] - d1[1] * d2[0],
        ];
        let triple = sv[0] * cross[0] + sv[1] * cross[1] + sv[2] * cross[2];
        *h = params.lambda1 * triple * triple
            + params.lambda2 * jet.b * jet.b
            + pot.v(1.0 - sv[2]);
    }
    Ok(out)
}

/// DᵢS⃗ = ∂ᵢS⃗ + Aᵢ (−S², S¹, 0), with ∂ᵢS⃗ obtained by pushing the
/// ω-derivative through the stereographic map.
fn covariant_s_derivative(
    jet: &PointJet,
    omega_i: num_complex::Complex64,
    a_i: f64,
    sv: &[f64; 3],
) -> [f64; 3] {
    let s = jet.s();
    let m_i = 2.0 * (omega_i * jet.omega.conj()).re; // ∂ᵢ|ω|²
    let horizontal = omega_i * (2.0 / s) - jet.omega * (2.0 * m_i / (s * s));
    [
        horizontal.re - a_i * sv[1],
        horizontal.im + a_i * sv[0],
        -2.0 * m_i / (s * s),
    ]
}

/// E = ½ Σ w 𝓗 with trapezoid weights.
pub fn total_energy(
    state: &FieldState,
    jets: &Jets,
    params: &ModelParams,
    pot: &PotentialSpec,
) -> Result<f64> {
    let density = energy_density(state, jets, params, pot)?;
    let g = &state.grid;
    let mut e = 0.0;
    for iy in 0..g.ny {
        for ix in 0..g.nx {
            e += g.trapezoid_weight(ix, iy) * density[g.idx(ix, iy)];
        }
    }
    Ok(0.5 * e)
}

/// Reduced (radial, on-shell) density from χ = X/s², B and u.
pub fn density_reduced(chi: f64, b: f64, u: f64, params: &ModelParams, pot: &PotentialSpec) -> f64 {
    4.0 * params.lambda1 * chi * chi + params.lambda2 * b * b + pot.v(u)
}
