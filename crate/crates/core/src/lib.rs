//! Numerical workbench for the BPS sector of the gauged restricted baby
//! Skyrme model in two spatial dimensions.
//!
//! The model couples a unit-vector field S⃗ : ℝ² → S² (stored through its
//! stereographic image ω) to an abelian gauge field (A₁, A₂).  The static
//! energy is
//!
//! ```text
//! H = ½ ∫ 𝓗 d²x,
//! 𝓗 = 4λ₁ X²/(1+ωω̄)⁴ + λ₂ B² + V(u),
//! ```
//!
//! with X the gauged Jacobian bracket, B = ∂ₓA₂ − ∂ᵧA₁ the magnetic field
//! and u = 2ωω̄/(1+ωω̄) = 1 − n⃗·S⃗ the potential argument.  For potentials of
//! the form V = (λ₄²/4)(G₁′²/λ₁ + G₁²/λ₂) the energy admits a Bogomolny
//! decomposition: minimizers in each topological sector solve the pair of
//! first-order equations
//!
//! ```text
//! 4λ₁ X/(λ₄(1+ωω̄)²) = −G₁′(u),      B = −(λ₄/2λ₂) G₁(u),
//! ```
//!
//! and saturate a bound set by the gauge-invariant topological density I₁.
//!
//! The crate provides the field containers and finite-difference calculus
//! (`grid`, `fd`, `field`), the energy functional in both representations
//! (`energy`), Euler–Lagrange / Bogomolny / dual-equation residual checks
//! (`residual`), the potential construction (`potential`), a radial solver
//! for hedgehog BPS states (`radial`), topological diagnostics (`topology`),
//! an energy-descent flow (`flow`), and the file formats used by the CLI
//! (`io`).

pub mod energy;
pub mod error;
pub mod fd;
pub mod field;
pub mod flow;
pub mod grid;
pub mod interp;
pub mod io;
pub mod model;
pub mod ode;
pub mod potential;
pub mod radial;
pub mod residual;
pub mod topology;

pub use error::{Error, Result};
pub use field::{lift_radial, stereographic, FieldState, PointJet};
pub use grid::Grid2D;
pub use model::ModelParams;
