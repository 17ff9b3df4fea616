//! Superpotential profiles G₁(u) and the potentials V(u) they generate.
//!
//! The Bogomolny reduction only closes when the potential satisfies
//!
//! ```text
//!   V(u) = (λ₄²/4) · ( G₁′(u)²/λ₁ + G₁(u)²/λ₂ ),   u ∈ [0, 2],
//! ```
//!
//! so the workbench treats G₁ as the primary input and derives V from it.
//! A user-supplied V is also accepted (for probing *broken* consistency);
//! `check_condition` measures how far such a pair is from the constraint.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::ModelParams;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Superpotential profile: G₁ together with its first two derivatives.
///
/// Derivatives are supplied analytically rather than differenced — the EL
/// residuals need G₁″ at full accuracy and the radial solver feeds G₁′ into
/// a stiff region near the core where FD noise would poison the tolerance.
#[derive(Clone)]
pub struct GProfile {
    label: String,
    g: ScalarFn,
    gp: ScalarFn,
    gpp: ScalarFn,
}

impl fmt::Debug for GProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GProfile").field("label", &self.label).finish()
    }
}

impl GProfile {
    /// Monomial family G₁(u) = c·uᵖ/p.  Exponents below 2 would make G₁″
    /// singular at the vacuum u = 0, so they are rejected.
    pub fn power_scaled(p: f64, c: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 2.0) {
            return Err(Error::Domain(format!("power-family exponent must be >= 2, got {p}")));
        }
        if !(c.is_finite() && c != 0.0) {
            return Err(Error::Domain(format!("power-family scale must be finite and nonzero, got {c}")));
        }
        Ok(Self {
            label: if c == 1.0 { format!("power:{p}") } else { format!("power:{p}:{c}") },
            g: Arc::new(move |u| c * u.powf(p) / p),
            gp: Arc::new(move |u| c * u.powf(p - 1.0)),
            gpp: Arc::new(move |u| c * (p - 1.0) * u.powf(p - 2.0)),
        })
    }

    pub fn power(p: f64) -> Result<Self> {
        Self::power_scaled(p, 1.0)
    }

    /// Parse a profile spec of the form `power:P` or `power:P:C`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["power", p] => Self::power(parse_num(p, "exponent")?),
            ["power", p, c] => Self::power_scaled(parse_num(p, "exponent")?, parse_num(c, "scale")?),
            _ => Err(Error::Domain(format!(
                "unknown superpotential spec '{spec}' (expected power:P or power:P:C)"
            ))),
        }
    }

    /// Custom profile from closures; the caller vouches for the derivatives.
    pub fn from_fns(
        label: impl Into<String>,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        gp: impl Fn(f64) -> f64 + Send + Sync + 'static,
        gpp: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { label: label.into(), g: Arc::new(g), gp: Arc::new(gp), gpp: Arc::new(gpp) }
    }

    /// G₁ ≡ 0: the ungauged-compatible limit where V must vanish too.
    pub fn zero() -> Self {
        Self::from_fns("zero", |_| 0.0, |_| 0.0, |_| 0.0)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn g(&self, u: f64) -> f64 {
        (self.g)(u)
    }

    pub fn gp(&self, u: f64) -> f64 {
        (self.gp)(u)
    }

    pub fn gpp(&self, u: f64) -> f64 {
        (self.gpp)(u)
    }
}

fn parse_num(s: &str, what: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Domain(format!("could not parse {what} '{s}' in superpotential spec")))
}

/// Where a potential came from; recorded so reports can say whether the
/// Bogomolny consistency condition holds by construction or only by luck.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FromG1,
    UserSupplied,
}

/// A potential V(u) with its derivative.
#[derive(Clone)]
pub struct PotentialSpec {
    pub provenance: Provenance,
    v: ScalarFn,
    vprime: ScalarFn,
}

impl fmt::Debug for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSpec").field("provenance", &self.provenance).finish()
    }
}

impl PotentialSpec {
    pub fn user(
        v: impl Fn(f64) -> f64 + Send + Sync + 'static,
        vprime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { provenance: Provenance::UserSupplied, v: Arc::new(v), vprime: Arc::new(vprime) }
    }

    /// The same potential multiplied by `factor` (marked user-supplied:
    /// scaling breaks the consistency condition unless factor = 1).
    pub fn scaled(&self, factor: f64) -> Self {
        let v = self.v.clone();
        let vp = self.vprime.clone();
        Self {
            provenance: Provenance::UserSupplied,
            v: Arc::new(move |u| factor * v(u)),
            vprime: Arc::new(move |u| factor * vp(u)),
        }
    }

    pub fn v(&self, u: f64) -> f64 {
        (self.v)(u)
    }

    pub fn vprime(&self, u: f64) -> f64 {
        (self.vprime)(u)
    }
}

/// Build the unique potential compatible with the Bogomolny reduction for
/// the given superpotential and couplings.
pub fn potential_from_g(g: &GProfile, params: &ModelParams) -> PotentialSpec {
    let g = g.clone();
    let (l1, l2, l4) = (params.lambda1, params.lambda2, params.lambda4);
    let quarter = 0.25 * l4 * l4;
    let half = 0.5 * l4 * l4;
    let gv = g.clone();
    PotentialSpec {
        provenance: Provenance::FromG1,
        v: Arc::new(move |u| quarter * (gv.gp(u).powi(2) / l1 + gv.g(u).powi(2) / l2)),
        vprime: Arc::new(move |u| half * (g.gp(u) * g.gpp(u) / l1 + g.g(u) * g.gp(u) / l2)),
    }
}

/// Sup over `samples` evenly spaced u ∈ [0, 2] of
/// |V(u) − (λ₄²/4)(G₁′²/λ₁ + G₁²/λ₂)|.  Zero (to rounding) iff the pair is
/// Bogomolny-compatible on the sampled range.
pub fn check_condition(g: &GProfile, pot: &PotentialSpec, params: &ModelParams, samples: usize) -> f64 {
    let quarter = 0.25 * params.lambda4 * params.lambda4;
    let mut worst = 0.0f64;
    let m = samples.max(2);
    for k in 0..m {
        let u = 2.0 * k as f64 / (m - 1) as f64;
        let required = quarter * (g.gp(u).powi(2) / params.lambda1 + g.g(u).powi(2) / params.lambda2);
        worst = worst.max((pot.v(u) - required).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn power_family_derivatives_are_consistent() {
        let g = GProfile::power(2.0).unwrap();
        assert_relative_eq!(g.g(2.0), 2.0);
        assert_relative_eq!(g.gp(1.5), 1.5);
        assert_relative_eq!(g.gpp(0.3), 1.0);
        // FD cross-check of the supplied derivatives at a generic point
        let (u, h) = (0.77, 1e-6);
        assert_relative_eq!((g.g(u + h) - g.g(u - h)) / (2.0 * h), g.gp(u), max_relative = 1e-8);
        assert_relative_eq!((g.gp(u + h) - g.gp(u - h)) / (2.0 * h), g.gpp(u), max_relative = 1e-8);
    }

    #[test]
    fn spec_parsing_round_trips() {
        let g = GProfile::from_spec("power:2").unwrap();
        assert_eq!(g.label(), "power:2");
        let g = GProfile::from_spec("power:3:0.5").unwrap();
        assert_eq!(g.label(), "power:3:0.5");
        assert_relative_eq!(g.g(2.0), 0.5 * 8.0 / 3.0);
        assert!(GProfile::from_spec("power:1.5").is_err());
        assert!(GProfile::from_spec("exp:1").is_err());
        assert!(GProfile::from_spec("power:abc").is_err());
    }

    #[test]
    fn derived_potential_satisfies_condition_exactly() {
        let params = ModelParams::new(0.7, 3.0, 1.3, 1).unwrap();
        let g = GProfile::power(2.5).unwrap();
        let pot = potential_from_g(&g, &params);
        assert_eq!(pot.provenance, Provenance::FromG1);
        assert!(check_condition(&g, &pot, &params, 501) < 1e-14);
        // and the derivative matches an FD of v
        let (u, h) = (1.1, 1e-6);
        assert_relative_eq!((pot.v(u + h) - pot.v(u - h)) / (2.0 * h), pot.vprime(u), max_relative = 1e-7);
    }

    #[test]
    fn scaled_potential_breaks_condition_proportionally() {
        let params = ModelParams::unit();
        let g = GProfile::power(2.0).unwrap();
        let pot = potential_from_g(&g, &params);
        let bad = pot.scaled(1.1);
        assert_eq!(bad.provenance, Provenance::UserSupplied);
        let gap = check_condition(&g, &bad, &params, 501);
        // V(2) = (1/4)(G′(2)² + G(2)²) = 2, so a 10% scaling leaves a 0.2 gap
        assert_relative_eq!(gap, 0.2, max_relative = 1e-12);
    }
}
