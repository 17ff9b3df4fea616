//! Model couplings.

use crate::error::{Error, Result};

/// Couplings of the gauged restricted baby Skyrme energy and the winding
/// number of the hedgehog sector under study.
///
/// λ₁ multiplies the Skyrme (quartic) term, λ₂ the Maxwell term, and λ₄ sets
/// the strength of the superpotential coupling in the Bogomolny equations.
/// λ₄ carries sign information — flipping it together with `n` maps a
/// solution onto its mirror — so only `= 0` is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda4: f64,
    /// Hedgehog winding number.
    pub n: i32,
}

impl ModelParams {
    pub fn new(lambda1: f64, lambda2: f64, lambda4: f64, n: i32) -> Result<Self> {
        if !(lambda1.is_finite() && lambda1 > 0.0) {
            return Err(Error::Domain(format!("lambda1 must be finite and > 0, got {lambda1}")));
        }
        if !(lambda2.is_finite() && lambda2 > 0.0) {
            return Err(Error::Domain(format!("lambda2 must be finite and > 0, got {lambda2}")));
        }
        if !(lambda4.is_finite() && lambda4 != 0.0) {
            return Err(Error::Domain(format!("lambda4 must be finite and nonzero, got {lambda4}")));
        }
        if n == 0 {
            return Err(Error::Domain("winding number n must be nonzero".into()));
        }
        Ok(Self { lambda1, lambda2, lambda4, n })
    }

    /// Unit couplings, n = 1; the most common baseline in tests.
    pub fn unit() -> Self {
        Self { lambda1: 1.0, lambda2: 1.0, lambda4: 1.0, n: 1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_couplings() {
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 1.0, 1).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 1.0, 1).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 1).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0).is_err());
        assert!(ModelParams::new(1.0, 10.0, -0.5, -2).is_ok());
    }
}
