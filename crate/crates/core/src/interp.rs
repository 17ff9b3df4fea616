//! Piecewise-cubic Hermite interpolation and adaptive quadrature.
//!
//! Radial solves store the RHS value at every accepted step, so the
//! interpolant gets exact slopes for free.  Slopes are still passed through
//! the Fritsch–Carlson limiter as a safety net: profile data is monotone by
//! construction and the lift must not manufacture overshoots near the
//! compacton edge where u grazes zero.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// Build from nodes, values and slopes (the latter get limited).
    pub fn with_slopes(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() != d.len() {
            return Err(Error::Shape(format!(
                "interpolant arrays disagree: {} nodes, {} values, {} slopes",
                x.len(),
                y.len(),
                d.len()
            )));
        }
        if x.len() < 2 {
            return Err(Error::Shape("interpolant needs at least two nodes".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("interpolant abscissae must be strictly increasing".into()));
        }
        if x.iter().chain(&y).chain(&d).any(|v| !v.is_finite()) {
            return Err(Error::Numerical("interpolant data contains non-finite entries".into()));
        }
        let mut d = d;
        limit_slopes(&x, &y, &mut d);
        Ok(Self { x, y, d })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    /// Index of the interval containing q (clamped to the valid range).
    fn interval(&self, q: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&q).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.x.len() - 2),
        }
    }

    /// Evaluate; outside the data range the boundary value is held constant.
    pub fn eval(&self, q: f64) -> f64 {
        if q <= self.x[0] {
            return self.y[0];
        }
        if q >= self.x_max() {
            return *self.y.last().unwrap();
        }
        let i = self.interval(q);
        let h = self.x[i + 1] - self.x[i];
        let t = (q - self.x[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(t);
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    /// Derivative of `eval`; zero strictly outside the data range, one-sided
    /// at the endpoints.
    pub fn eval_deriv(&self, q: f64) -> f64 {
        if q < self.x[0] || q > self.x_max() {
            return 0.0;
        }
        let i = self.interval(q);
        let h = self.x[i + 1] - self.x[i];
        let t = (q - self.x[i]) / h;
        let dh00 = (6.0 * t * t - 6.0 * t) / h;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh11 = 3.0 * t * t - 2.0 * t;
        dh00 * self.y[i] - dh00 * self.y[i + 1] + dh10 * self.d[i] + dh11 * self.d[i + 1]
    }
}

fn hermite_basis(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    (
        2.0 * t3 - 3.0 * t2 + 1.0,
        t3 - 2.0 * t2 + t,
        -2.0 * t3 + 3.0 * t2,
        t3 - t2,
    )
}

/// Fritsch–Carlson limiting: clamp slopes so each cubic piece is monotone
/// wherever the data is.
fn limit_slopes(x: &[f64], y: &[f64], d: &mut [f64]) {
    let n = x.len();
    for i in 0..n - 1 {
        let delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        if delta == 0.0 {
            d[i] = 0.0;
            d[i + 1] = 0.0;
            continue;
        }
        let alpha = d[i] / delta;
        let beta = d[i + 1] / delta;
        if alpha < 0.0 {
            d[i] = 0.0;
        }
        if beta < 0.0 {
            d[i + 1] = 0.0;
        }
        let (alpha, beta) = (d[i] / delta, d[i + 1] / delta);
        let r2 = alpha * alpha + beta * beta;
        if r2 > 9.0 {
            let tau = 3.0 / r2.sqrt();
            d[i] = tau * alpha * delta;
            d[i + 1] = tau * beta * delta;
        }
    }
}

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_refine(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_refine(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn reproduces_monotone_cubics_exactly() {
        // data must be monotone or the always-on limiter will clamp the
        // supplied slopes — which is exactly what it is for
        let p = |x: f64| x * x * x + 3.0 * x + 0.5;
        let dp = |x: f64| 3.0 * x * x + 3.0;
        let xs: Vec<f64> = (0..=10).map(|k| -1.0 + 0.37 * k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| p(x)).collect();
        let ds: Vec<f64> = xs.iter().map(|&x| dp(x)).collect();
        let c = MonotoneCubic::with_slopes(xs, ys, ds).unwrap();
        for k in 0..200 {
            let q = -1.0 + 3.7 * k as f64 / 199.0;
            assert_relative_eq!(c.eval(q), p(q), max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(c.eval_deriv(q), dp(q), max_relative = 1e-11, epsilon = 1e-11);
        }
    }

    #[test]
    fn limited_interpolant_stays_monotone() {
        // deliberately oversized slopes that an unlimited Hermite would
        // turn into overshoot
        let xs = vec![0.0, 1.0, 2.0, 3.0];
        let ys = vec![0.0, 0.1, 0.9, 1.0];
        let ds = vec![5.0, 5.0, 5.0, 5.0];
        let c = MonotoneCubic::with_slopes(xs, ys, ds).unwrap();
        let mut prev = c.eval(0.0);
        for k in 1..=300 {
            let q = 3.0 * k as f64 / 300.0;
            let v = c.eval(q);
            assert!(v >= prev - 1e-12, "non-monotone at q={q}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn eval_clamps_outside_range() {
        let c = MonotoneCubic::with_slopes(vec![0.0, 1.0], vec![2.0, 3.0], vec![1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(c.eval(-5.0), 2.0);
        assert_abs_diff_eq!(c.eval(9.0), 3.0);
        assert_abs_diff_eq!(c.eval_deriv(9.0), 0.0);
    }

    #[test]
    fn rejects_malformed_data() {
        assert!(MonotoneCubic::with_slopes(vec![0.0, 0.0], vec![1.0, 2.0], vec![0.0, 0.0]).is_err());
        assert!(MonotoneCubic::with_slopes(vec![0.0], vec![1.0], vec![0.0]).is_err());
        assert!(MonotoneCubic::with_slopes(vec![0.0, 1.0], vec![1.0, f64::NAN], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn simpson_integrates_smooth_functions() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert_relative_eq!(v, 2.0, max_relative = 1e-11);
        let v = adaptive_simpson(&|x: f64| (-x * x).exp(), -6.0, 6.0, 1e-12);
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), max_relative = 1e-10);
    }
}
