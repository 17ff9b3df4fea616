//! One step of the Dormand–Prince 5(4) embedded Runge–Kutta pair.
//!
//! Only the single-step kernel lives here; the radial solver owns the step
//! controller because acceptance there is entangled with event detection
//! (vacuum crossing, compacton edge, gauge-profile pole).

/// Result of one trial step.
pub struct StepResult {
    /// Fifth-order solution at t + h.
    pub y_new: Vec<f64>,
    /// Difference between the fifth- and fourth-order solutions.
    pub err: Vec<f64>,
    /// RHS at (t + h, y_new); FSAL — feed it back as `k1` of the next step.
    pub k_last: Vec<f64>,
}

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// b(5th) − b(4th); the 5th-order weights are the last row of A (FSAL).
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Advance `y` by one trial step of size `h`.  `k1` is the RHS at (t, y);
/// pass the previous step's `k_last` when continuing, or evaluate afresh.
pub fn dp45_step(f: &mut impl FnMut(f64, &[f64], &mut [f64]), t: f64, y: &[f64], h: f64, k1: &[f64]) -> StepResult {
    let n = y.len();
    let mut k = vec![vec![0.0; n]; 7];
    k[0].copy_from_slice(k1);
    let mut stage = vec![0.0; n];
    for s in 0..6 {
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..=s {
                acc += h * A[s][j] * k[j][i];
            }
            stage[i] = acc;
        }
        f(t + C[s] * h, &stage, &mut k[s + 1]);
    }
    // stage 7 input is the 5th-order solution itself
    let y_new = stage.clone();
    let k_last = k[6].clone();
    let mut err = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for (j, kj) in k.iter().enumerate() {
            acc += E[j] * kj[i];
        }
        err[i] = h * acc;
    }
    StepResult { y_new, err, k_last }
}

/// Weighted RMS of the embedded error against mixed tolerances; accept the
/// step when this is ≤ 1.
pub fn error_norm(err: &[f64], y_old: &[f64], y_new: &[f64], rtol: f64, atol: f64) -> f64 {
    let n = err.len() as f64;
    let sum: f64 = err
        .iter()
        .zip(y_old.iter().zip(y_new))
        .map(|(e, (a, b))| {
            let scale = atol + rtol * a.abs().max(b.abs());
            (e / scale).powi(2)
        })
        .sum();
    (sum / n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn integrate(
        mut f: impl FnMut(f64, &[f64], &mut [f64]),
        t0: f64,
        t1: f64,
        y0: Vec<f64>,
        h: f64,
    ) -> Vec<f64> {
        let mut t = t0;
        let mut y = y0;
        let mut k1 = vec![0.0; y.len()];
        f(t, &y, &mut k1);
        while t < t1 - 1e-14 {
            let step = h.min(t1 - t);
            let r = dp45_step(&mut f, t, &y, step, &k1);
            y = r.y_new;
            k1 = r.k_last;
            t += step;
        }
        y
    }

    #[test]
    fn exponential_growth_is_exact_to_pair_order() {
        let y = integrate(|_, y, dy| dy[0] = y[0], 0.0, 1.0, vec![1.0], 0.05);
        assert_relative_eq!(y[0], std::f64::consts::E, max_relative = 1e-10);
    }

    #[test]
    fn harmonic_oscillator_round_trip() {
        let y = integrate(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            0.0,
            2.0 * std::f64::consts::PI,
            vec![1.0, 0.0],
            0.02,
        );
        assert_relative_eq!(y[0], 1.0, max_relative = 1e-9);
        assert!(y[1].abs() < 1e-9);
    }

    #[test]
    fn local_error_estimate_scales_at_fifth_order() {
        // for a smooth RHS the embedded estimate is O(h⁵)
        let mut f = |t: f64, y: &[f64], dy: &mut [f64]| dy[0] = (t + y[0]).sin();
        let y = vec![0.3];
        let mut k1 = vec![0.0];
        f(0.0, &y, &mut k1);
        let e1 = dp45_step(&mut f, 0.0, &y, 0.1, &k1).err[0].abs();
        let e2 = dp45_step(&mut f, 0.0, &y, 0.05, &k1).err[0].abs();
        let order = (e1 / e2).log2();
        assert!((order - 5.0).abs() < 0.5, "observed order {order}");
    }

    #[test]
    fn fsal_stage_matches_fresh_rhs() {
        let mut f = |t: f64, y: &[f64], dy: &mut [f64]| dy[0] = t * y[0];
        let y = vec![2.0];
        let mut k1 = vec![0.0];
        f(0.0, &y, &mut k1);
        let r = dp45_step(&mut f, 0.0, &y, 0.1, &k1);
        let mut fresh = vec![0.0];
        f(0.1, &r.y_new, &mut fresh);
        assert_relative_eq!(r.k_last[0], fresh[0], max_relative = 1e-14);
    }
}
