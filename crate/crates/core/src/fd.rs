//! Finite-difference first derivatives on a uniform grid.
//!
//! Interior nodes use the second-order central stencil, boundary nodes the
//! second-order one-sided stencil, so the whole derivative field carries a
//! uniform O(h²) truncation error.  `diff_x_adjoint` / `diff_y_adjoint` are
//! the exact matrix transposes of the forward operators; the discrete
//! energy gradient in `flow` relies on that exactness, so the stencil
//! coefficients here must stay in lockstep with their transposed loops.

use num_complex::Complex64;
use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

use crate::error::Result;
use crate::grid::Grid2D;

/// Node value types the stencils operate on (f64 and Complex64).
pub trait Stencil: Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl Stencil for f64 {}
impl Stencil for Complex64 {}

/// ∂/∂x of a node field.
pub fn diff_x<T: Stencil>(field: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    grid.check_len(field, "diff_x input")?;
    let (nx, ny) = (grid.nx, grid.ny);
    let inv2h = 1.0 / (2.0 * grid.hx());
    let mut out = vec![T::zero(); field.len()];
    for iy in 0..ny {
        let row = iy * nx;
        out[row] = (field[row] * (-3.0) + field[row + 1] * 4.0 - field[row + 2]) * inv2h;
        for ix in 1..nx - 1 {
            out[row + ix] = (field[row + ix + 1] - field[row + ix - 1]) * inv2h;
        }
        let last = row + nx - 1;
        out[last] = (field[last] * 3.0 - field[last - 1] * 4.0 + field[last - 2]) * inv2h;
    }
    Ok(out)
}

/// ∂/∂y of a node field.
pub fn diff_y<T: Stencil>(field: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    grid.check_len(field, "diff_y input")?;
    let (nx, ny) = (grid.nx, grid.ny);
    let inv2h = 1.0 / (2.0 * grid.hy());
    let mut out = vec![T::zero(); field.len()];
    for ix in 0..nx {
        out[ix] = (field[ix] * (-3.0) + field[nx + ix] * 4.0 - field[2 * nx + ix]) * inv2h;
        for iy in 1..ny - 1 {
            out[iy * nx + ix] = (field[(iy + 1) * nx + ix] - field[(iy - 1) * nx + ix]) * inv2h;
        }
        let last = (ny - 1) * nx + ix;
        out[last] = (field[last] * 3.0 - field[last - nx] * 4.0 + field[last - 2 * nx]) * inv2h;
    }
    Ok(out)
}

/// ∂/∂x with the fourth-order five-point stencil where it fits, falling
/// back to the second-order formulas within two nodes of the boundary.
/// Used for smooth diagnostic fields (the unit-vector components feeding
/// the degree quadrature); the energy pipeline stays on `diff_x` so the
/// adjoint pair remains exact.
pub fn diff_x4<T: Stencil>(field: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    let mut out = diff_x(field, grid)?;
    let nx = grid.nx;
    if nx < 5 {
        return Ok(out);
    }
    let inv12h = 1.0 / (12.0 * grid.hx());
    for iy in 0..grid.ny {
        let row = iy * nx;
        for ix in 2..nx - 2 {
            let k = row + ix;
            out[k] = (field[k - 2] - field[k + 2] + (field[k + 1] - field[k - 1]) * 8.0) * inv12h;
        }
    }
    Ok(out)
}

/// ∂/∂y, fourth order in the interior; see `diff_x4`.
pub fn diff_y4<T: Stencil>(field: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    let mut out = diff_y(field, grid)?;
    let (nx, ny) = (grid.nx, grid.ny);
    if ny < 5 {
        return Ok(out);
    }
    let inv12h = 1.0 / (12.0 * grid.hy());
    for iy in 2..ny - 2 {
        for ix in 0..nx {
            let k = iy * nx + ix;
            out[k] = (field[k - 2 * nx] - field[k + 2 * nx] + (field[k + nx] - field[k - nx]) * 8.0)
                * inv12h;
        }
    }
    Ok(out)
}

/// Exact transpose of `diff_x`: out[j] = Σ_k Dx[k,j] v[k].
pub fn diff_x_adjoint<T: Stencil>(v: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    grid.check_len(v, "diff_x_adjoint input")?;
    let (nx, ny) = (grid.nx, grid.ny);
    let inv2h = 1.0 / (2.0 * grid.hx());
    let mut out = vec![T::zero(); v.len()];
    for iy in 0..ny {
        let row = iy * nx;
        // left one-sided row of Dx scatters into columns 0..3
        out[row] = out[row] + v[row] * (-3.0 * inv2h);
        out[row + 1] = out[row + 1] + v[row] * (4.0 * inv2h);
        out[row + 2] = out[row + 2] + v[row] * (-inv2h);
        for ix in 1..nx - 1 {
            let k = row + ix;
            out[k + 1] = out[k + 1] + v[k] * inv2h;
            out[k - 1] = out[k - 1] - v[k] * inv2h;
        }
        let last = row + nx - 1;
        out[last] = out[last] + v[last] * (3.0 * inv2h);
        out[last - 1] = out[last - 1] + v[last] * (-4.0 * inv2h);
        out[last - 2] = out[last - 2] + v[last] * inv2h;
    }
    Ok(out)
}

/// Exact transpose of `diff_y`.
pub fn diff_y_adjoint<T: Stencil>(v: &[T], grid: &Grid2D) -> Result<Vec<T>> {
    grid.check_len(v, "diff_y_adjoint input")?;
    let (nx, ny) = (grid.nx, grid.ny);
    let inv2h = 1.0 / (2.0 * grid.hy());
    let mut out = vec![T::zero(); v.len()];
    for ix in 0..nx {
        out[ix] = out[ix] + v[ix] * (-3.0 * inv2h);
        out[nx + ix] = out[nx + ix] + v[ix] * (4.0 * inv2h);
        out[2 * nx + ix] = out[2 * nx + ix] + v[ix] * (-inv2h);
        for iy in 1..ny - 1 {
            let k = iy * nx + ix;
            out[k + nx] = out[k + nx] + v[k] * inv2h;
            out[k - nx] = out[k - nx] - v[k] * inv2h;
        }
        let last = (ny - 1) * nx + ix;
        out[last] = out[last] + v[last] * (3.0 * inv2h);
        out[last - nx] = out[last - nx] + v[last] * (-4.0 * inv2h);
        out[last - 2 * nx] = out[last - 2 * nx] + v[last] * inv2h;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;

    fn grid(n: usize) -> Grid2D {
        Grid2D::new(n, n, -1.0, 1.5, -2.0, 0.5).unwrap()
    }

    #[test]
    fn linear_fields_are_differenced_exactly() {
        let g = grid(9);
        let f = g.map_nodes(|x, y| 3.0 * x - 2.0 * y + 1.0);
        let fx = diff_x(&f, &g).unwrap();
        let fy = diff_y(&f, &g).unwrap();
        for k in 0..f.len() {
            assert_relative_eq!(fx[k], 3.0, max_relative = 1e-12);
            assert_relative_eq!(fy[k], -2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn sine_derivative_converges_at_second_order() {
        let sup_err = |n: usize| -> (f64, f64) {
            let g = grid(n);
            let f = g.map_nodes(|x, y| (2.0 * x).sin() * (y).cos());
            let fx = diff_x(&f, &g).unwrap();
            let mut worst = 0.0f64;
            for iy in 0..g.ny {
                for ix in 0..g.nx {
                    let (x, y) = (g.x(ix), g.y(iy));
                    let exact = 2.0 * (2.0 * x).cos() * y.cos();
                    worst = worst.max((fx[g.idx(ix, iy)] - exact).abs());
                }
            }
            (worst, g.hx())
        };
        let (e1, h1) = sup_err(33);
        let (e2, h2) = sup_err(65);
        let order = (e1 / e2).ln() / (h1 / h2).ln();
        assert!((order - 2.0).abs() < 0.2, "observed order {order}");
    }

    #[test]
    fn five_point_stencil_converges_at_fourth_order() {
        // measure away from the two-node rim where the stencil degrades
        let interior_err = |n: usize| -> (f64, f64) {
            let g = grid(n);
            let f = g.map_nodes(|x, y| (2.0 * x).sin() * y.cos());
            let fy = diff_y4(&f, &g).unwrap();
            let mut worst = 0.0f64;
            for iy in 2..g.ny - 2 {
                for ix in 0..g.nx {
                    let (x, y) = (g.x(ix), g.y(iy));
                    let exact = -(2.0 * x).sin() * y.sin();
                    worst = worst.max((fy[g.idx(ix, iy)] - exact).abs());
                }
            }
            (worst, g.hy())
        };
        let (e1, h1) = interior_err(33);
        let (e2, h2) = interior_err(65);
        let order = (e1 / e2).ln() / (h1 / h2).ln();
        assert!((order - 4.0).abs() < 0.3, "observed order {order}");
    }

    #[test]
    fn mixed_partials_commute_to_truncation_error() {
        let g = grid(65);
        let f = g.map_nodes(|x, y| (x * y).sin() + 0.3 * (2.0 * x - y).cos());
        let fxy = diff_y(&diff_x(&f, &g).unwrap(), &g).unwrap();
        let fyx = diff_x(&diff_y(&f, &g).unwrap(), &g).unwrap();
        let mut worst = 0.0f64;
        for k in 0..f.len() {
            worst = worst.max((fxy[k] - fyx[k]).abs());
        }
        let h2 = g.hx() * g.hx();
        assert!(worst < 20.0 * h2, "commutator {worst} vs h² = {h2}");
    }

    #[test]
    fn adjoints_are_exact_transposes() {
        let g = grid(12);
        let mut rng = StdRng::seed_from_u64(7);
        let f: Vec<f64> = (0..g.n_nodes()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..g.n_nodes()).map(|_| rng.random_range(-1.0..1.0)).collect();
        for (fwd, adj) in [
            (diff_x as fn(&[f64], &Grid2D) -> Result<Vec<f64>>, diff_x_adjoint as fn(&[f64], &Grid2D) -> Result<Vec<f64>>),
            (diff_y, diff_y_adjoint),
        ] {
            let df = fwd(&f, &g).unwrap();
            let atv = adj(&v, &g).unwrap();
            let lhs: f64 = df.iter().zip(&v).map(|(a, b)| a * b).sum();
            let rhs: f64 = f.iter().zip(&atv).map(|(a, b)| a * b).sum();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn complex_fields_are_supported() {
        let g = grid(17);
        let f = g.map_nodes(|x, y| Complex64::new(x * x, x * y));
        let fx = diff_x(&f, &g).unwrap();
        let k = g.idx(8, 8);
        assert_relative_eq!(fx[k].re, 2.0 * g.x(8), max_relative = 1e-10);
        assert_relative_eq!(fx[k].im, g.y(8), max_relative = 1e-10);
    }
}
