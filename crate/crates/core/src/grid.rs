//! Uniform tensor-product grids on a rectangle.
//!
//! Nodes are stored row-major with y as the slow index: the node (ix, iy)
//! lives at flat index `iy * nx + ix`.  File formats and every grid-shaped
//! `Vec` in this crate follow the same order.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::Grid(format!("need at least 3 nodes per axis, got {nx}x{ny}")));
        }
        if !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::Grid(format!(
                "extents must be increasing, got x [{x_min}, {x_max}], y [{y_min}, {y_max}]"
            )));
        }
        if ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::Grid("extents must be finite".into()));
        }
        Ok(Grid2D { nx, ny, x_min, x_max, y_min, y_max })
    }

    /// Square grid centered on the origin.  With an even node count no node
    /// falls on the origin itself, which keeps lifted hedgehog fields finite
    /// (ω has a pole where u = 2); this is the default the CLI uses.
    pub fn centered_square(n: usize, half_extent: f64) -> Result<Self> {
        Grid2D::new(n, n, -half_extent, half_extent, -half_extent, half_extent)
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn n_nodes(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    #[inline]
    pub fn x(&self, ix: usize) -> f64 {
        self.x_min + ix as f64 * self.hx()
    }

    #[inline]
    pub fn y(&self, iy: usize) -> f64 {
        self.y_min + iy as f64 * self.hy()
    }

    #[inline]
    pub fn is_boundary(&self, ix: usize, iy: usize) -> bool {
        ix == 0 || iy == 0 || ix == self.nx - 1 || iy == self.ny - 1
    }

    /// Trapezoid quadrature weight of node (ix, iy): hx·hy, halved on each
    /// boundary edge the node touches.
    pub fn trapezoid_weight(&self, ix: usize, iy: usize) -> f64 {
        let cx = if ix == 0 || ix == self.nx - 1 { 0.5 } else { 1.0 };
        let cy = if iy == 0 || iy == self.ny - 1 { 0.5 } else { 1.0 };
        cx * cy * self.hx() * self.hy()
    }

    /// Largest distance from the origin to any node (the corners).
    pub fn corner_radius(&self) -> f64 {
        let xm = self.x_min.abs().max(self.x_max.abs());
        let ym = self.y_min.abs().max(self.y_max.abs());
        (xm * xm + ym * ym).sqrt()
    }

    /// Build a node field from a function of position.
    pub fn map_nodes<T>(&self, mut f: impl FnMut(f64, f64) -> T) -> Vec<T> {
        let mut out = Vec::with_capacity(self.n_nodes());
        for iy in 0..self.ny {
            let y = self.y(iy);
            for ix in 0..self.nx {
                out.push(f(self.x(ix), y));
            }
        }
        out
    }

    pub fn check_len<T>(&self, field: &[T], name: &str) -> Result<()> {
        if field.len() != self.n_nodes() {
            return Err(Error::Shape(format!(
                "{name} has {} entries, grid has {} nodes",
                field.len(),
                self.n_nodes()
            )));
        }
        Ok(())
    }
}
