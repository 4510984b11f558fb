//! Uniform cell-centered rectangular grid with an implicit Dirichlet box.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn ndim(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }
}

/// `n` cells per side on `[-half_width, half_width]^d`; grid points sit at
/// cell centers, so no point lies exactly at the origin and the point set is
/// symmetric under reflections and quarter turns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dim: Dim,
    pub n: usize,
    pub half_width: f64,
}

impl Grid {
    pub fn new(dim: Dim, n: usize, half_width: f64) -> Self {
        assert!(n >= 8, "grid too small");
        assert!(half_width > 0.0);
        Self {
            dim,
            n,
            half_width,
        }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Coordinate of cell index `i` along any axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim.ndim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim.ndim() as i32)
    }
}
