use alloc::vec::Vec;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// A coordinate assignment `p : V(G) → ℝ^d`, stored as one flat vector of
/// length `d·n` with the coordinates of vertex `i` at `d·i .. d·(i+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    dim: usize,
    coords: Vec<f64>,
}

impl Placement {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len(),
            });
        }
        Ok(Placement { dim, coords })
    }

    pub fn from_points<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Placement { dim, coords })
    }

    pub fn zeros(n: usize, dim: usize) -> Self {
        Placement {
            dim,
            coords: alloc::vec![0.0; n * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[self.dim * i..self.dim * (i + 1)]
    }

    pub fn point_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coords[self.dim * i..self.dim * (i + 1)]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let d: Vec<f64> = self
            .point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| a - b)
            .collect();
        linalg::norm(&d)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Uniform rescaling into the unit box `[-1, 1]^d`.
    ///
    /// Only scales; the origin stays put because every symmetry group fixes it.
    pub fn normalized(&self) -> Placement {
        let m = self.max_abs();
        if m <= 0.0 {
            return self.clone();
        }
        Placement {
            dim: self.dim,
            coords: self.coords.iter().map(|x| x / m).collect(),
        }
    }

    /// Applies the linear map `m` to every point.
    pub fn transformed(&self, m: &DMatrix<f64>) -> Result<Placement> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.nrows(),
            });
        }
        let mut out = Placement::zeros(self.len(), self.dim);
        for i in 0..self.len() {
            let p = self.point(i);
            let q = out.point_mut(i);
            for r in 0..self.dim {
                q[r] = (0..self.dim).map(|c| m[(r, c)] * p[c]).sum();
            }
        }
        Ok(out)
    }
}
