//! Midpoint grids on the unit circle and sample vectors attached to them.
//!
//! All boundary work in this crate happens on the midpoint grid
//! `t_j = 2*pi*(j + 1/2) / n`, which deliberately excludes `t = 0`: the
//! boundary data of the `(1-z)^alpha` family has its only singular point
//! there (`log |1 - e^{it}|` blows up), and midpoint nodes keep every sample
//! finite while the quadrature still converges.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A uniform midpoint grid with `n_points` nodes `t_j = 2*pi*(j+1/2)/n_points`.
///
/// The grid is fully determined by its size, so the type is a cheap copyable
/// handle; nodes are computed on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryGrid {
    n_points: usize,
}

impl BoundaryGrid {
    /// Creates a grid with `n_points >= 8` nodes. Powers of two make the FFT
    /// paths fastest but are not required.
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < 8 {
            return Err(Error::GridTooSmall(n_points));
        }
        Ok(Self { n_points })
    }

    /// Number of nodes.
    #[inline]
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Uniform node spacing `2*pi / n_points`.
    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n_points as f64
    }

    /// The `j`-th angle `t_j = 2*pi*(j + 1/2) / n_points`, in `(0, 2*pi)`.
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j < self.n_points);
        2.0 * PI * (j as f64 + 0.5) / self.n_points as f64
    }

    /// All node angles in increasing order.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.node(j)).collect()
    }

    /// The boundary point `e^{i t_j}`.
    #[inline]
    pub fn point(&self, j: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.node(j))
    }

    /// `|1 - e^{i t_j}| = 2 sin(t_j / 2)`, computed in the numerically stable
    /// trigonometric form (never by subtracting nearby complex numbers).
    #[inline]
    pub fn chord(&self, j: usize) -> f64 {
        2.0 * (0.5 * self.node(j)).sin()
    }

    /// Builds a sample vector on this grid by evaluating `f` at every node.
    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> BoundarySamples {
        let values = (0..self.n_points).map(|j| f(self.node(j))).collect();
        BoundarySamples {
            grid: *self,
            values,
        }
    }

    /// Builds a real-valued sample vector (stored as complex with zero
    /// imaginary part).
    pub fn sample_real(&self, f: impl Fn(f64) -> f64) -> BoundarySamples {
        self.sample(|t| Complex64::new(f(t), 0.0))
    }
}

/// One complex value per grid node; the discrete stand-in for a function on
/// the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySamples {
    grid: BoundaryGrid,
    values: Vec<Complex64>,
}

impl BoundarySamples {
    /// Wraps a value vector, checking the length against the grid.
    pub fn new(grid: BoundaryGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::SampleCountMismatch {
                expected: grid.n_points(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// The grid the samples live on.
    #[inline]
    pub fn grid(&self) -> BoundaryGrid {
        self.grid
    }

    /// Read-only access to the values.
    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Consumes the samples, returning the raw value vector.
    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// True when every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Nodewise product with another sample vector on the same grid.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    /// Nodewise quotient; the caller is responsible for the denominator being
    /// nonvanishing at the nodes.
    pub fn pointwise_div(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x / y)
    }

    /// Nodewise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                self.grid.n_points(),
                other.grid.n_points(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| op(x, y))
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }
}

/// A point strictly inside the unit disk.
///
/// The constructor enforces `|z| < 1`, so downstream evaluation code can rely
/// on geometric series and Herglotz kernels converging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    /// Wraps `z`, rejecting points on or outside the unit circle and
    /// non-finite input.
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("disk point"));
        }
        let r = z.norm();
        if r >= 1.0 {
            return Err(Error::NotInDisk(r));
        }
        Ok(Self { z })
    }

    /// Convenience constructor from a real radius.
    pub fn real(r: f64) -> Result<Self> {
        Self::new(Complex64::new(r, 0.0))
    }

    /// The underlying complex number.
    #[inline]
    pub fn z(&self) -> Complex64 {
        self.z
    }
}
