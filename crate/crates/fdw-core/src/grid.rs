use crate::error::{Error, Result};

/// Uniform periodic grid on the box [-L, L)^dim.
///
/// The frequency lattice attached to the grid is xi_k = (pi/L) * k with
/// integer k in [-N/2, N/2) on every axis, so spacing and bandwidth are
/// isotropic. Sample ordering is row-major over the axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    dim: usize,
    points_per_axis: usize,
    half_width: f64,
}

impl Grid {
    pub fn new(dim: usize, points_per_axis: usize, half_width: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: format!("must be 1, 2 or 3, got {dim}"),
            });
        }
        if !points_per_axis.is_power_of_two() || points_per_axis < 16 {
            return Err(Error::InvalidParameter {
                name: "points_per_axis",
                reason: format!("must be a power of two >= 16, got {points_per_axis}"),
            });
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidParameter {
                name: "half_width",
                reason: format!("must be positive and finite, got {half_width}"),
            });
        }
        Ok(Self {
            dim,
            points_per_axis,
            half_width,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Grid spacing h = 2L/N, identical on all axes.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Frequency lattice spacing pi/L.
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    /// Largest per-axis lattice frequency magnitude, pi*N/(2L).
    pub fn band_edge(&self) -> f64 {
        self.freq_spacing() * (self.points_per_axis as f64 / 2.0)
    }

    /// Total number of grid points, N^dim.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight h^dim of a single cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Signed integer frequency for a raw per-axis index in 0..N.
    #[inline]
    pub fn signed_index(&self, raw: usize) -> i64 {
        let n = self.points_per_axis as i64;
        let raw = raw as i64;
        if raw < n / 2 {
            raw
        } else {
            raw - n
        }
    }

    /// Decompose a flat row-major index into per-axis raw indices.
    #[inline]
    pub fn unravel(&self, mut flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        let mut out = [0usize; 3];
        for axis in (0..self.dim).rev() {
            out[axis] = flat % n;
            flat /= n;
        }
        out
    }

    /// Physical coordinates of the grid point with flat index `flat`.
    pub fn coords(&self, flat: usize) -> [f64; 3] {
        let raw = self.unravel(flat);
        let h = self.spacing();
        let mut x = [0.0f64; 3];
        for axis in 0..self.dim {
            x[axis] = -self.half_width + raw[axis] as f64 * h;
        }
        x
    }

    /// Frequency vector xi of the coefficient with flat index `flat`.
    pub fn frequency(&self, flat: usize) -> [f64; 3] {
        let raw = self.unravel(flat);
        let dxi = self.freq_spacing();
        let mut xi = [0.0f64; 3];
        for axis in 0..self.dim {
            xi[axis] = dxi * self.signed_index(raw[axis]) as f64;
        }
        xi
    }

    /// |xi| of the coefficient with flat index `flat`.
    pub fn frequency_norm(&self, flat: usize) -> f64 {
        let xi = self.frequency(flat);
        (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt()
    }

    /// |x| of the grid point with flat index `flat`.
    pub fn coord_norm(&self, flat: usize) -> f64 {
        let x = self.coords(flat);
        (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
    }
}
