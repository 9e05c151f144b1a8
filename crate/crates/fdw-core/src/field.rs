//! Sampled real fields, their discrete Fourier coefficients, and the
//! multiplier calculus between them.
//!
//! Transforms carry the continuum normalization: `forward` approximates
//! the integral transform with symbol e^{-i xi.x} via the h^n-weighted
//! rectangle rule, and `inverse` approximates (2pi)^{-n} * the dual
//! integral with the lattice measure (pi/L)^n. Raw DFT conventions are
//! never exposed, so discrete quantities converge to their continuum
//! counterparts as the grid is refined.

use crate::error::{Error, Result};
use crate::fft::NdFft;
use crate::grid::Grid;
use num_complex::Complex64;

/// Relative tolerance for the Hermitian-symmetry precondition of
/// `inverse_transform`.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// A real-valued function sampled on a [`Grid`], row-major axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("expected {} samples, got {}", grid.len(), values.len()),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
        }
    }

    /// Sample a closure of the physical coordinates on the grid.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64]) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let x = grid.coords(i);
                f(&x[..grid.dim()])
            })
            .collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Pointwise map, keeping the grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// self + c * other
    pub fn axpy(&self, c: f64, other: &RealField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + c * b)
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    /// h^n-weighted integral over the box.
    pub fn integrate(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().sum::<f64>()
    }

    /// L^p norm with the grid quadrature weights; `p = f64::INFINITY`
    /// gives the sup norm. NaN samples propagate to a NaN result.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_of_samples(&self.values, p, self.grid.cell_volume())
    }

    pub fn forward_transform(&self) -> SpectralField {
        let grid = &self.grid;
        let mut data: Vec<Complex64> = self
            .values
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        NdFft::new(grid.points_per_axis(), grid.dim()).forward(&mut data);
        // rectangle rule plus the phase shift from sampling on [-L, L)
        let h_n = grid.cell_volume();
        for (i, c) in data.iter_mut().enumerate() {
            let raw = grid.unravel(i);
            let parity: usize = raw[..grid.dim()].iter().sum();
            let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
            *c *= sign * h_n;
        }
        SpectralField {
            grid: grid.clone(),
            coefficients: data,
        }
    }
}

/// Fourier coefficients of a real field, indexed by the frequency lattice
/// in wrapped row-major order (matching `Grid::frequency`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coefficients: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: Grid, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != grid.len() {
            return Err(Error::InvalidParameter {
                name: "coefficients",
                reason: format!(
                    "expected {} coefficients, got {}",
                    grid.len(),
                    coefficients.len()
                ),
            });
        }
        Ok(Self { grid, coefficients })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            coefficients: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Coefficients from a closure of the lattice frequency vector.
    pub fn from_symbol(grid: &Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let coefficients = (0..grid.len())
            .map(|i| {
                let xi = grid.frequency(i);
                f(&xi[..grid.dim()])
            })
            .collect();
        Self {
            grid: grid.clone(),
            coefficients,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coefficients
    }

    /// Coefficient at the zero frequency (the integral of the field).
    pub fn mean_mode(&self) -> Complex64 {
        self.coefficients[0]
    }

    /// Largest deviation |c(-k) - conj(c(k))| over the lattice.
    pub fn hermitian_deviation(&self) -> f64 {
        let grid = &self.grid;
        let n = grid.points_per_axis();
        let mut max_dev = 0.0f64;
        for i in 0..self.coefficients.len() {
            let raw = grid.unravel(i);
            let mut mirrored = 0usize;
            for axis in 0..grid.dim() {
                let r = raw[axis];
                let m = if r == 0 { 0 } else { n - r };
                mirrored = mirrored * n + m;
            }
            let dev = (self.coefficients[mirrored] - self.coefficients[i].conj()).norm();
            max_dev = max_dev.max(dev);
        }
        max_dev
    }

    pub fn inverse_transform(&self) -> Result<RealField> {
        let scale = self
            .coefficients
            .iter()
            .fold(0.0f64, |a, c| a.max(c.norm()));
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOL * scale.max(1e-300) {
            return Err(Error::HermitianViolation {
                deviation: dev,
                tolerance: HERMITIAN_TOL * scale,
            });
        }
        Ok(self.inverse_transform_unchecked())
    }

    /// Inverse transform without the symmetry check; the imaginary parts
    /// are discarded. Internal hot paths that only apply real even
    /// symbols use this directly.
    pub(crate) fn inverse_transform_unchecked(&self) -> RealField {
        let grid = &self.grid;
        let mut data = self.coefficients.clone();
        for (i, c) in data.iter_mut().enumerate() {
            let raw = grid.unravel(i);
            let parity: usize = raw[..grid.dim()].iter().sum();
            if parity % 2 == 1 {
                *c = -*c;
            }
        }
        NdFft::new(grid.points_per_axis(), grid.dim()).inverse(&mut data);
        let scale = 1.0 / (2.0 * grid.half_width()).powi(grid.dim() as i32);
        RealField {
            grid: grid.clone(),
            values: data.iter().map(|c| c.re * scale).collect(),
        }
    }

    /// Coefficientwise product with a symbol evaluated on the lattice.
    /// Fails if the symbol returns NaN anywhere, naming the frequency.
    pub fn apply_multiplier(&self, m: impl Fn(&[f64]) -> Complex64) -> Result<SpectralField> {
        let grid = &self.grid;
        let mut coefficients = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            let xi = grid.frequency(i);
            let mv = m(&xi[..grid.dim()]);
            if mv.re.is_nan() || mv.im.is_nan() {
                return Err(Error::MultiplierNan {
                    xi: xi[..grid.dim()].to_vec(),
                });
            }
            coefficients.push(c * mv);
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coefficients,
        })
    }

    /// Product with a precomputed per-coefficient real symbol table.
    pub(crate) fn apply_table(&self, table: &[f64]) -> SpectralField {
        debug_assert_eq!(table.len(), self.coefficients.len());
        SpectralField {
            grid: self.grid.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(table)
                .map(|(c, &m)| c * m)
                .collect(),
        }
    }

    pub fn axpy(&self, c: Complex64, other: &SpectralField) -> Result<SpectralField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(SpectralField {
            grid: self.grid.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + c * b)
                .collect(),
        })
    }

    /// L^2 norm of the underlying real field via the Plancherel identity.
    pub fn l2_norm(&self) -> f64 {
        let grid = &self.grid;
        let measure =
            grid.freq_spacing().powi(grid.dim() as i32) / (2.0 * std::f64::consts::PI).powi(grid.dim() as i32);
        (self
            .coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            * measure)
            .sqrt()
    }

    /// Zero all coefficients whose per-axis signed index exceeds
    /// `fraction * N/2` on any axis (sharp spectral truncation).
    pub fn truncate(&mut self, fraction: f64) {
        let n = self.grid.points_per_axis();
        let keep = (fraction * n as f64 / 2.0).floor() as i64;
        for i in 0..self.coefficients.len() {
            let raw = self.grid.unravel(i);
            for axis in 0..self.grid.dim() {
                if self.grid.signed_index(raw[axis]).abs() > keep {
                    self.coefficients[i] = Complex64::new(0.0, 0.0);
                    break;
                }
            }
        }
    }
}

/// Apply `|xi|^s` (homogeneous) or `(1+|xi|^2)^{s/2}` (inhomogeneous) to a
/// real field. With s = 0 both variants are the identity: the homogeneous
/// symbol maps the zero frequency by 0^0 := 1.
pub fn fractional_derivative(f: &RealField, s: f64, homogeneous: bool) -> Result<RealField> {
    if !(s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("order must be >= 0, got {s}"),
        });
    }
    if s == 0.0 {
        return Ok(f.clone());
    }
    let hat = f.forward_transform();
    let out = hat.apply_multiplier(|xi| {
        let r2: f64 = xi.iter().map(|x| x * x).sum();
        let m = if homogeneous {
            r2.sqrt().powf(s)
        } else {
            (1.0 + r2).powf(s / 2.0)
        };
        Complex64::new(m, 0.0)
    })?;
    Ok(out.inverse_transform_unchecked())
}

pub(crate) fn lp_of_samples(values: &[f64], p: f64, cell_volume: f64) -> f64 {
    if values.iter().any(|v| v.is_nan()) {
        return f64::NAN;
    }
    if p == f64::INFINITY {
        values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    } else if p == 2.0 {
        (cell_volume * values.iter().map(|v| v * v).sum::<f64>()).sqrt()
    } else if p == 1.0 {
        cell_volume * values.iter().map(|v| v.abs()).sum::<f64>()
    } else {
        (cell_volume * values.iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p)
    }
}
