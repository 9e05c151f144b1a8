//! Smooth dyadic partition of unity on the frequency lattice.
//!
//! The profiles are built from the C-infinity transition
//! eta(r) = e^{-1/r} / (e^{-1/r} + e^{-1/(1-r)}) on [0,1]:
//!
//!   psi_hat(xi) = 1 - eta(2(|xi| - 1/2)),   identically 1 on |xi| <= 1/2,
//!                                           identically 0 on |xi| >= 1;
//!   phi_hat(xi) = psi_hat(xi/2) - psi_hat(xi), supported on 1/2 <= |xi| <= 2.
//!
//! Because phi_hat is *computed* as that difference and dyadic rescaling of
//! the argument is exact in binary floating point, shell sums telescope to
//! pure psi_hat values and the partition identities hold to roundoff.

use crate::grid::Grid;

fn eta(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else if r >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / r).exp();
        let b = (-1.0 / (1.0 - r)).exp();
        a / (a + b)
    }
}

/// Low-frequency cutoff profile as a function of |xi|.
pub fn psi_hat(xi_norm: f64) -> f64 {
    1.0 - eta(2.0 * (xi_norm - 0.5))
}

/// Annulus profile as a function of |xi|.
pub fn phi_hat(xi_norm: f64) -> f64 {
    psi_hat(xi_norm / 2.0) - psi_hat(xi_norm)
}

/// Dyadic Littlewood-Paley partition attached to a grid, with the range of
/// shells the grid can resolve.
#[derive(Debug, Clone)]
pub struct DyadicPartition {
    j_min: i32,
    j_max: i32,
}

impl DyadicPartition {
    pub fn new(grid: &Grid) -> Self {
        let min_freq = grid.freq_spacing();
        let max_freq = grid.band_edge() * (grid.dim() as f64).sqrt();
        // lowest shell must vanish on the smallest nonzero frequency,
        // highest must cover the corner of the lattice
        let j_min = min_freq.log2().floor() as i32;
        let j_max = max_freq.log2().ceil() as i32;
        Self { j_min, j_max }
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// Shell indices for the homogeneous decomposition.
    pub fn homogeneous_shells(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    /// Shell indices for the inhomogeneous decomposition (j >= 0).
    pub fn inhomogeneous_shells(&self) -> impl Iterator<Item = i32> {
        0..=self.j_max
    }

    /// phi_hat(2^{-j} xi) evaluated exactly via dyadic argument scaling.
    pub fn shell_profile(&self, j: i32, xi_norm: f64) -> f64 {
        phi_hat(xi_norm * 2f64.powi(-j))
    }
}
