//! Spectral laboratory for the fractional damped wave equation
//! utt + ut + (-Lap)^{sigma/2} u = N(u) on a periodic box approximating
//! R^n: exact linear propagators, Littlewood-Paley/Besov norms, an
//! exponential-midpoint semilinear solver with blow-up detection, and the
//! decay-rate experiment harness.

pub mod corpus;
pub mod error;
pub mod experiments;
mod fft;
pub mod field;
pub mod grid;
pub mod norms;
pub mod partition;
pub mod picard;
pub mod propagator;
pub mod solver;
pub mod symbol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use field::{fractional_derivative, RealField, SpectralField};
pub use grid::Grid;
pub use propagator::{
    apply_heat, apply_pair_propagator, apply_s, apply_s_tilde, energy, heat_kernel,
    low_freq_kernel, PairPropagator, PairSpectral, PairState,
};
