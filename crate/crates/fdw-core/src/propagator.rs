//! The exact linear solution operators of the damped fractional wave
//! equation and the fractional heat kernel.
//!
//! With data (u0, u1), the solution of utt + ut + (-Lap)^{sigma/2} u = 0 is
//! u(t) = S_tilde(t) u0 + S(t) u1, all operators realized as Fourier
//! multipliers built from the dispersion symbols in [`crate::symbol`].

use crate::error::{Error, Result};
use crate::field::{RealField, SpectralField};
use crate::grid::Grid;
use crate::partition::psi_hat;
use crate::symbol::propagator_symbols;

/// The pair (u, du/dt) on a shared grid.
#[derive(Debug, Clone)]
pub struct PairState {
    pub u: RealField,
    pub ut: RealField,
}

impl PairState {
    pub fn new(u: RealField, ut: RealField) -> Result<Self> {
        if u.grid() != ut.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { u, ut })
    }

    pub fn grid(&self) -> &Grid {
        self.u.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.ut.is_finite()
    }

    pub fn to_spectral(&self) -> PairSpectral {
        PairSpectral {
            u: self.u.forward_transform(),
            ut: self.ut.forward_transform(),
        }
    }
}

/// Spectral-domain pair, the working representation inside the solver.
#[derive(Debug, Clone)]
pub struct PairSpectral {
    pub u: SpectralField,
    pub ut: SpectralField,
}

impl PairSpectral {
    pub fn to_real(&self) -> PairState {
        PairState {
            u: self.u.inverse_transform_unchecked(),
            ut: self.ut.inverse_transform_unchecked(),
        }
    }
}

/// Precomputed multiplier tables of the pair flow at a fixed (t, sigma).
///
/// Applying the tables advances a pair by exactly t; they are immutable
/// after construction, so a set built once per solver run can be shared.
#[derive(Debug, Clone)]
pub struct PairPropagator {
    grid: Grid,
    pub sigma: f64,
    pub t: f64,
    s: Vec<f64>,
    s_tilde: Vec<f64>,
    dt_s: Vec<f64>,
    dt_s_tilde: Vec<f64>,
}

impl PairPropagator {
    pub fn new(grid: &Grid, sigma: f64, t: f64) -> Self {
        let len = grid.len();
        let mut s = Vec::with_capacity(len);
        let mut s_tilde = Vec::with_capacity(len);
        let mut dt_s = Vec::with_capacity(len);
        let mut dt_s_tilde = Vec::with_capacity(len);
        for i in 0..len {
            let sym = propagator_symbols(grid.frequency_norm(i), sigma, t);
            s.push(sym.s);
            s_tilde.push(sym.s_tilde);
            dt_s.push(sym.dt_s);
            dt_s_tilde.push(sym.dt_s_tilde);
        }
        Self {
            grid: grid.clone(),
            sigma,
            t,
            s,
            s_tilde,
            dt_s,
            dt_s_tilde,
        }
    }

    pub fn apply(&self, state: &PairSpectral) -> PairSpectral {
        let u = state
            .u
            .apply_table(&self.s_tilde)
            .axpy(1.0.into(), &state.ut.apply_table(&self.s))
            .expect("propagator grids match");
        let ut = state
            .u
            .apply_table(&self.dt_s_tilde)
            .axpy(1.0.into(), &state.ut.apply_table(&self.dt_s))
            .expect("propagator grids match");
        PairSpectral { u, ut }
    }

    /// S(t) alone on a single spectral field (the Duhamel weight).
    pub fn apply_s_table(&self, f: &SpectralField) -> SpectralField {
        f.apply_table(&self.s)
    }

    /// dS/dt(t) alone on a single spectral field.
    pub fn apply_dt_s_table(&self, f: &SpectralField) -> SpectralField {
        f.apply_table(&self.dt_s)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
}

/// u(t) from data (0, g): the multiplier e^{-t/2} L(t, xi) applied to g.
pub fn apply_s(t: f64, g: &RealField, sigma: f64) -> Result<RealField> {
    check_time_sigma(t, sigma)?;
    let hat = g.forward_transform();
    let prop = PairPropagator::new(g.grid(), sigma, t);
    Ok(prop.apply_s_table(&hat).inverse_transform_unchecked())
}

/// u(t) from data (f, 0): the multiplier e^{-t/2}(dL/dt + L/2) applied to f.
pub fn apply_s_tilde(t: f64, f: &RealField, sigma: f64) -> Result<RealField> {
    check_time_sigma(t, sigma)?;
    let hat = f.forward_transform();
    let prop = PairPropagator::new(f.grid(), sigma, t);
    Ok(hat.apply_table(&prop.s_tilde).inverse_transform_unchecked())
}

/// Advance the full pair (u, du/dt) by time t.
pub fn apply_pair_propagator(t: f64, state: &PairState, sigma: f64) -> Result<PairState> {
    check_time_sigma(t, sigma)?;
    let prop = PairPropagator::new(state.grid(), sigma, t);
    Ok(prop.apply(&state.to_spectral()).to_real())
}

fn check_time_sigma(t: f64, sigma: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("time must be finite and >= 0, got {t}"),
        });
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("sigma must be positive, got {sigma}"),
        });
    }
    Ok(())
}

/// Unit-mass kernel of the fractional heat semigroup, Fourier symbol
/// e^{-t |xi|^sigma}.
pub fn heat_kernel(t: f64, sigma: f64, grid: &Grid) -> Result<RealField> {
    check_time_sigma(t, sigma)?;
    if t <= 0.0 {
        return Err(Error::Domain(format!(
            "heat kernel requires t > 0, got {t}"
        )));
    }
    let hat = SpectralField::from_symbol(grid, |xi| {
        let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        ((-t * r.powf(sigma)).exp()).into()
    });
    Ok(hat.inverse_transform_unchecked())
}

/// Apply the fractional heat semigroup to g.
pub fn apply_heat(t: f64, g: &RealField, sigma: f64) -> Result<RealField> {
    check_time_sigma(t, sigma)?;
    if t <= 0.0 {
        return Err(Error::Domain(format!("heat flow requires t > 0, got {t}")));
    }
    let hat = g.forward_transform();
    let out = hat
        .apply_multiplier(|xi| {
            let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
            ((-t * r.powf(sigma)).exp()).into()
        })
        .expect("heat symbol is finite");
    Ok(out.inverse_transform_unchecked())
}

/// Real-space kernel of the low-frequency part of S(t): the inverse
/// transform of e^{-t/2} L(t, xi) psi_hat(2^{2/sigma} xi). The cutoff lives
/// on |xi| < 2^{-2/sigma}; the grid must place several lattice frequencies
/// inside it.
pub fn low_freq_kernel(t: f64, sigma: f64, grid: &Grid) -> Result<RealField> {
    check_time_sigma(t, sigma)?;
    if t <= 0.0 {
        return Err(Error::Domain(format!(
            "low-frequency kernel requires t > 0, got {t}"
        )));
    }
    let cutoff = 2f64.powf(-2.0 / sigma);
    if grid.freq_spacing() * 4.0 > cutoff {
        return Err(Error::Config(format!(
            "frequency spacing {:.3e} does not resolve the cutoff radius {:.3e}; enlarge the box",
            grid.freq_spacing(),
            cutoff
        )));
    }
    let scale = 2f64.powf(2.0 / sigma);
    let hat = SpectralField::from_symbol(grid, |xi| {
        let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        let window = psi_hat(scale * r);
        if window == 0.0 {
            return 0.0.into();
        }
        (propagator_symbols(r, sigma, t).s * window).into()
    });
    Ok(hat.inverse_transform_unchecked())
}

/// Linear energy E = (1/2)||ut||^2 + (1/2)||(-Lap)^{sigma/4} u||^2, the
/// quantity dissipated by the damping.
pub fn energy(state: &PairState, sigma: f64) -> f64 {
    let kinetic = state.ut.lp_norm(2.0);
    let hat = state.u.forward_transform();
    let graded = hat
        .apply_multiplier(|xi| {
            let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
            r.powf(sigma / 2.0).into()
        })
        .expect("fractional symbol is finite");
    let potential = graded.l2_norm();
    0.5 * kinetic * kinetic + 0.5 * potential * potential
}
