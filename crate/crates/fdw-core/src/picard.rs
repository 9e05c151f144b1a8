//! Picard iteration of the mild-solution map
//! Phi(u)(t) = E(t) data + int_0^t Spair(t - tau) N(u(tau)) dtau,
//! the constructive form of the local contraction argument.
//!
//! Iterates live on the coarse quadrature grid t_j = j * Delta with
//! Delta = snapshot_stride * dt; the Duhamel integral is a composite
//! midpoint rule whose midpoint values of u come from averaging adjacent
//! nodes. Contraction factors are distances of consecutive iterates in the
//! time-weighted X norm.

use crate::error::{Error, Result};
use crate::norms::{sobolev_norm, weighted_norm, Weight, x_norm_at};
use crate::propagator::{PairPropagator, PairSpectral, PairState};
use crate::solver::SolverConfig;

/// Parameters of the X^{s,alpha,r}(T) norm measuring the iteration.
#[derive(Debug, Clone, Copy)]
pub struct XNormParams {
    pub s: f64,
    pub alpha: f64,
    pub r: f64,
}

impl Default for XNormParams {
    fn default() -> Self {
        Self {
            s: 1.0,
            alpha: 1.0,
            r: 1.0,
        }
    }
}

/// One Picard iterate sampled on the quadrature nodes.
#[derive(Debug, Clone)]
pub struct PicardIterate {
    pub times: Vec<f64>,
    pub states: Vec<PairSpectral>,
}

impl PicardIterate {
    /// sup-in-time L^2 distance to another iterate.
    pub fn sup_l2_distance(&self, other: &PicardIterate) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| {
                a.u.axpy((-1.0).into(), &b.u)
                    .expect("iterate grids match")
                    .l2_norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn final_state(&self) -> PairState {
        self.states.last().expect("nonempty iterate").to_real()
    }
}

#[derive(Debug, Clone)]
pub struct PicardResult {
    pub iterates: Vec<PicardIterate>,
    pub contraction_factors: Vec<f64>,
    /// set when the factor was >= 1 for three consecutive iterations
    pub non_contraction: bool,
}

/// Distance of two iterates in the weighted X norm over the time nodes.
fn x_distance(a: &PicardIterate, b: &PicardIterate, cfg: &SolverConfig, xp: &XNormParams) -> f64 {
    let mut sup = 0.0f64;
    for (j, t) in a.times.iter().enumerate() {
        let diff =
            a.states[j].u.axpy((-1.0).into(), &b.states[j].u).expect("iterate grids match");
        let real = diff.inverse_transform_unchecked();
        let l2 = real.lp_norm(2.0);
        let hs = sobolev_norm(&real, xp.s, true).unwrap_or(f64::NAN);
        let wa = weighted_norm(&real, xp.alpha, Weight::Plain).unwrap_or(f64::NAN);
        let n = real.grid().dim();
        sup = sup.max(x_norm_at(*t, l2, hs, wa, n, cfg.sigma, xp.s, xp.alpha, xp.r));
    }
    sup
}

/// Run `max_iter` Picard iterations on [0, T].
///
/// The zeroth iterate is the linear solution; each successor adds the
/// midpoint-quadrature Duhamel term of the predecessor's nonlinearity.
pub fn picard_iterate(
    data: &PairState,
    t_max: f64,
    cfg: &SolverConfig,
    max_iter: usize,
    xp: &XNormParams,
) -> Result<PicardResult> {
    cfg.validate()?;
    if !(t_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "t_max",
            reason: format!("horizon must be positive, got {t_max}"),
        });
    }
    if !data.is_finite() {
        return Err(Error::Domain("data contains NaN/Inf".into()));
    }
    let grid = data.grid().clone();
    let delta = cfg.snapshot_stride as f64 * cfg.dt;
    let nodes = (t_max / delta).round().max(1.0) as usize;
    let delta = t_max / nodes as f64;
    let times: Vec<f64> = (0..=nodes).map(|j| j as f64 * delta).collect();

    // linear flow to every node, and the source propagators at the
    // half-offset lags (j - i - 1/2) * delta
    let data_hat = data.to_spectral();
    let linear: Vec<PairSpectral> = times
        .iter()
        .map(|&t| PairPropagator::new(&grid, cfg.sigma, t).apply(&data_hat))
        .collect();
    let lags: Vec<PairPropagator> = (0..nodes)
        .map(|m| PairPropagator::new(&grid, cfg.sigma, (m as f64 + 0.5) * delta))
        .collect();

    let mut iterates = vec![PicardIterate {
        times: times.clone(),
        states: linear.clone(),
    }];
    let mut contraction_factors = Vec::new();

    for _ in 0..max_iter {
        let prev = iterates.last().expect("seeded with the linear iterate");
        // dealiased N(u) at the interval midpoints of the previous iterate
        let n_mid: Vec<crate::field::SpectralField> = (0..nodes)
            .map(|i| {
                let avg = prev.states[i]
                    .u
                    .axpy(1.0.into(), &prev.states[i + 1].u)
                    .expect("iterate grids match");
                let mid_real = avg.inverse_transform_unchecked().scale(0.5);
                let mut hat = cfg.nonlinearity.eval_field(&mid_real).forward_transform();
                if cfg.dealias < 1.0 {
                    hat.truncate(cfg.dealias);
                }
                hat
            })
            .collect();

        let mut states = Vec::with_capacity(nodes + 1);
        states.push(linear[0].clone());
        for j in 1..=nodes {
            let mut u = linear[j].u.clone();
            let mut ut = linear[j].ut.clone();
            for i in 0..j {
                let lag = &lags[j - i - 1];
                u = u
                    .axpy(delta.into(), &lag.apply_s_table(&n_mid[i]))
                    .expect("iterate grids match");
                ut = ut
                    .axpy(delta.into(), &lag.apply_dt_s_table(&n_mid[i]))
                    .expect("iterate grids match");
            }
            states.push(PairSpectral { u, ut });
        }
        iterates.push(PicardIterate {
            times: times.clone(),
            states,
        });

        let k = iterates.len();
        if k >= 3 {
            let d_new = x_distance(&iterates[k - 1], &iterates[k - 2], cfg, xp);
            let d_old = x_distance(&iterates[k - 2], &iterates[k - 3], cfg, xp);
            contraction_factors.push(if d_old > 0.0 { d_new / d_old } else { 0.0 });
        }
    }

    let non_contraction = contraction_factors
        .windows(3)
        .any(|w| w.iter().all(|&f| f >= 1.0));
    Ok(PicardResult {
        iterates,
        contraction_factors,
        non_contraction,
    })
}
