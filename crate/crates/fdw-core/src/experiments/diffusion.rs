//! Diffusion-phenomenon measurement: the damped-wave flow approaches
//! M * (unit-mass fractional heat kernel) faster than either decays, so
//! the scaled error e(t) = t^{(n/sigma)(1-1/p)} ||u(t) - M G(t)||_{L^p}
//! must fall off. "Vanishes in the limit" is operationalized as: e is
//! non-increasing for t >= 10 and e at the last time is below half its
//! value at the first.

use crate::error::{Error, Result};
use crate::field::RealField;
use crate::propagator::{apply_pair_propagator, heat_kernel, PairState};
use crate::solver::TrajectoryRecord;

#[derive(Debug, Clone)]
pub struct DiffusionReport {
    pub p: f64,
    pub times: Vec<f64>,
    pub scaled_error: Vec<f64>,
    /// data mass plus accumulated source mass
    pub mass: f64,
    /// e non-increasing on t >= 10
    pub decreasing: bool,
    /// e(t_last) < e(t_first) / 2
    pub halved: bool,
    pub wraparound_warning: bool,
}

impl DiffusionReport {
    pub fn pass(&self) -> bool {
        self.decreasing && self.halved
    }
}

fn scaled_error_at(
    u: &RealField,
    mass: f64,
    t: f64,
    sigma: f64,
    p: f64,
) -> Result<(f64, bool)> {
    let grid = u.grid();
    let n = grid.dim() as f64;
    let kernel = heat_kernel(t, sigma, grid)?;
    let diff = u.axpy(-mass, &kernel)?;
    let err = diff.lp_norm(p);
    let scaled = t.powf(n / sigma * (1.0 - 1.0 / p)) * err;
    // wrap-around check: compare the boundary amplitude to the peak
    let peak = u.lp_norm(f64::INFINITY);
    let boundary = boundary_max(u);
    Ok((scaled, boundary > 1e-8 * peak))
}

fn boundary_max(u: &RealField) -> f64 {
    let grid = u.grid();
    let n = grid.points_per_axis();
    let mut max = 0.0f64;
    for i in 0..grid.len() {
        let raw = grid.unravel(i);
        if (0..grid.dim()).any(|a| raw[a] == 0) {
            max = max.max(u.values()[i].abs());
        }
        let _ = n;
    }
    max
}

fn assemble(
    p: f64,
    mass: f64,
    times: Vec<f64>,
    scaled: Vec<f64>,
    warn: bool,
) -> DiffusionReport {
    let tail: Vec<(f64, f64)> = times
        .iter()
        .zip(&scaled)
        .filter(|(&t, _)| t >= 10.0)
        .map(|(&t, &e)| (t, e))
        .collect();
    let decreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9));
    let halved = match (tail.first(), tail.last()) {
        (Some(&(_, first)), Some(&(_, last))) if tail.len() >= 2 => last < 0.5 * first,
        _ => false,
    };
    DiffusionReport {
        p,
        times,
        scaled_error: scaled,
        mass,
        decreasing,
        halved,
        wraparound_warning: warn,
    }
}

/// Diffusion phenomenon of the free flow from (u0, u1).
pub fn diffusion_linear(
    data: &PairState,
    sigma: f64,
    p: f64,
    times: &[f64],
) -> Result<DiffusionReport> {
    if times.len() < 2 {
        return Err(Error::Domain("need at least two sample times".into()));
    }
    let mass = data.u.integrate() + data.ut.integrate();
    let mut scaled = Vec::with_capacity(times.len());
    let mut warn = false;
    for &t in times {
        let u = apply_pair_propagator(t, data, sigma)?.u;
        let (e, w) = scaled_error_at(&u, mass, t, sigma, p)?;
        scaled.push(e);
        warn |= w;
    }
    Ok(assemble(p, mass, times.to_vec(), scaled, warn))
}

/// Diffusion phenomenon of a recorded semilinear run; u(t) comes from the
/// stored snapshots and M includes the accumulated source mass.
pub fn diffusion_record(record: &TrajectoryRecord, p: f64, times: &[f64]) -> Result<DiffusionReport> {
    let data_mass = match record.snapshots.first() {
        Some((t0, s0)) if *t0 == 0.0 => s0.u.integrate() + s0.ut.integrate(),
        _ => return Err(Error::Domain("record lacks the t = 0 snapshot".into())),
    };
    let mass = data_mass + record.source_mass.last().copied().unwrap_or(0.0);
    let sigma = record.config.sigma;
    let mut used_times = Vec::new();
    let mut scaled = Vec::new();
    let mut warn = false;
    for &t in times {
        let Some((ts, snap)) = record
            .snapshots
            .iter()
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
        else {
            continue;
        };
        if (ts - t).abs() > record.config.dt * record.config.snapshot_stride as f64 {
            continue;
        }
        let (e, w) = scaled_error_at(&snap.u, mass, *ts, sigma, p)?;
        used_times.push(*ts);
        scaled.push(e);
        warn |= w;
    }
    if used_times.len() < 2 {
        return Err(Error::Domain(
            "record snapshots do not cover the requested times".into(),
        ));
    }
    Ok(assemble(p, mass, used_times, scaled, warn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RealField;
    use crate::grid::Grid;
    use crate::propagator::apply_heat;

    #[test]
    fn heat_evolved_kernel_profile_has_tiny_error() {
        // data already equal to M G(t0) evolved under the pure heat flow
        // stays on the heat manifold: e is discretization-level only
        let grid = Grid::new(1, 1024, 120.0).unwrap();
        let t0 = 4.0;
        let m = 2.3;
        let g0 = heat_kernel(t0, 2.0, &grid).unwrap().scale(m);
        for t in [10.0, 20.0] {
            let u = apply_heat(t - t0, &g0, 2.0).unwrap();
            let kernel = heat_kernel(t, 2.0, &grid).unwrap();
            let diff = u.axpy(-m, &kernel).unwrap().lp_norm(2.0);
            assert!(diff < 1e-10, "t={t}: {diff}");
        }
    }

    #[test]
    fn linear_flow_approaches_heat_profile() {
        let grid = Grid::new(1, 2048, 200.0).unwrap();
        let data = PairState::new(
            RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
            RealField::from_fn(&grid, |x| 0.5 * (-x[0] * x[0] / 2.0).exp()),
        )
        .unwrap();
        let times = [10.0, 20.0, 40.0, 80.0, 140.0, 200.0];
        let report = diffusion_linear(&data, 2.0, 2.0, &times).unwrap();
        assert!(report.decreasing, "e = {:?}", report.scaled_error);
        assert!(report.halved, "e = {:?}", report.scaled_error);
        assert!(!report.wraparound_warning);
        assert!(report.pass());
    }

    #[test]
    fn mean_zero_data_decays_faster_than_the_rate() {
        // M = 0: the scaled L2 norm itself must fall
        let grid = Grid::new(1, 2048, 200.0).unwrap();
        let data = PairState::new(
            RealField::from_fn(&grid, |x| x[0] * (-x[0] * x[0]).exp()),
            RealField::zeros(&grid),
        )
        .unwrap();
        let mass = data.u.integrate() + data.ut.integrate();
        assert!(mass.abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for t in [10.0, 40.0, 160.0] {
            let u = apply_pair_propagator(t, &data, 2.0).unwrap().u;
            let scaled = t.powf(0.25) * u.lp_norm(2.0);
            assert!(scaled < prev);
            prev = scaled;
        }
    }

    #[test]
    fn translation_equivariance_of_scaled_error() {
        // shifting the data and the comparison kernel by the same lattice
        // offset leaves e(t) unchanged: both flows commute with shifts
        let grid = Grid::new(1, 1024, 150.0).unwrap();
        let shift_cells = 24usize;
        let shift = shift_cells as f64 * grid.spacing();
        let centered = PairState::new(
            RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
            RealField::zeros(&grid),
        )
        .unwrap();
        let moved = PairState::new(
            RealField::from_fn(&grid, move |x| (-(x[0] - shift) * (x[0] - shift)).exp()),
            RealField::zeros(&grid),
        )
        .unwrap();
        let mass = centered.u.integrate();
        for t in [10.0f64, 30.0, 90.0] {
            let rate = t.powf(0.25);
            let u_c = apply_pair_propagator(t, &centered, 2.0).unwrap().u;
            let kernel = heat_kernel(t, 2.0, &grid).unwrap();
            let e_c = rate * u_c.axpy(-mass, &kernel).unwrap().lp_norm(2.0);
            let u_m = apply_pair_propagator(t, &moved, 2.0).unwrap().u;
            // kernel recentred at the data by the same cyclic shift
            let shifted_kernel = RealField::new(
                grid.clone(),
                (0..grid.len())
                    .map(|i| kernel.values()[(i + grid.len() - shift_cells) % grid.len()])
                    .collect(),
            )
            .unwrap();
            let e_m = rate * u_m.axpy(-mass, &shifted_kernel).unwrap().lp_norm(2.0);
            assert!((e_c - e_m).abs() <= 1e-8 * e_c.max(1e-8), "t={t}: {e_c} vs {e_m}");
        }
    }
}
