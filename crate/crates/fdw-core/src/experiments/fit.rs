//! Decay-slope fitting: least squares of log(norm) against log(1+t),
//! compared to the closed-form rate table. Predictions are never fitted;
//! fitting touches only measured data.

use crate::error::{Error, Result};
use crate::solver::TrajectoryRecord;

/// Closed-form decay-rate table. All slopes are exponents of (1+t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateKind {
    /// L^p norm of the linear flow: -(n/sigma)(1 - 1/p)
    LinearLp { p: f64 },
    /// ||D^{s1} S(t) g||_{L^2} envelope against the Bdot^{s2}_{gamma,2}
    /// data norm: -(s1 - n/2)/sigma + (s2 - n/gamma)/sigma
    Smoothing { s1: f64, s2: f64, gamma: f64 },
    /// L^2 norm of the small-data global solution: (n/sigma)(1/2 - 1/r)
    NonlinearL2 { r: f64 },
    /// Hdot^s norm: -s/sigma + (n/sigma)(1/2 - 1/r)
    NonlinearHs { s: f64, r: f64 },
    /// |x|^alpha-weighted L^2 norm: alpha/sigma + (n/sigma)(1/2 - 1/r)
    NonlinearWeighted { alpha: f64, r: f64 },
}

impl RateKind {
    pub fn predicted_slope(&self, n: usize, sigma: f64) -> f64 {
        let n = n as f64;
        match *self {
            RateKind::LinearLp { p } => -(n / sigma) * (1.0 - 1.0 / p),
            RateKind::Smoothing { s1, s2, gamma } => {
                -(s1 - n / 2.0) / sigma + (s2 - n / gamma) / sigma
            }
            RateKind::NonlinearL2 { r } => n / sigma * (0.5 - 1.0 / r),
            RateKind::NonlinearHs { s, r } => -s / sigma + n / sigma * (0.5 - 1.0 / r),
            RateKind::NonlinearWeighted { alpha, r } => {
                alpha / sigma + n / sigma * (0.5 - 1.0 / r)
            }
        }
    }
}

/// Norm column of a trajectory record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormColumn {
    L2,
    Linf,
    Hs,
    WeightedAlpha,
    Energy,
}

impl NormColumn {
    pub fn name(&self) -> &'static str {
        match self {
            NormColumn::L2 => "l2",
            NormColumn::Linf => "linf",
            NormColumn::Hs => "hs",
            NormColumn::WeightedAlpha => "weighted_alpha",
            NormColumn::Energy => "energy",
        }
    }
}

/// A fitted decay slope with its prediction and verdict.
#[derive(Debug, Clone)]
pub struct DecayFit {
    pub norm_kind: String,
    pub window: (f64, f64),
    pub fitted_slope: f64,
    pub stderr: f64,
    pub predicted_slope: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub samples: usize,
}

/// Fit log(value) = a + slope * log(1+t) on the samples inside the window.
pub fn fit_decay_series(
    times: &[f64],
    values: &[f64],
    window: (f64, f64),
    norm_kind: &str,
    predicted_slope: f64,
    tolerance: f64,
) -> Result<DecayFit> {
    if times.len() != values.len() {
        return Err(Error::Domain(
            "times and values must have equal length".into(),
        ));
    }
    if !(window.0 >= 5.0) {
        return Err(Error::Domain(format!(
            "fit window must start in the asymptotic regime t >= 5, got {}",
            window.0
        )));
    }
    let pts: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(&t, &v)| t >= window.0 && t <= window.1 && v.is_finite() && v > 0.0)
        .map(|(&t, &v)| ((1.0 + t).ln(), v.ln()))
        .collect();
    if pts.len() < 8 {
        return Err(Error::Domain(format!(
            "fit window [{}, {}] holds {} samples, need at least 8",
            window.0,
            window.1,
            pts.len()
        )));
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom <= 0.0 {
        return Err(Error::Domain("degenerate fit abscissae".into()));
    }
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;
    let ss_res: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - intercept - slope * p.0;
            r * r
        })
        .sum();
    let stderr = if pts.len() > 2 {
        (ss_res / (m - 2.0) / denom * m).sqrt()
    } else {
        f64::NAN
    };
    let pass = (slope - predicted_slope).abs() <= tolerance;
    Ok(DecayFit {
        norm_kind: norm_kind.to_string(),
        window,
        fitted_slope: slope,
        stderr,
        predicted_slope,
        tolerance,
        pass,
        samples: pts.len(),
    })
}

/// Fit a norm column of a recorded trajectory against a rate prediction.
pub fn fit_decay(
    record: &TrajectoryRecord,
    column: NormColumn,
    window: (f64, f64),
    rate: RateKind,
    tolerance: f64,
) -> Result<DecayFit> {
    let times = record.times();
    let values: Vec<f64> = record
        .rows
        .iter()
        .map(|r| match column {
            NormColumn::L2 => r.l2,
            NormColumn::Linf => r.linf,
            NormColumn::Hs => r.hs,
            NormColumn::WeightedAlpha => r.weighted_alpha,
            NormColumn::Energy => r.energy,
        })
        .collect();
    let predicted = rate.predicted_slope(record.grid.dim(), record.config.sigma);
    fit_decay_series(&times, &values, window, column.name(), predicted, tolerance)
}

/// `count` logarithmically spaced points on [a, b].
pub fn log_spaced(a: f64, b: f64, count: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && count >= 2);
    let la = a.ln();
    let lb = b.ln();
    (0..count)
        .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_table_values() {
        // the pinned arithmetic of the rate formulas
        assert!((RateKind::LinearLp { p: 2.0 }.predicted_slope(1, 2.0) + 0.25).abs() < 1e-15);
        assert!(
            (RateKind::LinearLp { p: f64::INFINITY }.predicted_slope(1, 2.0) + 0.5).abs() < 1e-15
        );
        assert!((RateKind::LinearLp { p: 2.0 }.predicted_slope(2, 2.0) + 0.5).abs() < 1e-15);
        // smoothing with (s1, s2, gamma) = (1, 0, 1), n = 1, sigma = 2
        let r = RateKind::Smoothing {
            s1: 1.0,
            s2: 0.0,
            gamma: 1.0,
        };
        assert!((r.predicted_slope(1, 2.0) + 0.75).abs() < 1e-15);
        // nonlinear rates at n=1, sigma=2, r=1
        assert!((RateKind::NonlinearL2 { r: 1.0 }.predicted_slope(1, 2.0) + 0.25).abs() < 1e-15);
        assert!(
            (RateKind::NonlinearHs { s: 1.0, r: 1.0 }.predicted_slope(1, 2.0) + 0.75).abs()
                < 1e-15
        );
        assert!(
            (RateKind::NonlinearWeighted { alpha: 1.0, r: 1.0 }.predicted_slope(1, 2.0) - 0.25)
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn exact_power_law_recovered() {
        let times = log_spaced(10.0, 200.0, 25);
        let values: Vec<f64> = times.iter().map(|t| 3.0 * (1.0 + t).powf(-0.75)).collect();
        let fit =
            fit_decay_series(&times, &values, (10.0, 200.0), "l2", -0.75, 0.01).unwrap();
        assert!(fit.pass);
        assert!((fit.fitted_slope + 0.75).abs() < 1e-12);
        assert!(fit.stderr < 1e-10);
    }

    #[test]
    fn rejects_thin_windows() {
        let times = vec![10.0, 20.0, 30.0];
        let values = vec![1.0, 0.5, 0.3];
        assert!(fit_decay_series(&times, &values, (10.0, 30.0), "l2", -1.0, 0.1).is_err());
        let times = log_spaced(10.0, 100.0, 20);
        let values = vec![1.0; 20];
        assert!(fit_decay_series(&times, &values, (1.0, 100.0), "l2", 0.0, 0.1).is_err());
    }
}
