//! Critical-exponent scan: classify solve() runs over a grid of
//! nonlinearity powers and bracket the global-existence boundary.

use crate::error::{Error, Result};
use crate::propagator::PairState;
use crate::solver::{detect_blowup, solve, Classification, Nonlinearity, SolverConfig};

#[derive(Debug, Clone)]
pub struct ScanCell {
    pub rho: f64,
    pub classification: Classification,
    pub final_time: f64,
    pub final_l2: f64,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub cells: Vec<ScanCell>,
    /// (largest blow-up rho, smallest global rho) when both sides appear
    pub bracket: Option<(f64, f64)>,
    pub predicted_threshold: f64,
    /// no global cell sits below a blow-up cell
    pub monotone: bool,
    pub inconclusive: bool,
}

/// Global-existence threshold: the weighted form 1 + 2 sigma/(2 alpha + n)
/// for alpha below n/2, the integrable-data form 1 + sigma/n otherwise.
pub fn predicted_threshold(n: usize, sigma: f64, alpha: Option<f64>) -> f64 {
    let n = n as f64;
    match alpha {
        Some(a) if a < n / 2.0 => 1.0 + 2.0 * sigma / (2.0 * a + n),
        _ => 1.0 + sigma / n,
    }
}

/// Run one solve per rho with N = +|u|^rho and data `amplitude * profile`,
/// classify each cell, and bracket the boundary. Cells fan out over
/// `jobs` worker threads; results are keyed by index so aggregation is
/// order-independent.
pub fn critical_exponent_scan(
    profile: &PairState,
    amplitude: f64,
    rho_grid: &[f64],
    base: &SolverConfig,
    alpha: Option<f64>,
    jobs: usize,
) -> Result<ScanResult> {
    if rho_grid.is_empty() {
        return Err(Error::Domain("empty rho grid".into()));
    }
    if !(amplitude > 0.0) {
        return Err(Error::InvalidParameter {
            name: "amplitude",
            reason: format!("must be positive, got {amplitude}"),
        });
    }
    let data = PairState::new(profile.u.scale(amplitude), profile.ut.scale(amplitude))
        .expect("profile grids match");

    let n_cells = rho_grid.len();
    let jobs = jobs.max(1).min(n_cells);
    let mut cells: Vec<Option<ScanCell>> = vec![None; n_cells];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            let data = &data;
            let rho_grid = &rho_grid;
            let base = &base;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut idx = worker;
                while idx < n_cells {
                    let rho = rho_grid[idx];
                    let cfg = SolverConfig {
                        nonlinearity: Nonlinearity::absolute(rho),
                        ..(*base).clone()
                    };
                    let record = solve(data, &cfg).expect("validated scan configuration");
                    let classification = detect_blowup(&record);
                    let last = record.rows.last().expect("records are never empty");
                    out.push((
                        idx,
                        ScanCell {
                            rho,
                            classification,
                            final_time: last.t,
                            final_l2: last.l2,
                        },
                    ));
                    idx += jobs;
                }
                out
            }));
        }
        for handle in handles {
            for (idx, cell) in handle.join().expect("scan worker panicked") {
                cells[idx] = Some(cell);
            }
        }
    });
    let cells: Vec<ScanCell> = cells.into_iter().map(|c| c.expect("cell computed")).collect();

    let last_blowup = cells
        .iter()
        .filter(|c| c.classification == Classification::Blowup)
        .map(|c| c.rho)
        .fold(f64::NEG_INFINITY, f64::max);
    let first_global = cells
        .iter()
        .filter(|c| c.classification == Classification::GlobalDecay)
        .map(|c| c.rho)
        .fold(f64::INFINITY, f64::min);
    let bracket = if last_blowup.is_finite() && first_global.is_finite() && last_blowup < first_global
    {
        Some((last_blowup, first_global))
    } else {
        None
    };
    let monotone = !cells.iter().any(|a| {
        a.classification == Classification::GlobalDecay
            && cells.iter().any(|b| {
                b.classification == Classification::Blowup && b.rho > a.rho
            })
    });
    let inconclusive = cells
        .iter()
        .all(|c| c.classification == Classification::Undecided);

    Ok(ScanResult {
        cells,
        bracket,
        predicted_threshold: predicted_threshold(
            data.grid().dim(),
            base.sigma,
            alpha,
        ),
        monotone,
        inconclusive,
    })
}

impl ScanResult {
    pub fn csv(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("rho,classification,final_time,final_l2\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                c.rho, c.classification, c.final_time, c.final_l2
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RealField;
    use crate::grid::Grid;

    #[test]
    fn threshold_formulas() {
        assert!((predicted_threshold(1, 2.0, None) - 3.0).abs() < 1e-15);
        assert!((predicted_threshold(2, 2.0, None) - 2.0).abs() < 1e-15);
        assert!((predicted_threshold(1, 2.0, Some(0.0)) - 5.0).abs() < 1e-15);
        assert!((predicted_threshold(1, 2.0, Some(1.0)) - 3.0).abs() < 1e-15);
        assert!((predicted_threshold(1, 1.0, None) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_sided_scan_brackets_boundary() {
        // subcritical rho = 2 blows up fast at this mass; rho = 5 decays
        let grid = Grid::new(1, 128, 25.0).unwrap();
        let profile = PairState::new(
            RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
            RealField::zeros(&grid),
        )
        .unwrap();
        let mut base = SolverConfig::new(2.0, Nonlinearity::absolute(2.0), 0.05, 60.0);
        base.snapshot_stride = 200;
        let scan =
            critical_exponent_scan(&profile, 1.0, &[2.0, 5.0], &base, None, 2).unwrap();
        assert_eq!(scan.cells[0].classification, Classification::Blowup);
        assert_eq!(scan.cells[1].classification, Classification::GlobalDecay);
        let (lo, hi) = scan.bracket.unwrap();
        assert_eq!(lo, 2.0);
        assert_eq!(hi, 5.0);
        assert!(scan.monotone);
        assert!(!scan.inconclusive);
        assert!((scan.predicted_threshold - 3.0).abs() < 1e-12);
    }
}
