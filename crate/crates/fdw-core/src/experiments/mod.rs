//! Verification experiments: each one measures a decay rate, bound ratio
//! or classification and compares it against the closed-form prediction.

mod diffusion;
mod fit;
mod gn;
mod kernel;
mod scan;
mod smoothing;

pub use diffusion::{diffusion_linear, diffusion_record, DiffusionReport};
pub use fit::{fit_decay, fit_decay_series, log_spaced, DecayFit, NormColumn, RateKind};
pub use gn::{gn_inequality_sample, GnReport, GnRow, GnTuple};
pub use kernel::{kernel_bound_check, KernelBoundReport, KernelBranch};
pub use scan::{critical_exponent_scan, predicted_threshold, ScanCell, ScanResult};
pub use smoothing::{smoothing_estimate_check, SmoothingReport};

use std::fmt::Write as _;

/// One pass/fail row of an experiment report.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub experiment: String,
    pub item: String,
    pub predicted: f64,
    pub measured: f64,
    /// textual constraint the measurement was held to
    pub constraint: String,
    pub pass: bool,
}

impl Verdict {
    pub fn new(
        experiment: &str,
        item: &str,
        predicted: f64,
        measured: f64,
        constraint: String,
        pass: bool,
    ) -> Self {
        Self {
            experiment: experiment.to_string(),
            item: item.to_string(),
            predicted,
            measured,
            constraint,
            pass,
        }
    }
}

/// Machine-readable verdict table.
pub fn verdicts_csv(rows: &[Verdict]) -> String {
    let mut out = String::from("experiment,item,predicted,measured,constraint,verdict\n");
    for v in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            v.experiment,
            v.item,
            v.predicted,
            v.measured,
            v.constraint.replace(',', ";"),
            if v.pass { "pass" } else { "fail" }
        );
    }
    out
}

/// Human-readable summary.
pub fn verdicts_text(rows: &[Verdict]) -> String {
    let mut out = String::new();
    for v in rows {
        let _ = writeln!(
            out,
            "[{}] {} / {}: predicted {:+.6}, measured {:+.6} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.experiment,
            v.item,
            v.predicted,
            v.measured,
            v.constraint
        );
    }
    out
}
