//! Sampled Gagliardo-Nirenberg interpolation checks on homogeneous Besov
//! norms: ||f||_{s0,p0,q0} <= C ||f||_{s1,p1,q1}^theta ||f||_{s2,p2,q2}^{1-theta}
//! under the scaling relation
//! s0 - n/p0 = theta (s1 - n/p1) + (1-theta)(s2 - n/p2).
//! The empirical constant is the largest observed ratio; the report is a
//! sanity table, not a proof.

use crate::error::{Error, Result};
use crate::field::RealField;
use crate::norms::besov_norm_lp;

#[derive(Debug, Clone, Copy)]
pub struct GnTuple {
    pub s0: f64,
    pub p0: f64,
    pub q0: f64,
    pub s1: f64,
    pub p1: f64,
    pub q1: f64,
    pub s2: f64,
    pub p2: f64,
    pub q2: f64,
    pub theta: f64,
}

impl GnTuple {
    /// Residual of the scaling relation in dimension n.
    pub fn scaling_residual(&self, n: usize) -> f64 {
        let n = n as f64;
        let lhs = self.s0 - n / self.p0;
        let rhs = self.theta * (self.s1 - n / self.p1)
            + (1.0 - self.theta) * (self.s2 - n / self.p2);
        lhs - rhs
    }

    /// Sobolev-style tuple with all Lebesgue exponents 2.
    pub fn sobolev(s0: f64, s1: f64, s2: f64, theta: f64) -> Self {
        Self {
            s0,
            p0: 2.0,
            q0: 2.0,
            s1,
            p1: 2.0,
            q1: 2.0,
            s2,
            p2: 2.0,
            q2: 2.0,
            theta,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GnRow {
    pub function: String,
    pub tuple_index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct GnReport {
    pub tuples: Vec<GnTuple>,
    pub rows: Vec<GnRow>,
    /// max observed ratio per tuple
    pub empirical_c: Vec<f64>,
    /// ratios exceeding the reported constant (NaN/Inf rows)
    pub violations: usize,
}

pub fn gn_inequality_sample(
    corpus: &[(String, RealField)],
    tuples: &[GnTuple],
) -> Result<GnReport> {
    for (i, t) in tuples.iter().enumerate() {
        if !(0.0..=1.0).contains(&t.theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: format!("tuple {i}: interpolation weight {} outside [0,1]", t.theta),
            });
        }
        let n = corpus
            .first()
            .map(|(_, f)| f.grid().dim())
            .unwrap_or(1);
        let residual = t.scaling_residual(n);
        if residual.abs() > 1e-10 {
            return Err(Error::InvalidParameter {
                name: "tuple",
                reason: format!("tuple {i} violates the scaling relation by {residual:.3e}"),
            });
        }
        if t.s0 > t.theta * t.s1 + (1.0 - t.theta) * t.s2 + 1e-12 {
            return Err(Error::InvalidParameter {
                name: "tuple",
                reason: format!("tuple {i} has s0 above the interpolation segment"),
            });
        }
    }

    let mut rows = Vec::new();
    let mut empirical_c = vec![0.0f64; tuples.len()];
    for (idx, tuple) in tuples.iter().enumerate() {
        for (name, f) in corpus {
            let lhs = besov_norm_lp(f, tuple.s0, tuple.p0, tuple.q0, true)?.value;
            let a = besov_norm_lp(f, tuple.s1, tuple.p1, tuple.q1, true)?.value;
            let b = besov_norm_lp(f, tuple.s2, tuple.p2, tuple.q2, true)?.value;
            let rhs = a.powf(tuple.theta) * b.powf(1.0 - tuple.theta);
            let ratio = lhs / rhs;
            empirical_c[idx] = empirical_c[idx].max(ratio);
            rows.push(GnRow {
                function: name.clone(),
                tuple_index: idx,
                lhs,
                rhs,
                ratio,
            });
        }
    }
    let violations = rows
        .iter()
        .filter(|r| !r.ratio.is_finite() || r.ratio > empirical_c[r.tuple_index] * (1.0 + 1e-12))
        .count();
    Ok(GnReport {
        tuples: tuples.to_vec(),
        rows,
        empirical_c,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::standard_corpus;
    use crate::grid::Grid;

    fn sampled_corpus() -> Vec<(String, RealField)> {
        let grid = Grid::new(1, 256, 20.0).unwrap();
        standard_corpus()
            .iter()
            .map(|e| (e.name.to_string(), e.sample(&grid)))
            .collect()
    }

    #[test]
    fn endpoint_theta_is_identity() {
        let corpus = sampled_corpus();
        let tuples = [
            GnTuple::sobolev(1.0, 1.0, 0.0, 1.0),
            GnTuple::sobolev(0.0, 1.0, 0.0, 0.0),
        ];
        let report = gn_inequality_sample(&corpus, &tuples).unwrap();
        for row in &report.rows {
            assert!((row.ratio - 1.0).abs() < 1e-12, "{row:?}");
        }
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn midpoint_interpolation_constant_is_modest() {
        // with every Lebesgue exponent 2 the interpolation is sequence
        // Hoelder on the shell weights, so the true constant is exactly 1
        // and samples approach it from below
        let corpus = sampled_corpus();
        let tuples = [GnTuple::sobolev(0.5, 1.0, 0.0, 0.5)];
        let report = gn_inequality_sample(&corpus, &tuples).unwrap();
        assert_eq!(report.violations, 0);
        let c = report.empirical_c[0];
        assert!(
            (0.5..=1.0 + 1e-9).contains(&c),
            "empirical constant {c}"
        );
    }

    #[test]
    fn rejects_inadmissible_tuples() {
        let corpus = sampled_corpus();
        // wrong scaling relation
        let bad = GnTuple {
            s0: 0.5,
            p0: 2.0,
            q0: 2.0,
            s1: 1.0,
            p1: 2.0,
            q1: 2.0,
            s2: 0.0,
            p2: 4.0,
            q2: 2.0,
            theta: 0.5,
        };
        assert!(gn_inequality_sample(&corpus, &[bad]).is_err());
        // s0 above the segment
        let above = GnTuple::sobolev(0.9, 1.0, 0.0, 0.5);
        assert!(gn_inequality_sample(&corpus, &[above]).is_err());
    }
}
