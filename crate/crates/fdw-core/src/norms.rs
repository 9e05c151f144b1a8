//! Function-space norms: Lebesgue, homogeneous/inhomogeneous Sobolev,
//! weighted L^2, Littlewood-Paley and difference-quotient Besov norms, and
//! the time-weighted solution norms built on the dilation
//! D(t)u = <t>^{n/(r sigma)} u(<t>^{1/sigma} x).
//!
//! Homogeneous norms are insensitive to constants on a periodic box only
//! after fixing the mode-zero convention: the mean is subtracted before
//! every homogeneous Besov evaluation.

use crate::error::{Error, Result};
use crate::field::{lp_of_samples, RealField};
use crate::partition::{psi_hat, DyadicPartition};
use num_complex::Complex64;

/// Pointwise spatial weight for weighted Lebesgue norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// |x|^alpha
    Plain,
    /// (1 + |x|^2)^{alpha/2}
    Japanese,
}

/// ||(-Lap)^{s/2} f||_{L^2} (homogeneous) or ||(1-Lap)^{s/2} f||_{L^2}.
pub fn sobolev_norm(f: &RealField, s: f64, homogeneous: bool) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("order must be >= 0, got {s}"),
        });
    }
    let hat = f.forward_transform();
    let graded = hat.apply_multiplier(|xi| {
        let r2: f64 = xi.iter().map(|x| x * x).sum();
        let m = if homogeneous {
            if s == 0.0 {
                1.0
            } else {
                r2.sqrt().powf(s)
            }
        } else {
            (1.0 + r2).powf(s / 2.0)
        };
        Complex64::new(m, 0.0)
    })?;
    Ok(graded.l2_norm())
}

/// ||w(x) f||_{L^2} with w the chosen weight of exponent alpha.
pub fn weighted_norm(f: &RealField, alpha: f64, weight: Weight) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("weight exponent must be >= 0, got {alpha}"),
        });
    }
    Ok(weighted_lp_norm(f, alpha, weight, 2.0))
}

/// ||w(x) f||_{L^p}; used by the Y0 norm with p = q_sigma.
pub fn weighted_lp_norm(f: &RealField, alpha: f64, weight: Weight, p: f64) -> f64 {
    let grid = f.grid();
    let weighted: Vec<f64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let r = grid.coord_norm(i);
            let w = match weight {
                Weight::Plain => {
                    if alpha == 0.0 {
                        1.0
                    } else {
                        r.powf(alpha)
                    }
                }
                Weight::Japanese => (1.0 + r * r).powf(alpha / 2.0),
            };
            w * v
        })
        .collect();
    lp_of_samples(&weighted, p, grid.cell_volume())
}

/// A Besov norm value together with the dyadic shells the grid resolved.
#[derive(Debug, Clone, Copy)]
pub struct BesovValue {
    pub value: f64,
    pub j_min: i32,
    pub j_max: i32,
}

fn check_lebesgue_exponent(name: &'static str, p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("exponent must lie in [1, inf], got {p}"),
        });
    }
    Ok(())
}

/// Littlewood-Paley Besov norm: psi/phi_j blocks evaluated spectrally,
/// weighted by 2^{sj} and summed in l^q over the grid-resolvable shells.
pub fn besov_norm_lp(
    f: &RealField,
    s: f64,
    p: f64,
    q: f64,
    homogeneous: bool,
) -> Result<BesovValue> {
    if !(s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("regularity must be >= 0 for the norms used here, got {s}"),
        });
    }
    check_lebesgue_exponent("p", p)?;
    check_lebesgue_exponent("q", q)?;
    let grid = f.grid();
    let part = DyadicPartition::new(grid);
    let mut hat = f.forward_transform();
    if homogeneous {
        // quotient by constants: drop the mean mode
        hat.coefficients_mut()[0] = Complex64::new(0.0, 0.0);
    }

    let mut terms: Vec<f64> = Vec::new();
    let (j_lo, j_hi) = if homogeneous {
        (part.j_min(), part.j_max())
    } else {
        (0, part.j_max())
    };
    for j in j_lo..=j_hi {
        let scale = 2f64.powi(-j);
        let block = hat
            .apply_multiplier(|xi| {
                let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                Complex64::new(crate::partition::phi_hat(r * scale), 0.0)
            })?
            .inverse_transform_unchecked();
        terms.push(2f64.powf(s * j as f64) * block.lp_norm(p));
    }
    if !homogeneous {
        let low = hat
            .apply_multiplier(|xi| {
                let r: f64 = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                Complex64::new(psi_hat(r), 0.0)
            })?
            .inverse_transform_unchecked();
        terms.push(low.lp_norm(p));
    }

    let value = if q == f64::INFINITY {
        terms.iter().fold(0.0f64, |a, &t| a.max(t))
    } else {
        terms
            .iter()
            .map(|t| t.powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    };
    Ok(BesovValue {
        value,
        j_min: j_lo,
        j_max: j_hi,
    })
}

/// Difference-quotient Besov norm over dyadic separation scales
/// rho = h * 2^i with exact cyclic lattice shifts:
/// first differences f(x+y) - f(x) for m = 1, symmetric second differences
/// f(x+y) - 2f(x) + f(x-y) for m = 2.
pub fn besov_norm_difference(f: &RealField, s: f64, p: f64, q: f64, m: u32) -> Result<f64> {
    if !(m == 1 || m == 2) {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("difference order must be 1 or 2, got {m}"),
        });
    }
    if !(s > 0.0 && s < m as f64) {
        return Err(Error::Domain(format!(
            "smoothness must satisfy 0 < s < {m}, got {s}"
        )));
    }
    check_lebesgue_exponent("p", p)?;
    check_lebesgue_exponent("q", q)?;
    let grid = f.grid();
    let h = grid.spacing();
    let two_l = 2.0 * grid.half_width();

    let mut terms: Vec<(f64, f64)> = Vec::new(); // (rho, sup of difference norms)
    let mut i = 0u32;
    loop {
        let rho = h * 2f64.powi(i as i32);
        if rho > two_l {
            break;
        }
        let max_cells = (rho / h).floor() as i64;
        let sup = sup_difference_norm(f, m, max_cells, rho, p);
        terms.push((rho, sup));
        i += 1;
    }

    let ln2 = std::f64::consts::LN_2;
    let value = if q == f64::INFINITY {
        terms
            .iter()
            .fold(0.0f64, |a, &(rho, g)| a.max(rho.powf(-s) * g))
    } else {
        terms
            .iter()
            .map(|&(rho, g)| (rho.powf(-s) * g).powf(q) * ln2)
            .sum::<f64>()
            .powf(1.0 / q)
    };
    Ok(value)
}

/// sup over nonzero lattice shifts |y| <= rho of the m-th difference norm.
fn sup_difference_norm(f: &RealField, m: u32, max_cells: i64, rho: f64, p: f64) -> f64 {
    let grid = f.grid();
    let dim = grid.dim();
    let h = grid.spacing();
    let mut best = 0.0f64;
    let mut offset = vec![0i64; dim];
    // enumerate lattice offsets in the box [-max_cells, max_cells]^dim
    // intersected with the ball |y| <= rho; opposite shifts give equal
    // norms, so only the half-space with positive leading component runs
    loop {
        let r2: f64 = offset.iter().map(|&k| (k as f64 * h).powi(2)).sum();
        let nonzero = offset.iter().any(|&k| k != 0);
        let leading_positive = offset.iter().find(|&&k| k != 0).map_or(false, |&k| k > 0);
        if nonzero && leading_positive && r2.sqrt() <= rho {
            best = best.max(difference_norm(f, m, &offset, p));
        }
        // odometer increment
        let mut axis = dim;
        loop {
            if axis == 0 {
                return best;
            }
            axis -= 1;
            offset[axis] += 1;
            if offset[axis] <= max_cells {
                break;
            }
            offset[axis] = -max_cells;
        }
    }
}

fn difference_norm(f: &RealField, m: u32, offset: &[i64], p: f64) -> f64 {
    let grid = f.grid();
    let n = grid.points_per_axis() as i64;
    let values = f.values();
    let shift_index = |flat: usize, sign: i64| -> usize {
        let raw = grid.unravel(flat);
        let mut out = 0usize;
        for axis in 0..grid.dim() {
            let moved = (raw[axis] as i64 + sign * offset[axis]).rem_euclid(n);
            out = out * n as usize + moved as usize;
        }
        out
    };
    let diffs: Vec<f64> = (0..values.len())
        .map(|i| {
            if m == 1 {
                values[shift_index(i, 1)] - values[i]
            } else {
                values[shift_index(i, 1)] - 2.0 * values[i] + values[shift_index(i, -1)]
            }
        })
        .collect();
    lp_of_samples(&diffs, p, grid.cell_volume())
}

/// q_sigma = max(1, 2n/(n+sigma)), the Lebesgue exponent of the auxiliary
/// space.
pub fn q_sigma(n: usize, sigma: f64) -> f64 {
    (2.0 * n as f64 / (n as f64 + sigma)).max(1.0)
}

/// ||f||_{X0} = ||f||_{L^2} + ||f||_{Hdot^s} + || |x|^alpha f ||_{L^2}.
pub fn x0_norm(f: &RealField, s: f64, alpha: f64) -> Result<f64> {
    Ok(f.lp_norm(2.0) + sobolev_norm(f, s, true)? + weighted_norm(f, alpha, Weight::Plain)?)
}

/// ||f||_{Y0} = || |x|^alpha f ||_{L^{q_sigma}} + ||f||_{L^gamma} plus the
/// regularity term: Bdot^s_{q_sigma,2} for s > 0, L^{q_sigma} for s = 0.
pub fn y0_norm(f: &RealField, s: f64, alpha: f64, gamma: f64, sigma: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("regularity must be >= 0, got {s}"),
        });
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("weight exponent must be >= 0, got {alpha}"),
        });
    }
    if !(1.0..=2.0).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("auxiliary exponent must lie in [1,2], got {gamma}"),
        });
    }
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("sigma must be positive, got {sigma}"),
        });
    }
    let qs = q_sigma(f.grid().dim(), sigma);
    let regularity = if s > 0.0 {
        besov_norm_lp(f, s, qs, 2.0, true)?.value
    } else {
        f.lp_norm(qs)
    };
    Ok(weighted_lp_norm(f, alpha, Weight::Plain, qs) + f.lp_norm(gamma) + regularity)
}

/// <t> = sqrt(1 + t^2).
#[inline]
pub fn bracket(t: f64) -> f64 {
    (1.0 + t * t).sqrt()
}

/// mu(q1, q2) = (n/sigma)(1/q2 - 1/q1), the decay-rate bookkeeping
/// exponent of the time-weighted norms.
pub fn mu(n: usize, sigma: f64, q1: f64, q2: f64) -> f64 {
    n as f64 / sigma * (1.0 / q2 - 1.0 / q1)
}

/// Dilation D(t) u = <t>^{n/(r sigma)} u(<t>^{1/sigma} x) by band-limited
/// resampling: the trigonometric interpolant of u is evaluated exactly at
/// the scaled points. Cost is O(N^{dim+1}).
pub fn dilate(u: &RealField, t: f64, sigma: f64, r: f64) -> Result<RealField> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("time must be >= 0, got {t}"),
        });
    }
    if !(sigma > 0.0) || !(r >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "sigma/r",
            reason: format!("need sigma > 0 and r >= 1, got sigma={sigma}, r={r}"),
        });
    }
    let grid = u.grid();
    let n = grid.points_per_axis();
    let dim = grid.dim();
    let lambda = bracket(t).powf(1.0 / sigma);
    let amplitude = bracket(t).powf(dim as f64 / (r * sigma));

    let hat = u.forward_transform();
    // per-axis evaluation matrix e[m][k] = exp(i xi_k lambda x_m)
    let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
    let dxi = grid.freq_spacing();
    let h = grid.spacing();
    let half = grid.half_width();
    for mrow in 0..n {
        let x = -half + mrow as f64 * h;
        for k in 0..n {
            let xi = dxi * grid.signed_index(k) as f64;
            matrix[mrow * n + k] = Complex64::from_polar(1.0, xi * lambda * x);
        }
    }
    let mut data = hat.coefficients().to_vec();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut out_line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let lines = data.len() / n;
        for l in 0..lines {
            let block = l / stride;
            let offset = l % stride;
            let base = block * stride * n + offset;
            for (i, c) in line.iter_mut().enumerate() {
                *c = data[base + i * stride];
            }
            for (mrow, o) in out_line.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += matrix[mrow * n + k] * line[k];
                }
                *o = acc;
            }
            for (i, c) in out_line.iter().enumerate() {
                data[base + i * stride] = *c;
            }
        }
    }
    let measure = (dxi / (2.0 * std::f64::consts::PI)).powi(dim as i32);
    let values = data.iter().map(|c| c.re * measure * amplitude).collect();
    RealField::new(grid.clone(), values)
}

/// The three weights of the dilated X0 norm at time t:
/// <t>^{mu(2,r)} * (1, <t>^{s/sigma}, <t>^{-alpha/sigma}).
pub fn x_weights(t: f64, n: usize, sigma: f64, s: f64, alpha: f64, r: f64) -> (f64, f64, f64) {
    let base = bracket(t).powf(mu(n, sigma, 2.0, r));
    (
        base,
        base * bracket(t).powf(s / sigma),
        base * bracket(t).powf(-alpha / sigma),
    )
}

/// ||D(t) u(t)||_{X0} assembled from the plain norms of u(t) through the
/// exact scaling identities of the dilation (no resampling).
pub fn x_norm_at(
    t: f64,
    l2: f64,
    hs: f64,
    weighted_alpha: f64,
    n: usize,
    sigma: f64,
    s: f64,
    alpha: f64,
    r: f64,
) -> f64 {
    let (w0, ws, wa) = x_weights(t, n, sigma, s, alpha, r);
    w0 * l2 + ws * hs + wa * weighted_alpha
}

/// Running supremum of the dilated X0 norms over a recorded trajectory,
/// given the per-time norm columns (L^2, Hdot^s, |x|^alpha-weighted L^2).
pub fn x_norm_accumulate(
    times: &[f64],
    l2: &[f64],
    hs: &[f64],
    weighted_alpha: &[f64],
    n: usize,
    sigma: f64,
    s: f64,
    alpha: f64,
    r: f64,
) -> Result<f64> {
    if times.is_empty() {
        return Err(Error::Domain("empty trajectory".into()));
    }
    if times.len() != l2.len() || times.len() != hs.len() || times.len() != weighted_alpha.len() {
        return Err(Error::Domain(
            "norm columns must have one row per recorded time".into(),
        ));
    }
    let mut sup = 0.0f64;
    for i in 0..times.len() {
        sup = sup.max(x_norm_at(
            times[i],
            l2[i],
            hs[i],
            weighted_alpha[i],
            n,
            sigma,
            s,
            alpha,
            r,
        ));
    }
    Ok(sup)
}

/// Declarative norm selection, validated at construction; used by the
/// command-line `norms` entry point and the experiment configs.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    Lp { p: f64 },
    SobolevHom { s: f64 },
    SobolevInhom { s: f64 },
    WeightedL2 { alpha: f64, weight: Weight },
    BesovHom { s: f64, p: f64, q: f64 },
    BesovInhom { s: f64, p: f64, q: f64 },
    X0 { s: f64, alpha: f64 },
    Y0 { s: f64, alpha: f64, gamma: f64, sigma: f64 },
}

impl NormSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::Lp { p } => check_lebesgue_exponent("p", p),
            NormSpec::SobolevHom { s } | NormSpec::SobolevInhom { s } => {
                if s >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "s",
                        reason: format!("order must be >= 0, got {s}"),
                    })
                }
            }
            NormSpec::WeightedL2 { alpha, .. } => {
                if alpha >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "alpha",
                        reason: format!("weight exponent must be >= 0, got {alpha}"),
                    })
                }
            }
            NormSpec::BesovHom { s, p, q } | NormSpec::BesovInhom { s, p, q } => {
                check_lebesgue_exponent("p", p)?;
                check_lebesgue_exponent("q", q)?;
                if s >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "s",
                        reason: format!("regularity must be >= 0, got {s}"),
                    })
                }
            }
            NormSpec::X0 { s, alpha } => {
                if s >= 0.0 && alpha >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "s/alpha",
                        reason: format!("need s >= 0 and alpha >= 0, got s={s}, alpha={alpha}"),
                    })
                }
            }
            NormSpec::Y0 {
                s,
                alpha,
                gamma,
                sigma,
            } => {
                if !(1.0..=2.0).contains(&gamma) {
                    return Err(Error::InvalidParameter {
                        name: "gamma",
                        reason: format!("must lie in [1,2], got {gamma}"),
                    });
                }
                if s >= 0.0 && alpha >= 0.0 && sigma > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "s/alpha/sigma",
                        reason: format!("inadmissible Y0 parameters s={s}, alpha={alpha}, sigma={sigma}"),
                    })
                }
            }
        }
    }

    pub fn evaluate(&self, f: &RealField) -> Result<f64> {
        self.validate()?;
        match *self {
            NormSpec::Lp { p } => Ok(f.lp_norm(p)),
            NormSpec::SobolevHom { s } => sobolev_norm(f, s, true),
            NormSpec::SobolevInhom { s } => sobolev_norm(f, s, false),
            NormSpec::WeightedL2 { alpha, weight } => weighted_norm(f, alpha, weight),
            NormSpec::BesovHom { s, p, q } => Ok(besov_norm_lp(f, s, p, q, true)?.value),
            NormSpec::BesovInhom { s, p, q } => Ok(besov_norm_lp(f, s, p, q, false)?.value),
            NormSpec::X0 { s, alpha } => x0_norm(f, s, alpha),
            NormSpec::Y0 {
                s,
                alpha,
                gamma,
                sigma,
            } => y0_norm(f, s, alpha, gamma, sigma),
        }
    }
}
