//! Branch-safe evaluation of the damped-wave dispersion functions.
//!
//! The linear flow is driven by L(t, xi) = sinh(t sqrt(theta))/sqrt(theta)
//! with theta = 1/4 - |xi|^sigma, which crosses from the sinh branch to the
//! sin branch at |xi| = 2^{-2/sigma}. Both branches are values of the single
//! entire function A(z) = sum z^k/(2k+1)! at z = theta t^2, and its time
//! derivative is B(z) = sum z^k/(2k)!; evaluating A and B removes the
//! removable singularity at the branch point. Closed forms are used for
//! |z| > Z_SWITCH, the power series below it.
//!
//! Propagator code never multiplies the raw branch value by e^{-t/2}: for
//! theta near 1/4 and large t that product is a difference of huge and tiny
//! numbers. The `damped_*` evaluators fold the damping into the exponents,
//! so they stay finite for every finite (theta, t).

/// Series/closed-form crossover for |theta * t^2|.
pub const Z_SWITCH: f64 = 1e-2;

const SERIES_EPS: f64 = 1e-18;

/// A(z) = sinh(sqrt(z))/sqrt(z) for z > 0, sin(sqrt(-z))/sqrt(-z) for z < 0,
/// A(0) = 1.
pub fn branch_a(z: f64) -> f64 {
    if z.abs() <= Z_SWITCH {
        series_a(z)
    } else if z > 0.0 {
        let r = z.sqrt();
        r.sinh() / r
    } else {
        let r = (-z).sqrt();
        r.sin() / r
    }
}

/// B(z) = cosh(sqrt(z)) for z > 0, cos(sqrt(-z)) for z < 0, B(0) = 1.
pub fn branch_b(z: f64) -> f64 {
    if z.abs() <= Z_SWITCH {
        series_b(z)
    } else if z > 0.0 {
        z.sqrt().cosh()
    } else {
        (-z).sqrt().cos()
    }
}

pub(crate) fn series_a(z: f64) -> f64 {
    // sum z^k / (2k+1)!
    let mut term: f64 = 1.0;
    let mut sum: f64 = 1.0;
    let mut k = 0u32;
    while term.abs() > SERIES_EPS {
        let f = (2 * k + 2) as f64 * (2 * k + 3) as f64;
        term *= z / f;
        sum += term;
        k += 1;
    }
    sum
}

pub(crate) fn series_b(z: f64) -> f64 {
    // sum z^k / (2k)!
    let mut term: f64 = 1.0;
    let mut sum: f64 = 1.0;
    let mut k = 0u32;
    while term.abs() > SERIES_EPS {
        let f = (2 * k + 1) as f64 * (2 * k + 2) as f64;
        term *= z / f;
        sum += term;
        k += 1;
    }
    sum
}

/// Discriminant theta = 1/4 - |xi|^sigma at a frequency magnitude.
#[inline]
pub fn theta_of(xi_norm: f64, sigma: f64) -> f64 {
    0.25 - xi_norm.powf(sigma)
}

/// A point (theta, t) at which the dispersion functions are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolPoint {
    pub theta: f64,
    pub t: f64,
}

impl SymbolPoint {
    pub fn new(theta: f64, t: f64) -> Self {
        Self { theta, t }
    }

    /// L(t) = t * A(theta t^2).
    pub fn l_sigma(&self) -> f64 {
        self.t * branch_a(self.theta * self.t * self.t)
    }

    /// dL/dt = B(theta t^2).
    pub fn dt_l_sigma(&self) -> f64 {
        branch_b(self.theta * self.t * self.t)
    }

    /// e^{-t/2} L(t), computed without overflow.
    pub fn damped_l(&self) -> f64 {
        let (theta, t) = (self.theta, self.t);
        let z = theta * t * t;
        if z.abs() <= Z_SWITCH {
            (-t / 2.0).exp() * t * series_a(z)
        } else if z > 0.0 {
            let r = theta.sqrt();
            ((t * (r - 0.5)).exp() - (-t * (r + 0.5)).exp()) / (2.0 * r)
        } else {
            let r = (-theta).sqrt();
            (-t / 2.0).exp() * (t * r).sin() / r
        }
    }

    /// e^{-t/2} dL/dt, computed without overflow.
    pub fn damped_dt_l(&self) -> f64 {
        let (theta, t) = (self.theta, self.t);
        let z = theta * t * t;
        if z.abs() <= Z_SWITCH {
            (-t / 2.0).exp() * series_b(z)
        } else if z > 0.0 {
            let r = theta.sqrt();
            ((t * (r - 0.5)).exp() + (-t * (r + 0.5)).exp()) / 2.0
        } else {
            let r = (-theta).sqrt();
            (-t / 2.0).exp() * (t * r).cos()
        }
    }
}

pub fn l_sigma(theta: f64, t: f64) -> f64 {
    SymbolPoint::new(theta, t).l_sigma()
}

pub fn dt_l_sigma(theta: f64, t: f64) -> f64 {
    SymbolPoint::new(theta, t).dt_l_sigma()
}

/// The four multiplier values of the linear pair flow at one frequency.
///
/// `s` drives u1 -> u(t), `s_tilde` drives u0 -> u(t); `dt_s` and
/// `dt_s_tilde` are their time derivatives, the latter obtained from the
/// equation itself as -|xi|^sigma * s.
#[derive(Debug, Clone, Copy)]
pub struct PropagatorSymbols {
    pub s: f64,
    pub s_tilde: f64,
    pub dt_s: f64,
    pub dt_s_tilde: f64,
}

pub fn propagator_symbols(xi_norm: f64, sigma: f64, t: f64) -> PropagatorSymbols {
    let lam = xi_norm.powf(sigma);
    let p = SymbolPoint::new(0.25 - lam, t);
    let dl = p.damped_l();
    let db = p.damped_dt_l();
    PropagatorSymbols {
        s: dl,
        s_tilde: db + 0.5 * dl,
        dt_s: db - 0.5 * dl,
        dt_s_tilde: -lam * dl,
    }
}
