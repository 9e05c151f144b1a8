//! Initial-data construction and field CSV input/output.
//!
//! Field files carry a header `x1[,x2[,x3]],value` and one row per grid
//! point in the grid's row-major lattice ordering.

use fdw_core::corpus::Profile;
use fdw_core::{Grid, PairState, RealField};
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct DataSpec {
    pub profile: String,
    pub amplitude: f64,
    pub width: f64,
    pub center: f64,
    pub k: f64,
    pub u1_amplitude: f64,
    pub seed: u64,
}

impl Default for DataSpec {
    fn default() -> Self {
        Self {
            profile: "gaussian".into(),
            amplitude: 1.0,
            width: 1.0,
            center: 0.0,
            k: 1.0,
            u1_amplitude: 0.0,
            seed: 1,
        }
    }
}

impl DataSpec {
    fn profile_fn(&self) -> Result<Profile, String> {
        let p = match self.profile.as_str() {
            "gaussian" => Profile::Gaussian {
                amplitude: 1.0,
                width: self.width,
                center: self.center,
            },
            "bump" => Profile::Bump {
                amplitude: 1.0,
                radius: self.width.max(1e-9) * 3.0,
            },
            "packet" => Profile::CosinePacket {
                amplitude: 1.0,
                k: self.k,
                width: self.width,
            },
            "bimodal" => Profile::Bimodal {
                amplitude: 1.0,
                separation: self.center.abs().max(1.5),
            },
            "lorentzian" => Profile::Lorentzian {
                amplitude: 1.0,
                width: self.width,
            },
            "sech" => Profile::Sech {
                amplitude: 1.0,
                width: self.width,
            },
            "singular" => Profile::TruncatedSingular {
                amplitude: 1.0,
                a: 0.4,
                delta: 0.2,
                width: self.width.max(1e-9) * 5.0,
            },
            other if other != "noise" => {
                return Err(format!(
                    "unknown data profile `{other}` (gaussian, bump, packet, bimodal, lorentzian, sech, singular, noise)"
                ))
            }
            _ => Profile::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: 0.0,
            },
        };
        Ok(p)
    }

    pub fn build(&self, grid: &Grid) -> Result<PairState, String> {
        let u0 = if self.profile == "noise" {
            seeded_noise(grid, self.seed).scale(self.amplitude)
        } else {
            let p = self.profile_fn()?;
            RealField::from_fn(grid, move |x| {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let signed = if x.len() == 1 { x[0] } else { r };
                p.eval(signed)
            })
            .scale(self.amplitude)
        };
        let u1 = if self.u1_amplitude == 0.0 {
            RealField::zeros(grid)
        } else {
            u0.scale(self.u1_amplitude / self.amplitude.max(1e-300))
        };
        PairState::new(u0, u1).map_err(|e| e.to_string())
    }
}

/// Smooth band-limited noise from a 64-bit xorshift stream: deterministic
/// in the seed and the grid.
fn seeded_noise(grid: &Grid, seed: u64) -> RealField {
    let mut state = seed.max(1).wrapping_mul(0x9E3779B97F4A7C15);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let n = grid.points_per_axis();
    let mut hat = fdw_core::SpectralField::zeros(grid);
    // populate a low band with conjugate-symmetric coefficients
    let band = (n / 8).max(2);
    let len = grid.len();
    for i in 0..len {
        let raw = grid.unravel(i);
        let in_band = (0..grid.dim()).all(|a| {
            let k = grid.signed_index(raw[a]);
            k != 0 && k.unsigned_abs() as usize <= band
        });
        if in_band {
            let re = next();
            let im = next();
            // write both k and -k; second write overwrites consistently
            let mut mirrored = 0usize;
            for a in 0..grid.dim() {
                let r = raw[a];
                let m = if r == 0 { 0 } else { n - r };
                mirrored = mirrored * n + m;
            }
            if i < mirrored {
                hat.coefficients_mut()[i] = fdw_core::Complex64::new(re, im);
                hat.coefficients_mut()[mirrored] = fdw_core::Complex64::new(re, -im);
            }
        }
    }
    hat.inverse_transform().expect("symmetric by construction")
}

pub fn field_to_csv(f: &RealField) -> String {
    let grid = f.grid();
    let mut out = String::new();
    match grid.dim() {
        1 => out.push_str("x1,value\n"),
        2 => out.push_str("x1,x2,value\n"),
        _ => out.push_str("x1,x2,x3,value\n"),
    }
    for i in 0..grid.len() {
        let x = grid.coords(i);
        for a in 0..grid.dim() {
            let _ = write!(out, "{},", x[a]);
        }
        let _ = writeln!(out, "{}", f.values()[i]);
    }
    out
}

/// Parse a field CSV, inferring the grid from the coordinate columns.
pub fn field_from_csv(text: &str) -> Result<RealField, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty field file")?;
    let cols: Vec<&str> = header.split(',').map(|s| s.trim()).collect();
    let dim = cols.len().checked_sub(1).ok_or("header must end in `value`")?;
    if !(1..=3).contains(&dim) || cols[dim] != "value" {
        return Err(format!(
            "header must be x1[,x2[,x3]],value; got `{header}`"
        ));
    }
    let mut coords: Vec<Vec<f64>> = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != dim + 1 {
            return Err(format!("row {}: expected {} fields", i + 2, dim + 1));
        }
        let mut x = Vec::with_capacity(dim);
        for p in &parts[..dim] {
            x.push(
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("row {}: {e}", i + 2))?,
            );
        }
        coords.push(x);
        values.push(
            parts[dim]
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("row {}: {e}", i + 2))?,
        );
    }
    let total = values.len();
    let n = (total as f64).powf(1.0 / dim as f64).round() as usize;
    if n.pow(dim as u32) != total {
        return Err(format!(
            "{total} rows do not form an N^{dim} lattice"
        ));
    }
    let half_width = -coords[0][0];
    let grid = Grid::new(dim, n, half_width).map_err(|e| e.to_string())?;
    // validate the lattice ordering on a few probe rows
    let h = grid.spacing();
    for &probe in &[0usize, total / 3, total - 1] {
        let expect = grid.coords(probe);
        for a in 0..dim {
            if (coords[probe][a] - expect[a]).abs() > 1e-9 * h.max(1.0) {
                return Err(format!(
                    "row {} is not in row-major lattice order (got {:?})",
                    probe + 2,
                    coords[probe]
                ));
            }
        }
    }
    RealField::new(grid, values).map_err(|e| e.to_string())
}
