//! The fixed analytic test corpus used by norm equivalence and decay
//! experiments.
//!
//! Ten closed-form profiles: Gaussians of several widths and centers, a
//! compactly supported bump, cosine-modulated packets, a bimodal sum, two
//! slowly decaying profiles and a mollified |x|^{-a} singularity. Every
//! member has strictly positive mean so low-frequency decay envelopes are
//! exercised away from the degenerate mean-zero case. The defining
//! parameters are serialized to a manifest so a corpus can be rebuilt
//! bit-exactly from its description.

use crate::field::RealField;
use crate::grid::Grid;

/// Closed-form corpus member; `radial` profiles are applied to |x| in
/// dimension >= 2, `x`-profiles act on the first coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// amplitude * exp(-((x - center)/width)^2)
    Gaussian {
        amplitude: f64,
        width: f64,
        center: f64,
    },
    /// amplitude * exp(-1/(1 - (x/radius)^2)) inside |x| < radius, else 0
    Bump { amplitude: f64, radius: f64 },
    /// amplitude * cos(k x) * exp(-(x/width)^2)
    CosinePacket {
        amplitude: f64,
        k: f64,
        width: f64,
    },
    /// amplitude * (exp(-(x-c)^2) + exp(-(x+c)^2))
    Bimodal { amplitude: f64, separation: f64 },
    /// amplitude / (1 + (x/width)^2)
    Lorentzian { amplitude: f64, width: f64 },
    /// amplitude * sech(x/width)
    Sech { amplitude: f64, width: f64 },
    /// amplitude * (x^2 + delta^2)^{-a/2} * exp(-(x/width)^2)
    TruncatedSingular {
        amplitude: f64,
        a: f64,
        delta: f64,
        width: f64,
    },
}

impl Profile {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Profile::Gaussian {
                amplitude,
                width,
                center,
            } => {
                let z = (r - center) / width;
                amplitude * (-z * z).exp()
            }
            Profile::Bump { amplitude, radius } => {
                let z = r / radius;
                if z.abs() < 1.0 {
                    amplitude * (-1.0 / (1.0 - z * z)).exp()
                } else {
                    0.0
                }
            }
            Profile::CosinePacket {
                amplitude,
                k,
                width,
            } => {
                let z = r / width;
                amplitude * (k * r).cos() * (-z * z).exp()
            }
            Profile::Bimodal {
                amplitude,
                separation,
            } => {
                let a = r - separation;
                let b = r + separation;
                amplitude * ((-a * a).exp() + (-b * b).exp())
            }
            Profile::Lorentzian { amplitude, width } => {
                let z = r / width;
                amplitude / (1.0 + z * z)
            }
            Profile::Sech { amplitude, width } => {
                let z = r / width;
                amplitude * 2.0 / (z.exp() + (-z).exp())
            }
            Profile::TruncatedSingular {
                amplitude,
                a,
                delta,
                width,
            } => {
                let z = r / width;
                amplitude * (r * r + delta * delta).powf(-a / 2.0) * (-z * z).exp()
            }
        }
    }

    fn describe(&self) -> String {
        match *self {
            Profile::Gaussian {
                amplitude,
                width,
                center,
            } => format!("gaussian amplitude={amplitude:?} width={width:?} center={center:?}"),
            Profile::Bump { amplitude, radius } => {
                format!("bump amplitude={amplitude:?} radius={radius:?}")
            }
            Profile::CosinePacket {
                amplitude,
                k,
                width,
            } => format!("cosine_packet amplitude={amplitude:?} k={k:?} width={width:?}"),
            Profile::Bimodal {
                amplitude,
                separation,
            } => format!("bimodal amplitude={amplitude:?} separation={separation:?}"),
            Profile::Lorentzian { amplitude, width } => {
                format!("lorentzian amplitude={amplitude:?} width={width:?}")
            }
            Profile::Sech { amplitude, width } => {
                format!("sech amplitude={amplitude:?} width={width:?}")
            }
            Profile::TruncatedSingular {
                amplitude,
                a,
                delta,
                width,
            } => format!(
                "truncated_singular amplitude={amplitude:?} a={a:?} delta={delta:?} width={width:?}"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub profile: Profile,
}

impl CorpusEntry {
    /// Sample on a grid; in dimension >= 2 the profile is radial.
    pub fn sample(&self, grid: &Grid) -> RealField {
        let profile = self.profile;
        RealField::from_fn(grid, move |x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let signed = if x.len() == 1 { x[0] } else { r };
            profile.eval(signed)
        })
    }
}

/// The standard ten-member corpus.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "gaussian",
            profile: Profile::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: 0.0,
            },
        },
        CorpusEntry {
            name: "wide_gaussian",
            profile: Profile::Gaussian {
                amplitude: 0.8,
                width: 4.0,
                center: 0.0,
            },
        },
        CorpusEntry {
            name: "shifted_gaussian",
            profile: Profile::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: 2.0,
            },
        },
        CorpusEntry {
            name: "bump",
            profile: Profile::Bump {
                amplitude: 2.0,
                radius: 3.0,
            },
        },
        CorpusEntry {
            name: "packet_k1",
            profile: Profile::CosinePacket {
                amplitude: 1.0,
                k: 1.0,
                width: 2.0,
            },
        },
        CorpusEntry {
            name: "packet_k3",
            profile: Profile::CosinePacket {
                amplitude: 1.0,
                k: 3.0,
                width: 0.8,
            },
        },
        CorpusEntry {
            name: "bimodal",
            profile: Profile::Bimodal {
                amplitude: 0.7,
                separation: 1.5,
            },
        },
        CorpusEntry {
            name: "lorentzian",
            profile: Profile::Lorentzian {
                amplitude: 1.0,
                width: 1.0,
            },
        },
        CorpusEntry {
            name: "sech",
            profile: Profile::Sech {
                amplitude: 1.0,
                width: 1.5,
            },
        },
        CorpusEntry {
            name: "singular",
            profile: Profile::TruncatedSingular {
                amplitude: 0.5,
                a: 0.4,
                delta: 0.2,
                width: 5.0,
            },
        },
    ]
}

/// Plain-text manifest of the corpus; `{:?}` float formatting is
/// round-trip exact, so rebuilding from the manifest is bit-faithful.
pub fn corpus_manifest(entries: &[CorpusEntry]) -> String {
    let mut out = String::from("# corpus manifest: one member per line\n");
    for e in entries {
        out.push_str(&format!("{}: {}\n", e.name, e.profile.describe()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_members_all_positive_mean() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 10);
        let grid = Grid::new(1, 512, 30.0).unwrap();
        for entry in &corpus {
            let f = entry.sample(&grid);
            assert!(f.is_finite(), "{}", entry.name);
            assert!(
                f.integrate() > 0.05,
                "{} has mean {}",
                entry.name,
                f.integrate()
            );
        }
    }

    #[test]
    fn manifest_lists_every_member() {
        let corpus = standard_corpus();
        let manifest = corpus_manifest(&corpus);
        for entry in &corpus {
            assert!(manifest.contains(entry.name));
        }
        // parameters serialized exactly
        assert!(manifest.contains("width=1.5"));
    }

    #[test]
    fn bump_is_compactly_supported() {
        let grid = Grid::new(1, 256, 10.0).unwrap();
        let f = CorpusEntry {
            name: "bump",
            profile: Profile::Bump {
                amplitude: 2.0,
                radius: 3.0,
            },
        }
        .sample(&grid);
        for i in 0..grid.len() {
            if grid.coords(i)[0].abs() >= 3.0 {
                assert_eq!(f.values()[i], 0.0);
            }
        }
    }
}
