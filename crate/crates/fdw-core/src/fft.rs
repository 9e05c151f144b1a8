//! Separable multi-dimensional FFT driver on top of rustfft.
//!
//! Works on flat row-major buffers of `Complex64`; the grid layer applies
//! the continuum normalization, this module only does raw DFTs. Plans are
//! cached per transform length in an immutable-after-construction table so
//! repeated calls (time stepping) do not re-plan.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone)]
pub struct NdFft {
    n: usize,
    dim: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

static PLAN_CACHE: OnceLock<Mutex<HashMap<usize, (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>)>>> =
    OnceLock::new();

impl NdFft {
    pub fn new(n: usize, dim: usize) -> Self {
        let cache = PLAN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let (forward, inverse) = {
            let mut map = cache.lock().expect("fft plan cache poisoned");
            map.entry(n)
                .or_insert_with(|| {
                    let mut planner = FftPlanner::new();
                    (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
                })
                .clone()
        };
        Self {
            n,
            dim,
            forward,
            inverse,
        }
    }

    /// Unnormalized forward DFT along every axis, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    /// Unnormalized inverse DFT (conjugate exponent) along every axis, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    fn transform(&self, data: &mut [Complex64], fwd: bool) {
        let n = self.n;
        debug_assert_eq!(data.len(), n.pow(self.dim as u32));
        let fft = if fwd { &self.forward } else { &self.inverse };
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for axis in 0..self.dim {
            // stride of consecutive elements along `axis` in row-major order
            let stride = n.pow((self.dim - 1 - axis) as u32);
            let lines = data.len() / n;
            for l in 0..lines {
                let block = l / stride;
                let offset = l % stride;
                let base = block * stride * n + offset;
                if stride == 1 {
                    fft.process_with_scratch(&mut data[base..base + n], &mut scratch);
                } else {
                    for (i, c) in line.iter_mut().enumerate() {
                        *c = data[base + i * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (i, c) in line.iter().enumerate() {
                        data[base + i * stride] = *c;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_2d() {
        let n = 16;
        let fft = NdFft::new(n, 2);
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), 0.0))
            .collect();
        let orig = data.clone();
        fft.forward(&mut data);
        fft.inverse(&mut data);
        let scale = (n * n) as f64;
        for (a, b) in data.iter().zip(&orig) {
            assert!((a / scale - b).norm() < 1e-12);
        }
    }

    #[test]
    fn single_mode_3d() {
        let n = 16;
        let fft = NdFft::new(n, 3);
        // e^{2 pi i (x + 2y + 3z)/n} concentrates at (1,2,3)
        let mut data: Vec<Complex64> = Vec::with_capacity(n * n * n);
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let phase =
                        2.0 * std::f64::consts::PI * (ix + 2 * iy + 3 * iz) as f64 / n as f64;
                    data.push(Complex64::from_polar(1.0, phase));
                }
            }
        }
        fft.forward(&mut data);
        let flat = (n + 2) * n + 3;
        assert!((data[flat].re - (n * n * n) as f64).abs() < 1e-6);
        let total: f64 = data.iter().map(|c| c.norm()).sum();
        assert!((total - (n * n * n) as f64).abs() < 1e-5);
    }
}
