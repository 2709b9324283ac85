//! Seeded low-discrepancy points in the unit cube.
//!
//! Uses the additive recurrence `u_n = frac(shift + n * alpha)` with
//! `alpha_i = phi_d^-(i+1)`, where `phi_d` is the unique positive root of
//! `x^(d+1) = x + 1`. The shift is drawn from a ChaCha stream seeded by the
//! caller, so equal seeds give identical point sets on every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct QuasiRandom {
    alpha: Vec<f64>,
    shift: Vec<f64>,
    index: u64,
}

fn generalized_golden_ratio(dim: usize) -> f64 {
    // Fixed point of x = (1 + x)^(1/(d+1)).
    let e = 1.0 / (dim as f64 + 1.0);
    let mut x = 2.0f64;
    for _ in 0..64 {
        x = (1.0 + x).powf(e);
    }
    x
}

fn unit_from_bits(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl QuasiRandom {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let phi = generalized_golden_ratio(dim);
        let alpha = (1..=dim).map(|i| phi.powi(-(i as i32))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| unit_from_bits(rng.next_u64())).collect();
        QuasiRandom {
            alpha,
            shift,
            index: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// The next point, each coordinate in the open interval `(0, 1)`.
    pub fn next_point(&mut self) -> Vec<f64> {
        self.index += 1;
        let n = self.index as f64;
        self.alpha
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| {
                let u = (s + n * a).fract();
                if u <= 0.0 {
                    f64::EPSILON
                } else {
                    u
                }
            })
            .collect()
    }

    pub fn points(mut self, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.next_point()).collect()
    }
}
