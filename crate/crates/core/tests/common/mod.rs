#![allow(dead_code)]

use std::f64::consts::TAU;

use hankel_core::caratheodory::HerglotzMeasure;
use hankel_core::scalar::{ratio, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Between 1 and `max_atoms` atoms with uniform weights and angles, normalized.
pub fn random_measure(rng: &mut ChaCha8Rng, max_atoms: usize) -> HerglotzMeasure {
    let m = rng.gen_range(1..=max_atoms);
    let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).collect();
    let angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..TAU)).collect();
    HerglotzMeasure::from_unnormalized(&weights, &angles).expect("valid measure")
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-50..=50), rng.gen_range(1..=12))
}

pub fn close(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}
