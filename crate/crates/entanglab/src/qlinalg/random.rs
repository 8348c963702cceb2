//! Seeded random states for audits and property tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityOperator, StateVector};

/// Haar-ish random pure state: complex standard-normal amplitudes, normalized.
pub fn random_state_vector<R: Rng>(dim: usize, rng: &mut R) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue; // astronomically unlikely, but resample rather than divide by ~0
        }
        return StateVector::new(amps.into_iter().map(|z| z / norm).collect())
            .expect("normalized amplitudes form a valid state");
    }
}

/// Random full-rank density operator via the Ginibre construction:
/// rho = G G* / Tr(G G*).
pub fn random_density<R: Rng>(dim: usize, rng: &mut R) -> DensityOperator {
    let g: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let mut m = vec![Complex64::ZERO; dim * dim];
    // upper triangle of G G*, mirrored so the matrix is Hermitian to the bit
    for i in 0..dim {
        for j in i..dim {
            let mut sum = Complex64::ZERO;
            for k in 0..dim {
                sum += g[i * dim + k] * g[j * dim + k].conj();
            }
            m[i * dim + j] = sum;
            m[j * dim + i] = sum.conj();
        }
    }
    let trace: f64 = (0..dim).map(|i| m[i * dim + i].re).sum();
    let entries: Vec<Complex64> = m.into_iter().map(|z| z / trace).collect();
    DensityOperator::new(dim, entries).expect("Ginibre construction is a valid density operator")
}
