//! A toy environment that records which branch the apparatus took.
//!
//! Each environment qubit starts in |0> and rotates by +theta_k when the
//! pointer sits in |a1> and by -theta_k when it sits in |a2>. The two
//! conditional environment states then overlap by
//!
//! ```text
//! r = prod_k cos(2 theta_k)
//! ```
//!
//! which multiplies the coherence between the branches of the
//! system-apparatus state while leaving the pointer probabilities alone.
//! `decohered_state` applies that scaling analytically for any environment
//! size; `simulate_env_exact` runs the actual coupling on the full state
//! vector for up to [`MAX_EXACT_ENV_QUBITS`] qubits and serves as the oracle
//! for the closed form. Because the coupling is unitary, running its exact
//! inverse restores the original state no matter how small r has become,
//! which is what [`reverse_and_check`] demonstrates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{
    density_of, reduced_from_pure, BipartiteShape, DensityOperator, StateVector, Subsystem,
    TOL_EIG, TOL_EXACT,
};
use crate::states::MeasurementState;

/// Cap on the exact simulation: 4 x 2^10 = 4096 composite dimensions.
pub const MAX_EXACT_ENV_QUBITS: usize = 10;

/// Coupling angles, one per environment qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentSpec {
    thetas: Vec<f64>,
}

impl EnvironmentSpec {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::Empty {
                what: "environment",
            });
        }
        if !thetas.iter().all(|t| t.is_finite()) {
            return Err(Error::NonFinite {
                what: "coupling angles",
            });
        }
        Ok(Self { thetas })
    }

    /// `n` qubits all coupled at the same angle.
    pub fn uniform(n: usize, theta: f64) -> Result<Self> {
        Self::new(vec![theta; n])
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn n_qubits(&self) -> usize {
        self.thetas.len()
    }
}

/// Overlap of the two conditional environment states, `prod_k cos(2 theta_k)`.
/// Lies in [-1, 1]; 1 means the environment learned nothing, 0 means the
/// branches are perfectly distinguishable.
pub fn decoherence_factor(env: &EnvironmentSpec) -> f64 {
    env.thetas.iter().map(|t| (2.0 * t).cos()).product()
}

/// Index helpers on the 2 x 2 system-apparatus space: the pointer index is
/// the low bit of the composite index.
fn pointer_index(i_sa: usize) -> usize {
    i_sa % 2
}

/// Scale the coherence between pointer branches by the environment overlap.
///
/// Every entry whose row and column disagree on the pointer index is
/// multiplied by r; pointer-diagonal entries are untouched. This is a valid
/// (completely positive) operation for any |r| <= 1, and the constructor of
/// the result re-checks positivity.
pub fn decohered_state(rho_sa: &DensityOperator, env: &EnvironmentSpec) -> Result<DensityOperator> {
    if rho_sa.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: rho_sa.dim(),
        });
    }
    let r = decoherence_factor(env);
    let mut entries = rho_sa.entries().to_vec();
    for i in 0..4 {
        for j in 0..4 {
            if pointer_index(i) != pointer_index(j) {
                entries[i * 4 + j] *= r;
            }
        }
    }
    DensityOperator::new(4, entries)
}

/// `psi_sa (x) |0...0>` over the composite space of system, apparatus, and
/// n environment qubits.
fn embed_with_fresh_env(psi_sa: &StateVector, dim_e: usize) -> Vec<Complex64> {
    let mut full = vec![Complex64::ZERO; 4 * dim_e];
    for i_sa in 0..4 {
        full[i_sa * dim_e] = psi_sa.amp(i_sa);
    }
    full
}

/// Apply the branch-controlled coupling in place on the composite state.
/// Environment qubit k occupies bit (n-1-k) of the environment index;
/// `inverse` runs the rotations backwards. The per-qubit rotations act on
/// disjoint tensor factors, so their order does not matter.
fn apply_coupling(full: &mut [Complex64], env: &EnvironmentSpec, inverse: bool) {
    let n = env.n_qubits();
    let dim_e = 1usize << n;
    debug_assert_eq!(full.len(), 4 * dim_e);

    for (k, &theta) in env.thetas.iter().enumerate() {
        let bit = n - 1 - k;
        let stride = 1usize << bit;
        for idx in 0..full.len() {
            let e = idx % dim_e;
            if (e >> bit) & 1 == 1 {
                continue;
            }
            let i_sa = idx / dim_e;
            let mut angle = if pointer_index(i_sa) == 0 {
                theta
            } else {
                -theta
            };
            if inverse {
                angle = -angle;
            }
            let (sin, cos) = angle.sin_cos();
            let lo = full[idx];
            let hi = full[idx + stride];
            full[idx] = cos * lo - sin * hi;
            full[idx + stride] = sin * lo + cos * hi;
        }
    }
}

fn reduce_to_sa(full: Vec<Complex64>, n_env: usize) -> Result<DensityOperator> {
    let psi = StateVector::new(full)?;
    let shape = BipartiteShape::new(4, 1 << n_env)?;
    reduced_from_pure(&psi, shape, Subsystem::S)
}

/// Run the coupling exactly on the full state vector and trace out the
/// environment. Agrees with [`decohered_state`] to rounding; kept as an
/// independent route on purpose.
pub fn simulate_env_exact(m: &MeasurementState, env: &EnvironmentSpec) -> Result<DensityOperator> {
    if env.n_qubits() > MAX_EXACT_ENV_QUBITS {
        return Err(Error::EnvironmentTooLarge {
            got: env.n_qubits(),
            max: MAX_EXACT_ENV_QUBITS,
        });
    }
    let mut full = embed_with_fresh_env(m.psi(), 1 << env.n_qubits());
    apply_coupling(&mut full, env, false);
    reduce_to_sa(full, env.n_qubits())
}

/// What one coupling run (and optionally its reversal) did to the branch
/// coherence of the system-apparatus state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceReport {
    /// The analytic overlap `prod_k cos(2 theta_k)`.
    pub factor_r: f64,
    /// |<s1 a1| rho |s2 a2>| before the coupling.
    pub coherence_before: f64,
    /// The same magnitude afterwards: scaled by |r| for a forward run,
    /// restored for a reversed run.
    pub coherence_after: f64,
    /// True only when the inverse coupling was applied and the reduced state
    /// came back to the original within [`TOL_EIG`].
    pub reversible: bool,
}

/// Magnitude of the branch off-diagonal entry, the coherence the environment
/// suppresses.
pub fn branch_coherence(rho: &DensityOperator) -> f64 {
    rho.entry(0, 3).norm()
}

/// Forward coupling only. Exact simulation up to [`MAX_EXACT_ENV_QUBITS`]
/// qubits, the analytic scaling beyond that (the two agree within 1e-10,
/// which the test suite checks on the exact range).
pub fn forward_report(m: &MeasurementState, env: &EnvironmentSpec) -> Result<DecoherenceReport> {
    let before = density_of(m.psi());
    let after = if env.n_qubits() <= MAX_EXACT_ENV_QUBITS {
        simulate_env_exact(m, env)?
    } else {
        decohered_state(&before, env)?
    };
    Ok(DecoherenceReport {
        factor_r: decoherence_factor(env),
        coherence_before: branch_coherence(&before),
        coherence_after: branch_coherence(&after),
        reversible: false,
    })
}

/// Couple, then apply the exact inverse coupling on the retained composite
/// pure state, and verify the reduced state is restored.
///
/// The point: even when r is zero to machine precision (a "detector"
/// environment), the global evolution stays unitary, so holding on to the
/// full state keeps the coherence recoverable in principle.
pub fn reverse_and_check(m: &MeasurementState, env: &EnvironmentSpec) -> Result<DecoherenceReport> {
    if env.n_qubits() > MAX_EXACT_ENV_QUBITS {
        return Err(Error::EnvironmentTooLarge {
            got: env.n_qubits(),
            max: MAX_EXACT_ENV_QUBITS,
        });
    }
    let original = density_of(m.psi());

    let mut full = embed_with_fresh_env(m.psi(), 1 << env.n_qubits());
    apply_coupling(&mut full, env, false);
    apply_coupling(&mut full, env, true);
    let restored = reduce_to_sa(full, env.n_qubits())?;

    let worst = original
        .entries()
        .iter()
        .zip(restored.entries())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    Ok(DecoherenceReport {
        factor_r: decoherence_factor(env),
        coherence_before: branch_coherence(&original),
        coherence_after: branch_coherence(&restored),
        reversible: worst <= TOL_EIG,
    })
}

/// Check that the coupling singles out the pointer basis: each branch state
/// `|s_i a_i>` passes through unchanged (its reduced projector moves by less
/// than [`TOL_EXACT`]), while the balanced superposition of branches has its
/// coherence scaled by exactly the analytic factor.
pub fn pointer_basis_check(env: &EnvironmentSpec) -> Result<bool> {
    use crate::states::{premeasure, Amplitudes};

    if env.n_qubits() > MAX_EXACT_ENV_QUBITS {
        return Err(Error::EnvironmentTooLarge {
            got: env.n_qubits(),
            max: MAX_EXACT_ENV_QUBITS,
        });
    }

    let branch_states = [
        Amplitudes::new(Complex64::ONE, Complex64::ZERO).expect("unit branch"),
        Amplitudes::new(Complex64::ZERO, Complex64::ONE).expect("unit branch"),
    ];
    for amplitudes in branch_states {
        let m = premeasure(&amplitudes);
        let projector = density_of(m.psi());
        let evolved = simulate_env_exact(&m, env)?;
        let moved = projector
            .entries()
            .iter()
            .zip(evolved.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved > TOL_EXACT {
            return Ok(false);
        }
    }

    let balanced = premeasure(&Amplitudes::balanced());
    let before = density_of(balanced.psi());
    let after = simulate_env_exact(&balanced, env)?;
    let r = decoherence_factor(env);
    let coherence_ok =
        (branch_coherence(&after) - r.abs() * branch_coherence(&before)).abs() <= TOL_EIG;
    let diagonals_ok =
        (0..4).all(|i| (after.entry(i, i).re - before.entry(i, i).re).abs() <= TOL_EXACT);

    Ok(coherence_ok && diagonals_ok)
}
