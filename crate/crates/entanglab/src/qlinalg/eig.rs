//! Hermitian eigendecomposition for the small matrices this crate works with.
//!
//! Dimension 2 uses the closed-form solution (the case the basis-ambiguity
//! analysis depends on); dimensions 3 and 4 use cyclic complex Jacobi
//! rotations. The same Jacobi kernel, without the dimension cap, backs the
//! positivity check in density-operator construction.

use num_complex::Complex64;

use super::{DensityOperator, StateVector, TOL_DEGENERACY};
use crate::error::{Error, Result};

/// One eigenvalue with its normalized eigenvector.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: StateVector,
}

/// Spectrum sorted in descending order.
///
/// `degenerate` is set when any two adjacent eigenvalues sit within
/// [`TOL_DEGENERACY`] of each other, the regime where the eigenbasis stops
/// being unique.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    pub pairs: Vec<Eigenpair>,
    pub degenerate: bool,
}

impl Eigendecomposition {
    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }
}

/// Eigendecomposition of a Hermitian matrix of dimension at most 4.
pub fn eig_hermitian(h: &DensityOperator) -> Result<Eigendecomposition> {
    let dim = h.dim();
    let (values, vectors) = match dim {
        1 => (vec![h.entry(0, 0).re], vec![Complex64::ONE]),
        2 => eig_2x2(h.entry(0, 0).re, h.entry(0, 1), h.entry(1, 1).re),
        3 | 4 => jacobi(h.entries(), dim),
        d => return Err(Error::DimTooLarge { dim: d, max: 4 }),
    };

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));

    let pairs: Vec<Eigenpair> = order
        .iter()
        .map(|&k| {
            let column: Vec<Complex64> = (0..dim).map(|i| vectors[i * dim + k]).collect();
            let norm = column.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let vector = StateVector::new(column.into_iter().map(|z| z / norm).collect())
                .expect("eigenvector columns are normalized");
            Eigenpair {
                value: values[k],
                vector,
            }
        })
        .collect();

    let degenerate = pairs
        .windows(2)
        .any(|w| (w[0].value - w[1].value).abs() <= TOL_DEGENERACY);
    Ok(Eigendecomposition { pairs, degenerate })
}

/// Closed-form spectrum of [[a, b], [conj(b), c]] with a, c real.
/// Returns unsorted (values, column-major-as-row-major vectors).
fn eig_2x2(a: f64, b: Complex64, c: f64) -> (Vec<f64>, Vec<Complex64>) {
    let zero = Complex64::ZERO;
    let one = Complex64::ONE;
    if b.norm() < 1e-300 {
        return (vec![a, c], vec![one, zero, zero, one]);
    }
    let mid = 0.5 * (a + c);
    let half = 0.5 * (a - c);
    let disc = (half * half + b.norm_sqr()).sqrt();
    let hi = mid + disc;
    let lo = mid - disc;

    // Pick whichever residual formula is better conditioned for the top
    // eigenvector, then take the orthogonal complement for the other.
    let v_hi = if (hi - a).abs() >= (hi - c).abs() {
        [b, Complex64::new(hi - a, 0.0)]
    } else {
        [Complex64::new(hi - c, 0.0), b.conj()]
    };
    let norm = (v_hi[0].norm_sqr() + v_hi[1].norm_sqr()).sqrt();
    let v_hi = [v_hi[0] / norm, v_hi[1] / norm];
    let v_lo = [-v_hi[1].conj(), v_hi[0].conj()];

    // columns: k = 0 holds hi, k = 1 holds lo
    (vec![hi, lo], vec![v_hi[0], v_lo[0], v_hi[1], v_lo[1]])
}

/// Eigenvalues only, any dimension. Used for positivity validation and
/// entropy; vectors are computed but discarded.
pub(crate) fn hermitian_eigenvalues(entries: &[Complex64], dim: usize) -> Vec<f64> {
    match dim {
        1 => vec![entries[0].re],
        2 => eig_2x2(entries[0].re, entries[1], entries[3].re).0,
        _ => jacobi(entries, dim).0,
    }
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi for complex Hermitian matrices. Returns unsorted
/// eigenvalues and the accumulated rotation matrix (eigenvectors as columns).
fn jacobi(entries: &[Complex64], dim: usize) -> (Vec<f64>, Vec<Complex64>) {
    let mut h = entries.to_vec();
    let mut v = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = Complex64::ONE;
    }

    let scale: f64 = entries
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| h[i * dim + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }

        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = h[p * dim + q];
                let mag = apq.norm();
                if mag <= 1e-18 * scale {
                    continue;
                }
                let app = h[p * dim + p].re;
                let aqq = h[q * dim + q].re;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;

                // Right-multiply columns p, q of H and V by the rotation,
                // then left-multiply rows p, q of H by its adjoint.
                let (s_phase, s_conj) = (phase * sin, phase.conj() * sin);
                for i in 0..dim {
                    let hip = h[i * dim + p];
                    let hiq = h[i * dim + q];
                    h[i * dim + p] = cos * hip - s_conj * hiq;
                    h[i * dim + q] = s_phase * hip + cos * hiq;

                    let vip = v[i * dim + p];
                    let viq = v[i * dim + q];
                    v[i * dim + p] = cos * vip - s_conj * viq;
                    v[i * dim + q] = s_phase * vip + cos * viq;
                }
                for j in 0..dim {
                    let hpj = h[p * dim + j];
                    let hqj = h[q * dim + j];
                    h[p * dim + j] = cos * hpj - s_phase * hqj;
                    h[q * dim + j] = s_conj * hpj + cos * hqj;
                }
            }
        }
    }

    let values = (0..dim).map(|i| h[i * dim + i].re).collect();
    (values, v)
}
