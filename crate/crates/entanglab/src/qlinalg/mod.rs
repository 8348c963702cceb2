//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here is sized for few-qubit problems: state vectors and
//! operators up to dimension [`MAX_DIM`] (twelve qubits), stored dense and
//! row-major. Composite systems follow one fixed index convention, see
//! [`BipartiteShape`]. All values are immutable after construction and every
//! operation is a pure function, so the module is safe to use from concurrent
//! contexts without synchronization.

mod eig;
pub mod random;

pub use eig::{eig_hermitian, Eigendecomposition, Eigenpair};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Hilbert-space dimension accepted by constructors (twelve qubits).
pub const MAX_DIM: usize = 4096;

/// Tolerance for exact algebraic identities: norms, traces, Hermiticity,
/// unitarity.
pub const TOL_EXACT: f64 = 1e-12;

/// Tolerance for eigensolver residuals (reconstruction, restored states).
pub const TOL_EIG: f64 = 1e-10;

/// Eigenvalue gap at or below which a spectrum counts as degenerate.
pub const TOL_DEGENERACY: f64 = 1e-9;

/// One half of a bipartite split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    S,
    A,
}

/// Shape of a bipartite Hilbert space.
///
/// Composite indices are row-major with the S factor first:
/// `index = i_s * dim_a + i_a`. Every tensor product and partial trace in
/// the crate uses this convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteShape {
    dim_s: usize,
    dim_a: usize,
}

impl BipartiteShape {
    pub fn new(dim_s: usize, dim_a: usize) -> Result<Self> {
        if dim_s == 0 || dim_a == 0 {
            return Err(Error::Empty {
                what: "bipartite factor",
            });
        }
        let dim = dim_s.saturating_mul(dim_a);
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        Ok(Self { dim_s, dim_a })
    }

    /// The 2 x 2 shape of a system-apparatus (or photon-pair) split.
    pub fn two_qubits() -> Self {
        Self { dim_s: 2, dim_a: 2 }
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim(&self) -> usize {
        self.dim_s * self.dim_a
    }

    pub fn composite_index(&self, i_s: usize, i_a: usize) -> usize {
        debug_assert!(i_s < self.dim_s && i_a < self.dim_a);
        i_s * self.dim_a + i_a
    }

    /// Inverse of [`composite_index`](Self::composite_index).
    pub fn split(&self, index: usize) -> (usize, usize) {
        (index / self.dim_a, index % self.dim_a)
    }
}

fn all_finite(entries: &[Complex64]) -> bool {
    entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A normalized pure state over a finite basis.
///
/// The squared amplitudes sum to 1 within [`TOL_EXACT`]; constructors reject
/// anything else, so a `StateVector` in hand is always a valid state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    label: Option<String>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Empty {
                what: "state vector",
            });
        }
        if amps.len() > MAX_DIM {
            return Err(Error::DimTooLarge {
                dim: amps.len(),
                max: MAX_DIM,
            });
        }
        if !all_finite(&amps) {
            return Err(Error::NonFinite {
                what: "state amplitudes",
            });
        }
        let residual = (amps.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs();
        if residual > TOL_EXACT {
            return Err(Error::NotNormalized { residual });
        }
        Ok(Self { amps, label: None })
    }

    /// The basis ket `|index>` in a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Self { amps, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Born-rule probabilities of the basis outcomes.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// A dense square matrix acting on state vectors.
///
/// Not constrained to be unitary; [`apply`] checks unitarity at the point of
/// use and reports the residual when the check fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty { what: "operator" });
        }
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite {
                what: "operator entries",
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Operator {
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Operator { dim: d, entries }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = self.entries[i * d + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += aik * other.entries[k * d + j];
                }
            }
        }
        Ok(Operator { dim: d, entries })
    }

    /// Kronecker product, S factor first (matches [`BipartiteShape`]).
    pub fn tensor(&self, other: &Operator) -> Result<Operator> {
        let dim = self.dim.saturating_mul(other.dim);
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        let (da, db) = (self.dim, other.dim);
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..da {
            for j in 0..da {
                let aij = self.entries[i * da + j];
                for k in 0..db {
                    for l in 0..db {
                        entries[(i * db + k) * dim + (j * db + l)] =
                            aij * other.entries[k * db + l];
                    }
                }
            }
        }
        Ok(Operator { dim, entries })
    }

    /// Max-entry deviation of `U* U` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let product = self.adjoint().compose(self).expect("same dim");
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((product.entries[i * d + j] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() <= TOL_EXACT
    }
}

/// A Hermitian, positive-semidefinite, trace-one matrix.
///
/// Construction validates all three properties (positivity through the
/// eigenvalues, checked for dimensions up to 64; larger matrices are
/// validated for Hermiticity and trace only, since the check is cubic and
/// nothing in this crate builds large mixed states).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

/// PSD validation cutoff; above this the eigenvalue check is skipped.
const PSD_CHECK_MAX_DIM: usize = 64;

impl DensityOperator {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty {
                what: "density operator",
            });
        }
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge { dim, max: MAX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite {
                what: "density operator entries",
            });
        }

        let mut hermiticity = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let diff = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                hermiticity = hermiticity.max(diff);
            }
        }
        if hermiticity > TOL_EXACT {
            return Err(Error::NotHermitian {
                residual: hermiticity,
            });
        }

        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > TOL_EXACT {
            return Err(Error::TraceNotOne { trace });
        }

        if dim <= PSD_CHECK_MAX_DIM {
            let eigenvalues = eig::hermitian_eigenvalues(&entries, dim);
            let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            if min < -TOL_EXACT {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }

        Ok(Self { dim, entries })
    }

    /// Diagonal mixture from a probability vector.
    pub fn from_diagonal(probabilities: &[f64]) -> Result<Self> {
        let dim = probabilities.len();
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for (i, &p) in probabilities.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(p, 0.0);
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].re)
            .sum()
    }

    /// Tr(rho^2). Equals 1 for pure states, 1/dim for the maximally mixed
    /// state. For Hermitian rho this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Von Neumann entropy, natural log, with 0 ln 0 = 0.
    pub fn entropy(&self) -> f64 {
        eig::hermitian_eigenvalues(&self.entries, self.dim)
            .into_iter()
            .filter(|&lambda| lambda > 0.0)
            .map(|lambda| -lambda * lambda.ln())
            .sum()
    }
}

/// Tensor product of two states, S factor first.
pub fn tensor(u: &StateVector, v: &StateVector) -> Result<StateVector> {
    let dim = u.dim().saturating_mul(v.dim());
    if dim > MAX_DIM {
        return Err(Error::DimTooLarge { dim, max: MAX_DIM });
    }
    let mut amps = Vec::with_capacity(dim);
    for a in u.amps() {
        for b in v.amps() {
            amps.push(a * b);
        }
    }
    StateVector::new(amps)
}

/// Apply a unitary to a state. Rejects non-unitary operators with the
/// measured residual of `U* U - I`.
pub fn apply(u: &Operator, psi: &StateVector) -> Result<StateVector> {
    if u.dim() != psi.dim() {
        return Err(Error::DimMismatch {
            expected: psi.dim(),
            got: u.dim(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > TOL_EXACT {
        return Err(Error::NotUnitary { residual });
    }
    let d = u.dim();
    let mut amps = vec![Complex64::ZERO; d];
    for (i, amp) in amps.iter_mut().enumerate() {
        for j in 0..d {
            *amp += u.entry(i, j) * psi.amp(j);
        }
    }
    StateVector::new(amps)
}

/// The projector |psi><psi| as a density operator.
pub fn density_of(psi: &StateVector) -> DensityOperator {
    let d = psi.dim();
    let mut entries = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            entries[i * d + j] = psi.amp(i) * psi.amp(j).conj();
        }
    }
    DensityOperator::new(d, entries)
        .expect("outer product of a normalized state is a valid density operator")
}

/// Trace out one subsystem of a bipartite density operator.
pub fn partial_trace(
    rho: &DensityOperator,
    shape: BipartiteShape,
    keep: Subsystem,
) -> Result<DensityOperator> {
    if rho.dim() != shape.dim() {
        return Err(Error::DimMismatch {
            expected: shape.dim(),
            got: rho.dim(),
        });
    }
    let (kept, traced) = match keep {
        Subsystem::S => (shape.dim_s(), shape.dim_a()),
        Subsystem::A => (shape.dim_a(), shape.dim_s()),
    };
    let mut entries = vec![Complex64::ZERO; kept * kept];
    for i in 0..kept {
        for j in 0..kept {
            let mut sum = Complex64::ZERO;
            for t in 0..traced {
                let (row, col) = match keep {
                    Subsystem::S => (shape.composite_index(i, t), shape.composite_index(j, t)),
                    Subsystem::A => (shape.composite_index(t, i), shape.composite_index(t, j)),
                };
                sum += rho.entry(row, col);
            }
            entries[i * kept + j] = sum;
        }
    }
    DensityOperator::new(kept, entries)
}

/// Reduced density operator of one side of a bipartite pure state, computed
/// without materializing the composite |psi><psi|. This is the cheap route
/// for large environments.
pub fn reduced_from_pure(
    psi: &StateVector,
    shape: BipartiteShape,
    keep: Subsystem,
) -> Result<DensityOperator> {
    if psi.dim() != shape.dim() {
        return Err(Error::DimMismatch {
            expected: shape.dim(),
            got: psi.dim(),
        });
    }
    let (kept, traced) = match keep {
        Subsystem::S => (shape.dim_s(), shape.dim_a()),
        Subsystem::A => (shape.dim_a(), shape.dim_s()),
    };
    let mut entries = vec![Complex64::ZERO; kept * kept];
    for i in 0..kept {
        for j in 0..kept {
            let mut sum = Complex64::ZERO;
            for t in 0..traced {
                let (ix, jx) = match keep {
                    Subsystem::S => (shape.composite_index(i, t), shape.composite_index(j, t)),
                    Subsystem::A => (shape.composite_index(t, i), shape.composite_index(t, j)),
                };
                sum += psi.amp(ix) * psi.amp(jx).conj();
            }
            entries[i * kept + j] = sum;
        }
    }
    DensityOperator::new(kept, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn max_entry_diff(a: &DensityOperator, b: &DensityOperator) -> f64 {
        assert_eq!(a.dim(), b.dim());
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn tensor_basis_case() {
        let zero = StateVector::basis(2, 0);
        let got = tensor(&zero, &zero).unwrap();
        assert_eq!(got.amps(), &[C::ONE, C::ZERO, C::ZERO, C::ZERO]);
    }

    #[test]
    fn tensor_distributes_over_superposition() {
        let plus = StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        let one = StateVector::basis(2, 1);
        let got = tensor(&plus, &one).unwrap();
        let want = [
            C::ZERO,
            c(FRAC_1_SQRT_2, 0.0),
            C::ZERO,
            c(FRAC_1_SQRT_2, 0.0),
        ];
        for (g, w) in got.amps().iter().zip(&want) {
            assert!((g - w).norm() < TOL_EXACT);
        }
    }

    #[test]
    fn tensor_with_complex_phases() {
        // ((|0> + i|1>)/sqrt2) x ((|0> - |1>)/sqrt2), expanded by hand
        let u = StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]).unwrap();
        let v = StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]).unwrap();
        let got = tensor(&u, &v).unwrap();
        let want = [c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5), c(0.0, -0.5)];
        for (g, w) in got.amps().iter().zip(&want) {
            assert!((g - w).norm() < TOL_EXACT);
        }
    }

    #[test]
    fn tensor_rejects_dimension_overflow() {
        let big = StateVector::basis(MAX_DIM, 0);
        let qubit = StateVector::basis(2, 0);
        assert!(matches!(
            tensor(&big, &qubit),
            Err(Error::DimTooLarge { .. })
        ));
    }

    #[test]
    fn apply_identity_is_noop() {
        let psi = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let got = apply(&Operator::identity(2), &psi).unwrap();
        for (g, w) in got.amps().iter().zip(psi.amps()) {
            assert!((g - w).norm() < TOL_EXACT);
        }
    }

    #[test]
    fn apply_bit_flip() {
        let x = Operator::new(2, vec![C::ZERO, C::ONE, C::ONE, C::ZERO]).unwrap();
        let got = apply(&x, &StateVector::basis(2, 0)).unwrap();
        assert_eq!(got.amps(), StateVector::basis(2, 1).amps());
    }

    #[test]
    fn apply_rejects_non_unitary() {
        let not_unitary = Operator::new(2, vec![C::ONE, C::ONE, C::ZERO, C::ONE]).unwrap();
        match apply(&not_unitary, &StateVector::basis(2, 0)) {
            Err(Error::NotUnitary { residual }) => assert!(residual > 0.5),
            other => panic!("expected NotUnitary, got {other:?}"),
        }
    }

    #[test]
    fn density_of_basis_state() {
        let rho = density_of(&StateVector::basis(2, 0));
        assert_eq!(rho.entry(0, 0), C::ONE);
        assert_eq!(rho.entry(1, 1), C::ZERO);
        assert!((rho.purity() - 1.0).abs() < TOL_EXACT);
    }

    #[test]
    fn density_of_equal_superposition() {
        let plus = StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        let rho = density_of(&plus);
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.entry(i, j) - c(0.5, 0.0)).norm() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn density_of_entangled_pair_has_corner_entries() {
        let psi = StateVector::new(vec![
            c(FRAC_1_SQRT_2, 0.0),
            C::ZERO,
            C::ZERO,
            c(FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        let rho = density_of(&psi);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!(
                (rho.entry(i, j) - c(0.5, 0.0)).norm() < TOL_EXACT,
                "({i},{j})"
            );
        }
        for (i, j) in [(1, 1), (2, 2), (0, 1), (2, 3)] {
            assert!(rho.entry(i, j).norm() < TOL_EXACT, "({i},{j})");
        }
        assert!((rho.purity() - 1.0).abs() < TOL_EXACT);
    }

    #[test]
    fn partial_trace_of_product_state_returns_factor() {
        let psi = tensor(&StateVector::basis(2, 0), &StateVector::basis(2, 1)).unwrap();
        let rho = density_of(&psi);
        let shape = BipartiteShape::two_qubits();
        let rho_s = partial_trace(&rho, shape, Subsystem::S).unwrap();
        assert!((rho_s.entry(0, 0) - C::ONE).norm() < TOL_EXACT);
        assert!(rho_s.entry(1, 1).norm() < TOL_EXACT);
        let rho_a = partial_trace(&rho, shape, Subsystem::A).unwrap();
        assert!((rho_a.entry(1, 1) - C::ONE).norm() < TOL_EXACT);
    }

    #[test]
    fn partial_trace_of_balanced_pair_is_maximally_mixed() {
        let psi = StateVector::new(vec![
            c(FRAC_1_SQRT_2, 0.0),
            C::ZERO,
            C::ZERO,
            c(FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        let rho_s = partial_trace(
            &density_of(&psi),
            BipartiteShape::two_qubits(),
            Subsystem::S,
        )
        .unwrap();
        assert!((rho_s.entry(0, 0) - c(0.5, 0.0)).norm() < TOL_EXACT);
        assert!((rho_s.entry(1, 1) - c(0.5, 0.0)).norm() < TOL_EXACT);
        assert!(rho_s.entry(0, 1).norm() < TOL_EXACT);
    }

    #[test]
    fn partial_trace_weighted_pair() {
        // amplitudes 0.6, 0.8: reduced A side is diag(0.36, 0.64)
        let psi = StateVector::new(vec![c(0.6, 0.0), C::ZERO, C::ZERO, c(0.8, 0.0)]).unwrap();
        let rho_a = partial_trace(
            &density_of(&psi),
            BipartiteShape::two_qubits(),
            Subsystem::A,
        )
        .unwrap();
        assert!((rho_a.entry(0, 0).re - 0.36).abs() < TOL_EXACT);
        assert!((rho_a.entry(1, 1).re - 0.64).abs() < TOL_EXACT);
    }

    #[test]
    fn partial_trace_rejects_shape_mismatch() {
        let rho = density_of(&StateVector::basis(2, 0));
        let shape = BipartiteShape::two_qubits();
        assert!(matches!(
            partial_trace(&rho, shape, Subsystem::S),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn reduced_from_pure_matches_partial_trace() {
        let raw = [c(0.5, 0.1), c(0.3, -0.2), c(0.1, 0.4), c(0.2, 0.0)];
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi = StateVector::new(raw.iter().map(|z| z / norm).collect()).unwrap();
        let shape = BipartiteShape::two_qubits();
        for keep in [Subsystem::S, Subsystem::A] {
            let direct = reduced_from_pure(&psi, shape, keep).unwrap();
            let via_density = partial_trace(&density_of(&psi), shape, keep).unwrap();
            assert!(max_entry_diff(&direct, &via_density) < TOL_EXACT);
        }
    }

    #[test]
    fn purity_and_entropy_of_named_states() {
        let pure = density_of(&StateVector::basis(2, 0));
        assert!((pure.purity() - 1.0).abs() < TOL_EXACT);
        assert!(pure.entropy().abs() < TOL_EXACT);

        let mixed = DensityOperator::from_diagonal(&[0.5, 0.5]).unwrap();
        assert!((mixed.purity() - 0.5).abs() < TOL_EXACT);
        assert!((mixed.entropy() - std::f64::consts::LN_2).abs() < TOL_EXACT);

        let skewed = DensityOperator::from_diagonal(&[0.36, 0.64]).unwrap();
        assert!((skewed.purity() - 0.5392).abs() < TOL_EXACT);
        // -(0.36 ln 0.36 + 0.64 ln 0.64), evaluated directly
        let expected = -(0.36f64 * 0.36f64.ln() + 0.64 * 0.64f64.ln());
        assert!((skewed.entropy() - expected).abs() < TOL_EXACT);
        assert!((expected - 0.6534181947937018).abs() < 1e-15);
    }

    #[test]
    fn density_operator_rejects_bad_inputs() {
        // non-Hermitian
        let res = DensityOperator::new(2, vec![c(0.5, 0.0), c(0.2, 0.0), c(0.3, 0.0), c(0.5, 0.0)]);
        assert!(matches!(res, Err(Error::NotHermitian { .. })));
        // wrong trace
        let res = DensityOperator::new(2, vec![c(0.9, 0.0), C::ZERO, C::ZERO, c(0.9, 0.0)]);
        assert!(matches!(res, Err(Error::TraceNotOne { .. })));
        // negative eigenvalue
        let res = DensityOperator::new(
            2,
            vec![c(1.25, 0.0), c(0.75, 0.0), c(0.75, 0.0), c(-0.25, 0.0)],
        );
        assert!(matches!(res, Err(Error::NotPositiveSemidefinite { .. })));
    }

    #[test]
    fn state_vector_rejects_unnormalized_and_nonfinite() {
        assert!(matches!(
            StateVector::new(vec![C::ONE, C::ONE]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::new(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn composite_index_convention() {
        let shape = BipartiteShape::new(2, 3).unwrap();
        assert_eq!(shape.composite_index(1, 2), 5);
        assert_eq!(shape.split(5), (1, 2));
        assert_eq!(shape.split(shape.composite_index(0, 2)), (0, 2));
    }
}
