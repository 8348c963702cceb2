//! The named states of an ideal two-outcome measurement.
//!
//! A system qubit starts in a superposition `c1|s1> + c2|s2>`. A pointer
//! qubit (the apparatus) starts in its ready state. The measurement
//! interaction is an explicit unitary, a controlled pointer shift, and its
//! output is the entangled state `c1|s1 a1> + c2|s2 a2>`. From there this
//! module derives the collapsed mixture, the local (reduced) density
//! operators, Schmidt diagnostics, the basis-ambiguity test, and the
//! half-life clock that drives the decaying-nucleus example.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{
    self, apply, eig_hermitian, tensor, BipartiteShape, DensityOperator, Operator, StateVector,
    Subsystem, TOL_DEGENERACY, TOL_EXACT,
};

/// Reduced eigenvalues above this count toward the Schmidt rank.
pub const SCHMIDT_CUTOFF: f64 = 1e-9;

/// The branch amplitudes (c1, c2) with |c1|^2 + |c2|^2 = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    c1: Complex64,
    c2: Complex64,
}

impl Amplitudes {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        if ![c1, c2]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "branch amplitudes",
            });
        }
        let residual = (c1.norm_sqr() + c2.norm_sqr() - 1.0).abs();
        if residual > TOL_EXACT {
            return Err(Error::NotNormalized { residual });
        }
        Ok(Self { c1, c2 })
    }

    /// Equal weights, c1 = c2 = 1/sqrt(2).
    pub fn balanced() -> Self {
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { c1: amp, c2: amp }
    }

    /// Real non-negative amplitudes from the first branch probability.
    pub fn from_probability(p1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::ProbabilityOutOfRange { value: p1 });
        }
        Ok(Self {
            c1: Complex64::new(p1.sqrt(), 0.0),
            c2: Complex64::new((1.0 - p1).sqrt(), 0.0),
        })
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    /// Born weight of the first branch, |c1|^2.
    pub fn p1(&self) -> f64 {
        self.c1.norm_sqr()
    }

    /// Born weight of the second branch, |c2|^2.
    pub fn p2(&self) -> f64 {
        self.c2.norm_sqr()
    }
}

/// The post-interaction entangled state `c1|s1 a1> + c2|s2 a2>`.
///
/// Only the composite indices 0 and 3 are populated (the index convention of
/// [`BipartiteShape`]), a fact the constructor inherits from the controlled
/// pointer shift rather than asserting by hand.
#[derive(Debug, Clone)]
pub struct MeasurementState {
    psi: StateVector,
    shape: BipartiteShape,
    amplitudes: Amplitudes,
}

impl MeasurementState {
    pub fn psi(&self) -> &StateVector {
        &self.psi
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amplitudes
    }
}

/// The system alone: `c1|s1> + c2|s2>`.
pub fn superposition(a: &Amplitudes) -> StateVector {
    StateVector::new(vec![a.c1, a.c2])
        .expect("validated amplitudes form a normalized state")
        .with_label("S")
}

/// The apparatus ready state (the pointer rests on its first position).
pub fn pointer_ready() -> StateVector {
    StateVector::basis(2, 0).with_label("A ready")
}

/// The measurement interaction: a controlled pointer shift that moves the
/// pointer to position i when the system is in branch i. It is a permutation
/// (|s1 a> untouched, |s2 a1> <-> |s2 a2|), hence unitary and involutive.
pub fn measurement_interaction() -> Operator {
    let o = Complex64::ZERO;
    let l = Complex64::ONE;
    Operator::new(
        4,
        vec![
            l, o, o, o, //
            o, l, o, o, //
            o, o, o, l, //
            o, o, l, o,
        ],
    )
    .expect("4x4 permutation matrix")
}

/// Run the measurement interaction on `superposition(a) (x) ready`.
///
/// The entangled output is produced by actually applying the unitary, not by
/// writing the answer down, so unitarity and normalization are checked on
/// every call.
pub fn premeasure(a: &Amplitudes) -> MeasurementState {
    let input = tensor(&superposition(a), &pointer_ready()).expect("2 x 2 fits");
    let psi = apply(&measurement_interaction(), &input)
        .expect("the measurement interaction is unitary")
        .with_label("SA");
    MeasurementState {
        psi,
        shape: BipartiteShape::two_qubits(),
        amplitudes: *a,
    }
}

/// The balanced entangled pair, the workhorse state of the interferometry
/// experiments.
pub fn bell_pair() -> MeasurementState {
    premeasure(&Amplitudes::balanced())
}

/// The incoherent counterpart of [`premeasure`]: branch projectors mixed
/// with their Born weights, `|c1|^2 |s1 a1><s1 a1| + |c2|^2 |s2 a2><s2 a2|`.
/// Unlike the entangled pure state it carries no coherence between branches.
pub fn collapse_mixture(a: &Amplitudes) -> DensityOperator {
    DensityOperator::from_diagonal(&[a.p1(), 0.0, 0.0, a.p2()])
        .expect("Born weights form a unit-trace diagonal")
}

/// Local density operators of the measurement state:
/// `rho_S = |c1|^2 |s1><s1| + |c2|^2 |s2><s2|`, and the same weights on the
/// pointer side. Both have unit trace.
///
/// Built directly from the branch weights; `qlinalg::partial_trace` over the
/// actual entangled state is the independent route the tests compare against.
pub fn reduced_states(m: &MeasurementState) -> (DensityOperator, DensityOperator) {
    let a = m.amplitudes();
    let diag = [a.p1(), a.p2()];
    (
        DensityOperator::from_diagonal(&diag).expect("unit trace"),
        DensityOperator::from_diagonal(&diag).expect("unit trace"),
    )
}

/// Schmidt rank and entanglement entropy of a bipartite pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub schmidt_rank: usize,
    pub entanglement_entropy: f64,
}

pub fn entanglement_report(psi: &StateVector, shape: BipartiteShape) -> Result<EntanglementReport> {
    let rho_s = qlinalg::reduced_from_pure(psi, shape, Subsystem::S)?;
    let schmidt_rank = eig_hermitian(&rho_s)?
        .values()
        .into_iter()
        .filter(|&lambda| lambda > SCHMIDT_CUTOFF)
        .count();
    Ok(EntanglementReport {
        schmidt_rank,
        entanglement_entropy: rho_s.entropy(),
    })
}

/// Outcome of the eigenbasis-uniqueness test on a qubit density operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisAmbiguity {
    /// True when the spectrum is degenerate and the eigenbasis is arbitrary.
    pub ambiguous: bool,
    /// The eigenvalue gap that was measured.
    pub gap: f64,
}

/// The eigenbasis of a qubit density operator is unique exactly when its two
/// eigenvalues differ; a gap at or below [`TOL_DEGENERACY`] flags the
/// degenerate case.
pub fn basis_ambiguity(rho: &DensityOperator) -> Result<BasisAmbiguity> {
    if rho.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let values = eig_hermitian(rho)?.values();
    let gap = values[0] - values[1];
    Ok(BasisAmbiguity {
        ambiguous: gap <= TOL_DEGENERACY,
        gap,
    })
}

/// A decaying two-state system read against its half-life.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLifeClock {
    half_life: f64,
    t: f64,
}

impl HalfLifeClock {
    pub fn new(half_life: f64, t: f64) -> Result<Self> {
        if !half_life.is_finite() || half_life <= 0.0 {
            return Err(Error::InvalidHalfLife { half_life });
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::NegativeTime { t });
        }
        Ok(Self { half_life, t })
    }

    pub fn half_life(&self) -> f64 {
        self.half_life
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Probability that no decay has happened yet: 2^(-t/T).
    pub fn survival_probability(&self) -> f64 {
        (-self.t / self.half_life).exp2()
    }
}

/// Branch amplitudes of the nucleus-cat system at time t: the undecayed
/// ("alive") branch carries weight 2^(-t/T), the decayed branch the rest.
/// Both amplitudes are real and non-negative.
pub fn cat_amplitudes(clock: &HalfLifeClock) -> Amplitudes {
    Amplitudes::from_probability(clock.survival_probability())
        .expect("survival probability lies in (0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{density_of, partial_trace};
    use num_complex::Complex64 as C;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn max_entry_diff(a: &DensityOperator, b: &DensityOperator) -> f64 {
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn superposition_stores_amplitudes_verbatim() {
        let a = Amplitudes::new(c(1.0, 0.0), C::ZERO).unwrap();
        assert_eq!(superposition(&a).amps(), &[C::ONE, C::ZERO]);

        let b = Amplitudes::balanced();
        let psi = superposition(&b);
        assert!((psi.amp(0).re - FRAC_1_SQRT_2).abs() < TOL_EXACT);
        assert!((psi.amp(1).re - FRAC_1_SQRT_2).abs() < TOL_EXACT);

        let complex = Amplitudes::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let psi = superposition(&complex);
        assert_eq!(psi.amp(0), c(0.6, 0.0));
        assert_eq!(psi.amp(1), c(0.0, 0.8));
    }

    #[test]
    fn amplitudes_reject_unnormalized() {
        match Amplitudes::new(c(1.0, 0.0), c(0.5, 0.0)) {
            Err(Error::NotNormalized { residual }) => assert!((residual - 0.25).abs() < 1e-14),
            other => panic!("expected NotNormalized, got {other:?}"),
        }
    }

    #[test]
    fn premeasure_single_branch_is_product_state() {
        let m = premeasure(&Amplitudes::new(C::ONE, C::ZERO).unwrap());
        assert_eq!(m.psi().amps(), StateVector::basis(4, 0).amps());
        let report = entanglement_report(m.psi(), m.shape()).unwrap();
        assert_eq!(report.schmidt_rank, 1);
        assert!(report.entanglement_entropy.abs() < TOL_EXACT);
    }

    #[test]
    fn premeasure_balanced_pair() {
        let m = bell_pair();
        assert!((m.psi().amp(0).re - FRAC_1_SQRT_2).abs() < TOL_EXACT);
        assert!((m.psi().amp(3).re - FRAC_1_SQRT_2).abs() < TOL_EXACT);
        assert_eq!(m.psi().amp(1), C::ZERO);
        assert_eq!(m.psi().amp(2), C::ZERO);
    }

    #[test]
    fn premeasure_populates_only_branch_indices() {
        // weights 0.36 / 0.64, applied through the interaction matrix
        let m = premeasure(&Amplitudes::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap());
        assert_eq!(m.psi().amp(0), c(0.6, 0.0));
        assert_eq!(m.psi().amp(1), C::ZERO);
        assert_eq!(m.psi().amp(2), C::ZERO);
        assert_eq!(m.psi().amp(3), c(0.8, 0.0));
    }

    #[test]
    fn measurement_interaction_is_unitary_and_involutive() {
        let u = measurement_interaction();
        assert!(u.unitarity_residual() < TOL_EXACT);
        let twice = u.compose(&u).unwrap();
        let id = Operator::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                assert!((twice.entry(i, j) - id.entry(i, j)).norm() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn collapse_mixture_diagonals() {
        let balanced = collapse_mixture(&Amplitudes::balanced());
        for (i, want) in [(0, 0.5), (1, 0.0), (2, 0.0), (3, 0.5)] {
            assert!((balanced.entry(i, i).re - want).abs() < TOL_EXACT);
        }

        let single = collapse_mixture(&Amplitudes::new(C::ONE, C::ZERO).unwrap());
        assert!((single.entry(0, 0).re - 1.0).abs() < TOL_EXACT);

        let skewed = collapse_mixture(&Amplitudes::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap());
        assert!((skewed.entry(0, 0).re - 0.36).abs() < TOL_EXACT);
        assert!((skewed.entry(3, 3).re - 0.64).abs() < TOL_EXACT);
        assert!((skewed.trace() - 1.0).abs() < TOL_EXACT);
    }

    #[test]
    fn reduced_states_match_partial_trace_route() {
        for (re1, im1) in [(FRAC_1_SQRT_2, 0.0), (1.0, 0.0), (0.6, 0.0), (0.48, 0.36)] {
            let p1: f64 = re1 * re1 + im1 * im1;
            let c2 = (1.0 - p1).sqrt();
            let a = Amplitudes::new(c(re1, im1), c(c2, 0.0)).unwrap();
            let m = premeasure(&a);
            let (rho_s, rho_a) = reduced_states(&m);
            let rho = density_of(m.psi());
            let oracle_s = partial_trace(&rho, m.shape(), Subsystem::S).unwrap();
            let oracle_a = partial_trace(&rho, m.shape(), Subsystem::A).unwrap();
            assert!(max_entry_diff(&rho_s, &oracle_s) < TOL_EXACT);
            assert!(max_entry_diff(&rho_a, &oracle_a) < TOL_EXACT);
        }
    }

    #[test]
    fn reduced_states_named_cases() {
        let (rho_s, rho_a) = reduced_states(&bell_pair());
        for rho in [&rho_s, &rho_a] {
            assert!((rho.entry(0, 0).re - 0.5).abs() < TOL_EXACT);
            assert!((rho.entry(1, 1).re - 0.5).abs() < TOL_EXACT);
        }

        let (rho_s, _) = reduced_states(&premeasure(&Amplitudes::new(C::ONE, C::ZERO).unwrap()));
        assert!((rho_s.entry(0, 0).re - 1.0).abs() < TOL_EXACT);

        let (rho_s, rho_a) = reduced_states(&premeasure(
            &Amplitudes::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap(),
        ));
        assert!((rho_s.entry(0, 0).re - 0.36).abs() < TOL_EXACT);
        assert!((rho_a.entry(1, 1).re - 0.64).abs() < TOL_EXACT);
    }

    #[test]
    fn entanglement_report_tracks_branch_population() {
        let balanced = bell_pair();
        let report = entanglement_report(balanced.psi(), balanced.shape()).unwrap();
        assert_eq!(report.schmidt_rank, 2);
        assert!((report.entanglement_entropy - LN_2).abs() < 1e-10);

        let skewed = premeasure(&Amplitudes::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap());
        let report = entanglement_report(skewed.psi(), skewed.shape()).unwrap();
        assert_eq!(report.schmidt_rank, 2);
        let expected = -(0.36f64 * 0.36f64.ln() + 0.64 * 0.64f64.ln());
        assert!((report.entanglement_entropy - expected).abs() < 1e-10);
    }

    #[test]
    fn basis_ambiguity_thresholds() {
        let mixed = DensityOperator::from_diagonal(&[0.5, 0.5]).unwrap();
        let verdict = basis_ambiguity(&mixed).unwrap();
        assert!(verdict.ambiguous);
        assert!(verdict.gap.abs() < TOL_EXACT);

        let skewed = DensityOperator::from_diagonal(&[0.36, 0.64]).unwrap();
        let verdict = basis_ambiguity(&skewed).unwrap();
        assert!(!verdict.ambiguous);
        assert!((verdict.gap - 0.28).abs() < TOL_EXACT);

        let hairline = DensityOperator::from_diagonal(&[0.5 + 1e-12, 0.5 - 1e-12]).unwrap();
        let verdict = basis_ambiguity(&hairline).unwrap();
        assert!(verdict.ambiguous);
        assert!((verdict.gap - 2e-12).abs() < 1e-13);

        // gaps just below and well above the 1e-9 threshold
        let below = DensityOperator::from_diagonal(&[0.5 + 4e-10, 0.5 - 4e-10]).unwrap();
        assert!(basis_ambiguity(&below).unwrap().ambiguous);
        let above = DensityOperator::from_diagonal(&[0.5 + 5e-9, 0.5 - 5e-9]).unwrap();
        assert!(!basis_ambiguity(&above).unwrap().ambiguous);
    }

    #[test]
    fn basis_ambiguity_rejects_wrong_dimension() {
        let big = collapse_mixture(&Amplitudes::balanced());
        assert!(matches!(
            basis_ambiguity(&big),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn cat_amplitudes_follow_survival_law() {
        let fresh = cat_amplitudes(&HalfLifeClock::new(1.0, 0.0).unwrap());
        assert_eq!(fresh.c1(), C::ONE);
        assert_eq!(fresh.c2(), C::ZERO);

        // at one half-life the branches tie and the local basis degenerates
        let at_t = cat_amplitudes(&HalfLifeClock::new(1.0, 1.0).unwrap());
        assert!((at_t.p1() - 0.5).abs() < TOL_EXACT);
        let (rho_s, _) = reduced_states(&premeasure(&at_t));
        assert!(basis_ambiguity(&rho_s).unwrap().ambiguous);

        let late = cat_amplitudes(&HalfLifeClock::new(1.0, 2.0).unwrap());
        assert!((late.p1() - 0.25).abs() < TOL_EXACT);
        assert!((late.p2() - 0.75).abs() < TOL_EXACT);
    }

    #[test]
    fn half_life_clock_validation() {
        assert!(matches!(
            HalfLifeClock::new(0.0, 1.0),
            Err(Error::InvalidHalfLife { .. })
        ));
        assert!(matches!(
            HalfLifeClock::new(-2.0, 1.0),
            Err(Error::InvalidHalfLife { .. })
        ));
        assert!(matches!(
            HalfLifeClock::new(1.0, -0.5),
            Err(Error::NegativeTime { .. })
        ));
    }

    #[test]
    fn purity_dichotomy_global_pure_local_mixed() {
        for p1 in [0.5, 0.36, 0.91, 1.0] {
            let a = Amplitudes::from_probability(p1).unwrap();
            let m = premeasure(&a);
            assert!((density_of(m.psi()).purity() - 1.0).abs() < TOL_EXACT);
            let (rho_s, _) = reduced_states(&m);
            let expected = p1 * p1 + (1.0 - p1) * (1.0 - p1);
            assert!((rho_s.purity() - expected).abs() < TOL_EXACT);
        }
    }
}
