//! The two-station photon-pair experiment.
//!
//! Each photon enters its station on one of two paths, passes a variable
//! phase shifter on one input path, and meets a balanced splitter whose two
//! outputs feed detectors `u` and `d`. Station S carries its shifter on
//! path 2; station A carries its shifter on path 1 and labels its detectors
//! with the opposite convention (equivalently, its splitter puts the factor
//! -i on the reflected path). With the entangled pair
//! `(|s1 a1> + |s2 a2>)/sqrt(2)` these choices give the joint coincidence
//! law
//!
//! ```text
//! p_uu = p_dd = (1 + cos(phi_s - phi_a)) / 4
//! p_ud = p_du = (1 - cos(phi_s - phi_a)) / 4
//! ```
//!
//! so paired detectors agree at equal phases, while each station's own
//! marginal stays flat at 1/2 no matter what the other station does. The
//! module computes joint distributions, marginals, the correlation E, fringe
//! visibility, CHSH, a quantitative no-signaling audit, and the side-by-side
//! phase-flip comparison.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{apply, DensityOperator, Operator, StateVector, Subsystem, TOL_EXACT};
use crate::states::MeasurementState;

/// Phase-shifter settings of the two stations, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSettings {
    pub phi_s: f64,
    pub phi_a: f64,
}

impl PhaseSettings {
    pub fn new(phi_s: f64, phi_a: f64) -> Self {
        Self { phi_s, phi_a }
    }
}

/// The two analyzer phases per station of a CHSH run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl ChshSettings {
    /// The angles that maximize |S| for the balanced pair:
    /// a = 0, a' = pi/2, b = pi/4, b' = 3pi/4.
    pub fn standard() -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
        Self {
            a: 0.0,
            a_prime: FRAC_PI_2,
            b: FRAC_PI_4,
            b_prime: 0.75 * PI,
        }
    }
}

/// Probabilities of the four coincidence outcomes (u/d at S) x (u/d at A).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    p_uu: f64,
    p_ud: f64,
    p_du: f64,
    p_dd: f64,
}

impl JointDistribution {
    pub fn new(p_uu: f64, p_ud: f64, p_du: f64, p_dd: f64) -> Result<Self> {
        let probs = [p_uu, p_ud, p_du, p_dd];
        if !probs.iter().all(|p| p.is_finite()) {
            return Err(Error::NonFinite {
                what: "joint probabilities",
            });
        }
        for &p in &probs {
            if !(-TOL_EXACT..=1.0 + TOL_EXACT).contains(&p) {
                return Err(Error::ProbabilityOutOfRange { value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > TOL_EXACT {
            return Err(Error::ProbabilitiesNotNormalized { sum });
        }
        Ok(Self {
            p_uu,
            p_ud,
            p_du,
            p_dd,
        })
    }

    pub fn p_uu(&self) -> f64 {
        self.p_uu
    }

    pub fn p_ud(&self) -> f64 {
        self.p_ud
    }

    pub fn p_du(&self) -> f64 {
        self.p_du
    }

    pub fn p_dd(&self) -> f64 {
        self.p_dd
    }

    /// Outcome order uu, ud, du, dd.
    pub fn as_array(&self) -> [f64; 4] {
        [self.p_uu, self.p_ud, self.p_du, self.p_dd]
    }
}

/// Input to the stations: either a pure pair state or a mixed one.
#[derive(Debug, Clone)]
pub enum PairState {
    Pure(StateVector),
    Mixed(DensityOperator),
}

impl PairState {
    /// The balanced entangled pair `(|s1 a1> + |s2 a2>)/sqrt(2)`.
    pub fn bell() -> Self {
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PairState::Pure(
            StateVector::new(vec![amp, Complex64::ZERO, Complex64::ZERO, amp])
                .expect("balanced pair is normalized"),
        )
    }

    pub fn dim(&self) -> usize {
        match self {
            PairState::Pure(psi) => psi.dim(),
            PairState::Mixed(rho) => rho.dim(),
        }
    }
}

impl From<StateVector> for PairState {
    fn from(psi: StateVector) -> Self {
        PairState::Pure(psi)
    }
}

impl From<DensityOperator> for PairState {
    fn from(rho: DensityOperator) -> Self {
        PairState::Mixed(rho)
    }
}

impl From<&MeasurementState> for PairState {
    fn from(m: &MeasurementState) -> Self {
        PairState::Pure(m.psi().clone())
    }
}

fn splitter_entries() -> [Complex64; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        Complex64::new(h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, h),
        Complex64::new(h, 0.0),
    ]
}

/// Station S: phase `e^{i phi}` on input path 2, then the balanced splitter
/// that sends path 1 to `(|u> + i|d>)/sqrt(2)`.
///
/// For the single-station input `(|path1> + |path2>)/sqrt(2)` this gives the
/// fringe `P(u) = (1 - sin phi)/2`.
pub fn station_unitary(phi: f64) -> Operator {
    let [b00, b01, b10, b11] = splitter_entries();
    let shift = Complex64::cis(phi);
    Operator::new(2, vec![b00, b01 * shift, b10, b11 * shift]).expect("2x2 station")
}

/// Station A: phase `e^{i phi}` on input path 1, splitter outputs labeled
/// opposite to station S. The relabeling is what makes paired detectors
/// agree (rather than disagree) at equal phase settings.
pub fn station_unitary_a(phi: f64) -> Operator {
    let [b00, b01, b10, b11] = splitter_entries();
    let shift = Complex64::cis(phi);
    // rows swapped relative to station S, phase column on path 1
    Operator::new(2, vec![b10 * shift, b11, b00 * shift, b01]).expect("2x2 station")
}

fn validate_pair_input(state: &PairState, settings: &PhaseSettings) -> Result<()> {
    if state.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: state.dim(),
        });
    }
    if !settings.phi_s.is_finite() || !settings.phi_a.is_finite() {
        return Err(Error::NonFinite {
            what: "phase settings",
        });
    }
    Ok(())
}

/// Born-rule probabilities of the four detector coincidences after both
/// stations act.
pub fn joint_distribution(
    state: &PairState,
    settings: &PhaseSettings,
) -> Result<JointDistribution> {
    validate_pair_input(state, settings)?;
    let u = station_unitary(settings.phi_s).tensor(&station_unitary_a(settings.phi_a))?;
    let p = match state {
        PairState::Pure(psi) => {
            let out = apply(&u, psi)?;
            out.probabilities()
        }
        PairState::Mixed(rho) => {
            // diagonal of U rho U*
            let mut p = vec![0.0f64; 4];
            for (k, pk) in p.iter_mut().enumerate() {
                let mut sum = Complex64::ZERO;
                for m in 0..4 {
                    for n in 0..4 {
                        sum += u.entry(k, m) * rho.entry(m, n) * u.entry(k, n).conj();
                    }
                }
                *pk = sum.re;
            }
            p
        }
    };
    JointDistribution::new(p[0], p[1], p[2], p[3])
}

/// Single-station outcome probabilities, summed over the other station.
pub fn marginal(j: &JointDistribution, which: Subsystem) -> (f64, f64) {
    match which {
        Subsystem::S => (j.p_uu + j.p_ud, j.p_du + j.p_dd),
        Subsystem::A => (j.p_uu + j.p_du, j.p_ud + j.p_dd),
    }
}

/// The correlation E = p_uu + p_dd - p_ud - p_du, in [-1, 1].
/// For the balanced pair E = cos(phi_s - phi_a).
pub fn correlation(j: &JointDistribution) -> f64 {
    j.p_uu + j.p_dd - j.p_ud - j.p_du
}

/// Fringe contrast over one sweep of phi_s at fixed phi_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeVisibility {
    /// (max - min)/(max + min) of the coincidence rate p_uu.
    pub coincidence: f64,
    /// The same contrast for station S's own marginal P(u); zero whenever
    /// the local statistics carry no phase information.
    pub local_s: f64,
}

/// Sweep phi_s over `grid_n` evenly spaced points in [0, 2pi) and measure
/// the contrast of the coincidence rate and of the local marginal.
pub fn fringe_visibility(
    state: &PairState,
    phi_a_fixed: f64,
    grid_n: usize,
) -> Result<FringeVisibility> {
    if grid_n < MIN_GRID {
        return Err(Error::GridTooSmall {
            got: grid_n,
            min: MIN_GRID,
        });
    }
    let mut coincidence = Vec::with_capacity(grid_n);
    let mut local = Vec::with_capacity(grid_n);
    for phi_s in phase_grid(grid_n) {
        let j = joint_distribution(state, &PhaseSettings::new(phi_s, phi_a_fixed))?;
        coincidence.push(j.p_uu());
        local.push(marginal(&j, Subsystem::S).0);
    }
    Ok(FringeVisibility {
        coincidence: contrast(&coincidence)?,
        local_s: contrast(&local)?,
    })
}

fn contrast(rate: &[f64]) -> Result<f64> {
    let max = rate.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = rate.iter().copied().fold(f64::INFINITY, f64::min);
    if max <= 0.0 {
        return Err(Error::DegenerateFringe);
    }
    Ok((max - min) / (max + min))
}

/// The CHSH statistic S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
///
/// |S| <= 2 for every state without branch coherence, and reaches 2 sqrt(2)
/// for the balanced pair at the standard angles.
pub fn chsh(state: &PairState, s: &ChshSettings) -> Result<f64> {
    let e = |phi_s: f64, phi_a: f64| -> Result<f64> {
        Ok(correlation(&joint_distribution(
            state,
            &PhaseSettings::new(phi_s, phi_a),
        )?))
    };
    Ok(e(s.a, s.b)? - e(s.a, s.b_prime)? + e(s.a_prime, s.b)? + e(s.a_prime, s.b_prime)?)
}

/// Minimum grid resolution for sweeps and audits.
pub const MIN_GRID: usize = 8;

/// Evenly spaced phases 2 pi k / n for k = 0..n.
fn phase_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

/// Per-station result of the no-signaling audit.
#[derive(Debug, Clone, PartialEq)]
pub struct StationAudit {
    /// Largest spread of this station's P(u) as the remote phase varies,
    /// maximized over the station's own phase.
    pub max_deviation: f64,
    /// (own phase, spread of P(u) over the remote grid) for each own phase.
    pub per_phase: Vec<(f64, f64)>,
}

/// Outcome of sweeping both phases on a grid and checking that neither
/// station's marginal responds to the remote phase.
#[derive(Debug, Clone, PartialEq)]
pub struct NoSignalingAudit {
    pub max_deviation: f64,
    pub station_s: StationAudit,
    pub station_a: StationAudit,
    pub grid_n: usize,
}

/// Quantify remote-phase dependence of each station's marginal over a
/// `grid_n` x `grid_n` phase grid. Quantum states never show any: the
/// deviation stays at rounding level, and anything above that in a run
/// would mean the statistics leak the remote setting.
pub fn no_signaling_audit(state: &PairState, grid_n: usize) -> Result<NoSignalingAudit> {
    if grid_n < MIN_GRID {
        return Err(Error::GridTooSmall {
            got: grid_n,
            min: MIN_GRID,
        });
    }
    let audit_station = |which: Subsystem| -> Result<StationAudit> {
        let mut per_phase = Vec::with_capacity(grid_n);
        let mut worst = 0.0f64;
        for own in phase_grid(grid_n) {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for remote in phase_grid(grid_n) {
                let settings = match which {
                    Subsystem::S => PhaseSettings::new(own, remote),
                    Subsystem::A => PhaseSettings::new(remote, own),
                };
                let p_u = marginal(&joint_distribution(state, &settings)?, which).0;
                lo = lo.min(p_u);
                hi = hi.max(p_u);
            }
            let spread = hi - lo;
            worst = worst.max(spread);
            per_phase.push((own, spread));
        }
        Ok(StationAudit {
            max_deviation: worst,
            per_phase,
        })
    };
    let station_s = audit_station(Subsystem::S)?;
    let station_a = audit_station(Subsystem::A)?;
    let max_deviation = station_s.max_deviation.max(station_a.max_deviation);
    Ok(NoSignalingAudit {
        max_deviation,
        station_s,
        station_a,
        grid_n,
    })
}

/// Joint statistics at one phase setting, bundled for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSnapshot {
    pub settings: PhaseSettings,
    pub joint: JointDistribution,
    pub correlation: f64,
    pub marginal_s: (f64, f64),
    pub marginal_a: (f64, f64),
}

fn snapshot(state: &PairState, settings: PhaseSettings) -> Result<PhaseSnapshot> {
    let joint = joint_distribution(state, &settings)?;
    Ok(PhaseSnapshot {
        settings,
        joint,
        correlation: correlation(&joint),
        marginal_s: marginal(&joint, Subsystem::S),
        marginal_a: marginal(&joint, Subsystem::A),
    })
}

/// Side-by-side comparison of (0, 0) against (phi_s_after, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFlipReport {
    pub before: PhaseSnapshot,
    pub after: PhaseSnapshot,
}

/// Switch station S from 0 to `phi_s_after` while A holds at 0: at pi the
/// correlation flips from +1 to -1 for the balanced pair, yet A's marginal
/// stays (1/2, 1/2), which is why the flip is invisible to A alone.
pub fn phase_flip_report(state: &PairState, phi_s_after: f64) -> Result<PhaseFlipReport> {
    Ok(PhaseFlipReport {
        before: snapshot(state, PhaseSettings::new(0.0, 0.0))?,
        after: snapshot(state, PhaseSettings::new(phi_s_after, 0.0))?,
    })
}
