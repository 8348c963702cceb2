//! Experiment runners behind the `entanglab` binary.
//!
//! Each runner takes plain parameters, executes one experiment, and returns a
//! [`RunRecord`]: a JSON document with the fixed top-level keys `experiment`,
//! `parameters`, `results`, and `tool_version`. Parameter and result maps are
//! key-sorted and numbers serialize in shortest round-trip form, so two runs
//! with the same flags emit byte-identical JSON. Sweeps can also emit CSV
//! with the fixed column order `phi_s,phi_a,p_uu,p_ud,p_du,p_dd,E`.

use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::decoherence::{
    decohered_state, decoherence_factor, forward_report, reverse_and_check, EnvironmentSpec,
    MAX_EXACT_ENV_QUBITS,
};
use crate::error::{Error, Result};
use crate::interferometry::{
    chsh, correlation, fringe_visibility, joint_distribution, marginal, no_signaling_audit,
    ChshSettings, JointDistribution, PairState, PhaseSettings,
};
use crate::qlinalg::{density_of, random::random_state_vector, Subsystem};
use crate::sampler::{chsh_from_counts, estimate_e, sample_joint, SampleConfig};
use crate::states::{
    basis_ambiguity, bell_pair, cat_amplitudes, collapse_mixture, entanglement_report, premeasure,
    reduced_states, Amplitudes, HalfLifeClock,
};

/// Marginal deviations above this fail the no-signaling audit (exit code 2).
pub const NO_SIGNALING_ALERT: f64 = 1e-9;

/// One experiment run, serializable and diffable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub experiment: String,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub tool_version: String,
}

impl RunRecord {
    fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            parameters: Map::new(),
            results: Map::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    fn result(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("run records hold only plain JSON values")
    }
}

/// Which pair state an experiment runs on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateChoice {
    /// The balanced entangled pair.
    Bell,
    /// The collapsed (incoherent) mixture of the two branches.
    Mixture,
    /// An entangled pair with explicit branch amplitudes.
    Custom(Amplitudes),
    /// A seeded random pure two-qubit state.
    Random { seed: u64 },
}

impl StateChoice {
    pub fn pair_state(&self) -> PairState {
        match self {
            StateChoice::Bell => PairState::bell(),
            StateChoice::Mixture => PairState::from(collapse_mixture(&Amplitudes::balanced())),
            StateChoice::Custom(a) => PairState::from(&premeasure(a)),
            StateChoice::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                PairState::Pure(random_state_vector(4, &mut rng))
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            StateChoice::Bell => "bell".to_string(),
            StateChoice::Mixture => "mixture".to_string(),
            StateChoice::Custom(a) => format!(
                "amplitudes c1={} c2={}",
                format_complex(a.c1()),
                format_complex(a.c2())
            ),
            StateChoice::Random { seed } => format!("random seed={seed}"),
        }
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parse `a`, `bi`, `a+bi`, or `a-bi` into a complex amplitude.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty amplitude".to_string());
    }
    // pure imaginary or pure real
    if let Some(body) = s.strip_suffix(['i', 'j']) {
        // find the split between the real part and the trailing imaginary term
        let signs: Vec<usize> = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| {
                (c == '+' || c == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
            })
            .map(|(k, _)| k)
            .collect();
        return match signs.last() {
            None => {
                let im = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body.parse::<f64>().map_err(|e| e.to_string())?,
                };
                Ok(Complex64::new(0.0, im))
            }
            Some(&k) => {
                let re: f64 = body[..k]
                    .parse()
                    .map_err(|_| format!("bad real part in `{text}`"))?;
                let im_text = &body[k..];
                let im = match im_text {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => im_text
                        .parse::<f64>()
                        .map_err(|_| format!("bad imaginary part in `{text}`"))?,
                };
                Ok(Complex64::new(re, im))
            }
        };
    }
    s.parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .map_err(|_| format!("cannot parse `{text}` as a complex amplitude"))
}

fn joint_value(j: &JointDistribution) -> Value {
    json!({ "p_uu": j.p_uu(), "p_ud": j.p_ud(), "p_du": j.p_du(), "p_dd": j.p_dd() })
}

fn marginal_value(pair: (f64, f64)) -> Value {
    json!({ "p_u": pair.0, "p_d": pair.1 })
}

/// One phase setting: joint distribution, marginals, correlation, and the
/// fringe visibilities around it.
pub fn run_rto(phi_s: f64, phi_a: f64, state: &StateChoice) -> Result<RunRecord> {
    let pair = state.pair_state();
    let settings = PhaseSettings::new(phi_s, phi_a);
    let joint = joint_distribution(&pair, &settings)?;
    let vis = fringe_visibility(&pair, phi_a, 64)?;
    Ok(RunRecord::new("rto")
        .param("phi_s", phi_s)
        .param("phi_a", phi_a)
        .param("state", state.describe())
        .result("joint", joint_value(&joint))
        .result("marginal_s", marginal_value(marginal(&joint, Subsystem::S)))
        .result("marginal_a", marginal_value(marginal(&joint, Subsystem::A)))
        .result("E", correlation(&joint))
        .result("coincidence_visibility", vis.coincidence)
        .result("local_visibility_s", vis.local_s))
}

/// One row of a phase sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi_s: f64,
    pub phi_a: f64,
    pub joint: JointDistribution,
    pub correlation: f64,
}

/// Evaluate the joint distribution on a `grid_n` x `grid_n` phase grid,
/// phi_s-major, both phases running over 2 pi k / grid_n.
pub fn sweep_rows(state: &PairState, grid_n: usize) -> Result<Vec<SweepRow>> {
    if grid_n < crate::interferometry::MIN_GRID {
        return Err(Error::GridTooSmall {
            got: grid_n,
            min: crate::interferometry::MIN_GRID,
        });
    }
    let phase = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / grid_n as f64;
    let mut rows = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        for k in 0..grid_n {
            let settings = PhaseSettings::new(phase(i), phase(k));
            let joint = joint_distribution(state, &settings)?;
            rows.push(SweepRow {
                phi_s: settings.phi_s,
                phi_a: settings.phi_a,
                joint,
                correlation: correlation(&joint),
            });
        }
    }
    Ok(rows)
}

/// CSV with the fixed header `phi_s,phi_a,p_uu,p_ud,p_du,p_dd,E`.
/// Numbers are written in shortest round-trip form.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "phi_s,phi_a,p_uu,p_ud,p_du,p_dd,E")?;
    for row in rows {
        let [p_uu, p_ud, p_du, p_dd] = row.joint.as_array();
        let fields = [
            row.phi_s,
            row.phi_a,
            p_uu,
            p_ud,
            p_du,
            p_dd,
            row.correlation,
        ];
        let line: Vec<String> = fields
            .iter()
            .map(|v| serde_json::to_string(v).expect("finite floats serialize"))
            .collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Sweep record; rows are embedded as arrays under `results.rows` in the
/// CSV column order.
pub fn run_sweep(grid_n: usize, state: &StateChoice) -> Result<(RunRecord, Vec<SweepRow>)> {
    let rows = sweep_rows(&state.pair_state(), grid_n)?;
    let row_values: Vec<Value> = rows
        .iter()
        .map(|r| {
            let [p_uu, p_ud, p_du, p_dd] = r.joint.as_array();
            json!([r.phi_s, r.phi_a, p_uu, p_ud, p_du, p_dd, r.correlation])
        })
        .collect();
    let record = RunRecord::new("sweep")
        .param("grid_n", grid_n)
        .param("state", state.describe())
        .result(
            "columns",
            json!(["phi_s", "phi_a", "p_uu", "p_ud", "p_du", "p_dd", "E"]),
        )
        .result("rows", Value::Array(row_values));
    Ok((record, rows))
}

/// CHSH, analytic or sampled depending on whether events are requested.
pub fn run_chsh(
    state: &StateChoice,
    settings: &ChshSettings,
    events: Option<(u64, u64, u32)>,
) -> Result<RunRecord> {
    let pair = state.pair_state();
    let mut record = RunRecord::new("chsh")
        .param("state", state.describe())
        .param("a", settings.a)
        .param("a_prime", settings.a_prime)
        .param("b", settings.b)
        .param("b_prime", settings.b_prime);

    let s_analytic = chsh(&pair, settings)?;
    record = record
        .result("S", s_analytic)
        .result("violates_classical_bound", s_analytic.abs() > 2.0);

    if let Some((n_events, seed, shards)) = events {
        let cfg = SampleConfig::new(seed, n_events)?.with_shards(shards)?;
        let run = chsh_from_counts(&pair, settings, &cfg)?;
        record = record
            .param("n_events", n_events)
            .param("seed", seed)
            .param("shards", shards)
            .result("S_hat", run.estimate.value)
            .result("S_hat_std_err", run.estimate.std_err)
            .result(
                "E_hat",
                Value::Array(run.correlations.iter().map(|e| e.value.into()).collect()),
            )
            .result("empirical_violation", run.estimate.value > 2.0);
    }
    Ok(record)
}

/// No-signaling audit; the returned deviation drives the exit status.
pub fn run_nosignal(grid_n: usize, state: &StateChoice) -> Result<(RunRecord, f64)> {
    let audit = no_signaling_audit(&state.pair_state(), grid_n)?;
    let record = RunRecord::new("nosignal")
        .param("grid_n", grid_n)
        .param("state", state.describe())
        .result("max_marginal_deviation", audit.max_deviation)
        .result("station_s_max_deviation", audit.station_s.max_deviation)
        .result("station_a_max_deviation", audit.station_a.max_deviation)
        .result("threshold", NO_SIGNALING_ALERT)
        .result("pass", audit.max_deviation <= NO_SIGNALING_ALERT);
    Ok((record, audit.max_deviation))
}

/// Environment coupling on the balanced pair: factor, coherence before and
/// after, optional exact reversal.
pub fn run_decohere(env_n: usize, theta: f64, reverse: bool) -> Result<RunRecord> {
    let env = EnvironmentSpec::uniform(env_n, theta)?;
    let m = bell_pair();

    let mut record = RunRecord::new("decohere")
        .param("env_n", env_n)
        .param("theta", theta)
        .param("reverse", reverse)
        .result("factor_r", decoherence_factor(&env))
        .result("exact_path", env_n <= MAX_EXACT_ENV_QUBITS);

    if reverse {
        let report = reverse_and_check(&m, &env)?;
        record = record
            .result("coherence_before", report.coherence_before)
            .result("coherence_after_reversal", report.coherence_after)
            .result("reversible", report.reversible);
    } else {
        let report = forward_report(&m, &env)?;
        record = record
            .result("coherence_before", report.coherence_before)
            .result("coherence_after", report.coherence_after);
        if env_n <= MAX_EXACT_ENV_QUBITS {
            // cross-check the exact run against the analytic scaling
            let analytic = decohered_state(&density_of(m.psi()), &env)?;
            let drift =
                (crate::decoherence::branch_coherence(&analytic) - report.coherence_after).abs();
            record = record.result("analytic_vs_exact_drift", drift);
        }
    }
    Ok(record)
}

/// The decaying-nucleus timeline at one instant.
pub fn run_cat(half_life: f64, t: f64) -> Result<RunRecord> {
    let clock = HalfLifeClock::new(half_life, t)?;
    let amplitudes = cat_amplitudes(&clock);
    let m = premeasure(&amplitudes);
    let (rho_s, _) = reduced_states(&m);
    let verdict = basis_ambiguity(&rho_s)?;
    let report = entanglement_report(m.psi(), m.shape())?;

    Ok(RunRecord::new("cat")
        .param("half_life", half_life)
        .param("t", t)
        .result("survival_probability", clock.survival_probability())
        .result("c1", amplitudes.c1().re)
        .result("c2", amplitudes.c2().re)
        .result(
            "reduced_eigenvalues",
            json!([
                amplitudes.p1().max(amplitudes.p2()),
                amplitudes.p1().min(amplitudes.p2()),
            ]),
        )
        .result("basis_ambiguous", verdict.ambiguous)
        .result("eigenvalue_gap", verdict.gap)
        .result("entanglement_entropy", report.entanglement_entropy)
        .result("schmidt_rank", report.schmidt_rank))
}

/// Sample detection events at one phase setting and estimate E.
pub fn run_sample(
    phi_s: f64,
    phi_a: f64,
    state: &StateChoice,
    n_events: u64,
    seed: u64,
    shards: u32,
) -> Result<RunRecord> {
    let pair = state.pair_state();
    let joint = joint_distribution(&pair, &PhaseSettings::new(phi_s, phi_a))?;
    let cfg = SampleConfig::new(seed, n_events)?.with_shards(shards)?;
    let counts = sample_joint(&joint, &cfg)?;
    let e = estimate_e(&counts);

    Ok(RunRecord::new("sample")
        .param("phi_s", phi_s)
        .param("phi_a", phi_a)
        .param("state", state.describe())
        .param("n_events", n_events)
        .param("seed", seed)
        .param("shards", shards)
        .result(
            "counts",
            json!({
                "n_uu": counts.n_uu, "n_ud": counts.n_ud,
                "n_du": counts.n_du, "n_dd": counts.n_dd,
            }),
        )
        .result("E_analytic", correlation(&joint))
        .result("E_hat", e.value)
        .result("E_hat_std_err", e.std_err))
}
