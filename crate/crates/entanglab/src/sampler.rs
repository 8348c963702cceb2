//! Seeded Monte Carlo detection events.
//!
//! The generator contract is frozen so that a (seed, shards, n_events,
//! distribution) tuple always produces the same counts, on any platform and
//! in any evaluation order:
//!
//! - Stream generator: ChaCha8 (`rand_chacha`), one instance per shard.
//! - Sub-seed derivation: `mix_seed(seed, k)`, the SplitMix64 step
//!   (add k times the golden-gamma constant, then the xor-shift-multiply
//!   finalizer). CHSH runs derive one sub-seed per settings pair the same
//!   way, then per shard below it.
//! - Uniform doubles: the top 53 bits of `next_u64`, scaled by 2^-53.
//! - Outcome choice: inverse CDF over the cumulative probabilities in the
//!   fixed order uu, ud, du, dd. A zero-probability outcome owns an empty
//!   interval and is never drawn.
//!
//! Shards partition `n_events` as evenly as possible (earlier shards take
//! the remainder) and their counts are merged by addition, so results do not
//! depend on completion order and shards may run concurrently.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interferometry::{
    correlation, joint_distribution, ChshSettings, JointDistribution, PairState, PhaseSettings,
};

/// Reproducibility contract of one sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub n_events: u64,
    pub shards: u32,
}

impl SampleConfig {
    pub fn new(seed: u64, n_events: u64) -> Result<Self> {
        if n_events == 0 {
            return Err(Error::NoEvents);
        }
        Ok(Self {
            seed,
            n_events,
            shards: 1,
        })
    }

    pub fn with_shards(mut self, shards: u32) -> Result<Self> {
        if shards == 0 {
            return Err(Error::Empty { what: "shard set" });
        }
        self.shards = shards;
        Ok(self)
    }
}

/// Event counts per coincidence outcome; the four fields sum to `n_events`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountsTable {
    pub n_uu: u64,
    pub n_ud: u64,
    pub n_du: u64,
    pub n_dd: u64,
}

impl CountsTable {
    pub fn total(&self) -> u64 {
        self.n_uu + self.n_ud + self.n_du + self.n_dd
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.n_uu, self.n_ud, self.n_du, self.n_dd]
    }

    /// Events where station S fired `u`, regardless of A.
    pub fn s_up(&self) -> u64 {
        self.n_uu + self.n_ud
    }

    /// Events where station A fired `u`, regardless of S.
    pub fn a_up(&self) -> u64 {
        self.n_uu + self.n_du
    }
}

/// A point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
}

/// SplitMix64 sub-seed derivation: `finalize(seed + k * 0x9E3779B97F4A7C15)`.
pub fn mix_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform in [0, 1) from the top 53 bits.
fn uniform_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draw `cfg.n_events` independent events from the four-outcome distribution.
pub fn sample_joint(j: &JointDistribution, cfg: &SampleConfig) -> Result<CountsTable> {
    if cfg.n_events == 0 {
        return Err(Error::NoEvents);
    }
    let [p_uu, p_ud, p_du, _] = j.as_array();
    let c0 = p_uu;
    let c1 = c0 + p_ud;
    let c2 = c1 + p_du;

    let shards = u64::from(cfg.shards.max(1));
    let base = cfg.n_events / shards;
    let remainder = cfg.n_events % shards;

    let mut counts = CountsTable::default();
    for shard in 0..shards {
        let events = base + u64::from(shard < remainder);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, shard));
        for _ in 0..events {
            let u = uniform_f64(&mut rng);
            if u < c0 {
                counts.n_uu += 1;
            } else if u < c1 {
                counts.n_ud += 1;
            } else if u < c2 {
                counts.n_du += 1;
            } else {
                counts.n_dd += 1;
            }
        }
    }
    Ok(counts)
}

/// Empirical correlation from counts:
/// `e = (n_uu + n_dd - n_ud - n_du) / n`, with standard error
/// `sqrt((1 - e^2)/n)`.
pub fn estimate_e(c: &CountsTable) -> Estimate {
    let n = c.total() as f64;
    let value = (c.n_uu as f64 + c.n_dd as f64 - c.n_ud as f64 - c.n_du as f64) / n;
    Estimate {
        value,
        std_err: ((1.0 - value * value) / n).sqrt(),
    }
}

/// Result of a sampled CHSH run: the statistic, plus the per-settings-pair
/// correlations and raw counts that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshEstimate {
    pub estimate: Estimate,
    pub correlations: [Estimate; 4],
    pub tables: [CountsTable; 4],
    /// The analytic S for the same state and settings, for comparison.
    pub analytic: f64,
}

/// Sample all four settings pairs and combine them with the CHSH signs
/// (+, -, +, +); the standard error adds in quadrature.
pub fn chsh_from_counts(
    state: &PairState,
    s: &ChshSettings,
    cfg: &SampleConfig,
) -> Result<ChshEstimate> {
    let pairs = [
        (s.a, s.b, 1.0),
        (s.a, s.b_prime, -1.0),
        (s.a_prime, s.b, 1.0),
        (s.a_prime, s.b_prime, 1.0),
    ];

    let mut correlations = [Estimate {
        value: 0.0,
        std_err: 0.0,
    }; 4];
    let mut tables = [CountsTable::default(); 4];
    let mut total = 0.0;
    let mut variance = 0.0;
    let mut analytic = 0.0;

    for (i, &(phi_s, phi_a, sign)) in pairs.iter().enumerate() {
        let joint = joint_distribution(state, &PhaseSettings::new(phi_s, phi_a))?;
        let pair_cfg = SampleConfig {
            seed: mix_seed(cfg.seed, i as u64),
            ..*cfg
        };
        let counts = sample_joint(&joint, &pair_cfg)?;
        let e = estimate_e(&counts);
        correlations[i] = e;
        tables[i] = counts;
        total += sign * e.value;
        variance += e.std_err * e.std_err;
        analytic += sign * correlation(&joint);
    }

    Ok(ChshEstimate {
        estimate: Estimate {
            value: total,
            std_err: variance.sqrt(),
        },
        correlations,
        tables,
        analytic,
    })
}
