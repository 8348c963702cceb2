//! A numerical laboratory for bipartite measurement physics.
//!
//! The crate builds up, from a small dense complex-linear-algebra core, the
//! standard two-qubit measurement story and makes each of its quantitative
//! claims executable:
//!
//! - [`qlinalg`]: state vectors, operators, tensor products, partial trace,
//!   a Hermitian eigensolver for small matrices, purity and entropy.
//! - [`states`]: the superposed system, the entangled system-apparatus state
//!   produced by an explicit unitary interaction, its collapsed mixture, the
//!   local (reduced) density operators, entanglement and basis-ambiguity
//!   diagnostics, and the half-life clock behind the cat example.
//! - [`interferometry`]: a two-station photon-pair experiment (variable phase
//!   shifter plus balanced splitter per station) with joint detection
//!   statistics, marginals, fringe visibility, CHSH, a no-signaling audit,
//!   and the correlated-to-anticorrelated phase flip.
//! - [`decoherence`]: environment qubits coupled to the apparatus pointer;
//!   the analytic suppression factor, an exact small-environment simulation
//!   that cross-checks it, and a reversal demonstration.
//! - [`sampler`]: seeded, sharded Monte Carlo detection events with
//!   estimators that recover correlations from finite counts.
//! - [`runner`]: the experiment runners behind the `entanglab` binary,
//!   emitting JSON and CSV run records.
//!
//! Start with the `examples/` directory: each example is a self-contained
//! run of one experiment, e.g.
//!
//! ```sh
//! cargo run --example bell_violation
//! ```

pub mod decoherence;
pub mod error;
pub mod interferometry;
pub mod qlinalg;
pub mod runner;
pub mod sampler;
pub mod states;

pub use error::{Error, Result};
