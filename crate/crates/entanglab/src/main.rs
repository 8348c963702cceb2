//! Thin command-line front end; all experiment logic lives in the library's
//! `runner` module.
//!
//! Exit status: 0 on success with all embedded audits passing, 1 on
//! validation or usage errors, 2 when an audit fails (a no-signaling
//! deviation above threshold).

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use entanglab::interferometry::ChshSettings;
use entanglab::runner::{
    self, parse_complex, run_cat, run_chsh, run_decohere, run_nosignal, run_rto, run_sample,
    run_sweep, write_sweep_csv, RunRecord, StateChoice,
};
use entanglab::states::Amplitudes;

#[derive(Parser)]
#[command(
    name = "entanglab",
    version,
    about = "Run two-qubit measurement and interferometry experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StateArgs {
    /// Pair state: the balanced entangled pair, its collapsed mixture, an
    /// entangled pair with explicit amplitudes, or a seeded random pure state
    #[arg(long, value_enum, default_value_t = StateKind::Bell)]
    state: StateKind,
    /// First branch amplitude (forms like `0.6`, `0.8i`, `0.6+0.8i`);
    /// required with `--state amplitudes`
    #[arg(long)]
    c1: Option<String>,
    /// Second branch amplitude; required with `--state amplitudes`
    #[arg(long)]
    c2: Option<String>,
    /// Seed for `--state random`
    #[arg(long, default_value_t = 0)]
    state_seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Bell,
    Mixture,
    Amplitudes,
    Random,
}

impl StateArgs {
    fn resolve(&self) -> Result<StateChoice, String> {
        match self.state {
            StateKind::Bell => Ok(StateChoice::Bell),
            StateKind::Mixture => Ok(StateChoice::Mixture),
            StateKind::Random => Ok(StateChoice::Random {
                seed: self.state_seed,
            }),
            StateKind::Amplitudes => {
                let (Some(c1), Some(c2)) = (&self.c1, &self.c2) else {
                    return Err("--state amplitudes requires --c1 and --c2".to_string());
                };
                let amplitudes = Amplitudes::new(parse_complex(c1)?, parse_complex(c2)?)
                    .map_err(|e| e.to_string())?;
                Ok(StateChoice::Custom(amplitudes))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Joint statistics, marginals, E, and visibilities at one phase setting
    Rto {
        /// Station S phase in radians
        #[arg(long)]
        phi_s: f64,
        /// Station A phase in radians
        #[arg(long)]
        phi_a: f64,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Joint distribution over a phase grid, as JSON or CSV
    Sweep {
        /// Grid points per phase axis (minimum 8)
        #[arg(long, default_value_t = 64)]
        grid_n: usize,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Output file; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// CHSH statistic, analytic and optionally sampled
    Chsh {
        #[command(flatten)]
        state: StateArgs,
        /// Four analyzer phases `a,a',b,b'` in radians
        #[arg(long, value_delimiter = ',')]
        angles: Option<Vec<f64>>,
        /// Sample this many events per settings pair instead of reporting
        /// only the analytic value
        #[arg(long)]
        n_events: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Audit that neither station's marginal depends on the remote phase
    Nosignal {
        #[arg(long, default_value_t = 32)]
        grid_n: usize,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Couple environment qubits to the pointer and report the coherence
    Decohere {
        /// Number of environment qubits
        #[arg(long)]
        env_n: usize,
        /// Coupling angle per qubit, radians
        #[arg(long)]
        theta: f64,
        /// Also run the exact inverse coupling (requires env_n <= 10)
        #[arg(long)]
        reverse: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The decaying-nucleus timeline at time t
    Cat {
        /// Half-life T (arbitrary units, positive)
        #[arg(long)]
        half_life: f64,
        /// Elapsed time
        #[arg(long)]
        t: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw detection events at one phase setting and estimate E
    Sample {
        #[arg(long)]
        phi_s: f64,
        #[arg(long)]
        phi_a: f64,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 100_000)]
        n_events: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(record: &RunRecord, output: Option<&PathBuf>) -> Result<(), String> {
    let text = record.to_json_pretty();
    match output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Rto {
            phi_s,
            phi_a,
            state,
            output,
        } => {
            let record = run_rto(phi_s, phi_a, &state.resolve()?).map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(0)
        }
        Command::Sweep {
            grid_n,
            state,
            format,
            output,
        } => {
            let (record, rows) = run_sweep(grid_n, &state.resolve()?).map_err(|e| e.to_string())?;
            match format {
                OutputFormat::Json => emit(&record, output.as_ref())?,
                OutputFormat::Csv => match output {
                    None => {
                        let mut buffer = Vec::new();
                        write_sweep_csv(&rows, &mut buffer).map_err(|e| e.to_string())?;
                        print!("{}", String::from_utf8_lossy(&buffer));
                    }
                    Some(path) => {
                        let file = File::create(&path)
                            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                        let mut file = std::io::BufWriter::new(file);
                        write_sweep_csv(&rows, &mut file).map_err(|e| e.to_string())?;
                        file.flush().map_err(|e| e.to_string())?;
                    }
                },
            }
            Ok(0)
        }
        Command::Chsh {
            state,
            angles,
            n_events,
            seed,
            shards,
            output,
        } => {
            let settings = match angles {
                None => ChshSettings::standard(),
                Some(v) if v.len() == 4 => ChshSettings {
                    a: v[0],
                    a_prime: v[1],
                    b: v[2],
                    b_prime: v[3],
                },
                Some(v) => {
                    return Err(format!("--angles needs exactly 4 values, got {}", v.len()));
                }
            };
            let events = n_events.map(|n| (n, seed, shards));
            let record =
                run_chsh(&state.resolve()?, &settings, events).map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(0)
        }
        Command::Nosignal {
            grid_n,
            state,
            output,
        } => {
            let (record, deviation) =
                run_nosignal(grid_n, &state.resolve()?).map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(if deviation > runner::NO_SIGNALING_ALERT {
                2
            } else {
                0
            })
        }
        Command::Decohere {
            env_n,
            theta,
            reverse,
            output,
        } => {
            let record = run_decohere(env_n, theta, reverse).map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(0)
        }
        Command::Cat {
            half_life,
            t,
            output,
        } => {
            let record = run_cat(half_life, t).map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(0)
        }
        Command::Sample {
            phi_s,
            phi_a,
            state,
            n_events,
            seed,
            shards,
            output,
        } => {
            let record = run_sample(phi_s, phi_a, &state.resolve()?, n_events, seed, shards)
                .map_err(|e| e.to_string())?;
            emit(&record, output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
