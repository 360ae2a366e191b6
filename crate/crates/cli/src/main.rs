// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! `liedeco` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (the artifact is still
//! written), 2 usage or input error.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::io::CliError;

#[derive(Debug, Parser)]
#[command(name = "liedeco", version, about = "Lie-algebraic decoherence analysis")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance for verification.
    #[arg(long, global = true, env = "LIEDECO_TOL", default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CsvMode {
    /// `t, v_1, …, v_k`
    Bloch,
    /// `t, re_0_0, im_0_0, …`
    Matrix,
}

/// Built-in su(n) noise or a noise-model file.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("model_source").required(true).args(["n", "model"])))]
pub struct ModelArgs {
    /// Use the su(n) generators with unit coefficients.
    #[arg(long)]
    pub n: Option<usize>,
    /// Noise-model JSON with "operators" and "coeffs".
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Rescale the su(n) generators so that Σ F² = 1.
    #[arg(long, requires = "n")]
    pub normalized: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the su(n) generators with their structure constants.
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// Check the bilinear-form identities on random Hermitian inputs.
    VerifyIdentities {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Evaluate the dissipator on one state.
    Dissipator {
        #[command(flatten)]
        model: ModelArgs,
        /// Density-matrix JSON; defaults to |0⟩⟨0|.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Integrate the master equation.
    Evolve {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        t_final: f64,
        /// Step size; derived from the model when omitted.
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        record_every: usize,
        #[arg(long, value_enum, default_value_t = CsvMode::Bloch)]
        csv_mode: CsvMode,
    },
    /// Apply the Lie-algebra channel to a state.
    #[command(group(ArgGroup::new("channel_source").required(true).args(["n", "generators", "spec"])))]
    Channel {
        #[arg(long)]
        n: Option<usize>,
        /// Generator-file JSON with "n" and "generators".
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Channel-spec JSON.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Error probability; overrides the spec file.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Compare one coarse-grained Lindblad step with the channel.
    CoarseGrain {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01, 0.001])]
        tau: Vec<f64>,
    },
    /// Commutant, decoherence-free subspace and noiseless subsystems.
    #[command(group(ArgGroup::new("rep_source").required(true).args(["n", "generators"])))]
    AnalyzeRep {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Act on `copies` tensor copies, `1 ⊗ F`.
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// First-order cancellation for a weakly broken symmetry.
    SymmetryBreak {
        #[arg(long)]
        spec: PathBuf,
        /// Density-matrix JSON; defaults to the maximally mixed state.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Relaxation of random states towards 1/n.
    Equilibrium {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        states: usize,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Distance to 1/n counted as returned.
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Lib(liedeco::Error::PositivityViolation { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed (tol {:e})", cli.common.tol);
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
