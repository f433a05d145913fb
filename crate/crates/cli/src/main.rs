//! bloch-topo: analysis of tight-binding insulators from the command line.
//!
//! Subcommands: analyze (full pipeline report), chern (Chern numbers and
//! transverse sweeps), edge (ribbon spectra and edge spectral flow),
//! symmetry (time-reversal classification), thresholds (rank-threshold
//! tables). Reports are deterministic JSON; band data exports as CSV.
//! Exit codes: 0 ok, 1 input error, 2 unresolved numerics.

mod commands;
mod registry;
mod report;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bloch-topo",
    about = "Bloch-bundle topology of finite-range lattice Hamiltonians",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Registry name (trivial_atomic, chain_1d, qwz, doubled_qwz) or a JSON
    /// model file
    #[arg(long)]
    model: String,
    /// Model parameter as key=value (e.g. m=1); repeatable
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Band count for trivial_atomic
    #[arg(long)]
    bands: Option<usize>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Momentum grid points per axis (even)
    #[arg(long, default_value_t = 24)]
    grid_n: usize,
    /// Refuse to flatten when the sampled gap is at or below this
    #[arg(long, default_value_t = 1e-8)]
    gap_tol: f64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: gap, projector rank, Chern vector, stable
    /// triviality, thresholds, verdict
    Analyze {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Chern numbers per coordinate plane, optionally sweeping transverse
    /// momenta
    Chern {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Restrict to one plane, e.g. --plane 0,1
        #[arg(long, value_delimiter = ',', num_args = 1)]
        plane: Option<Vec<usize>>,
        /// For dim > 2: recompute every plane on every transverse slice
        #[arg(long)]
        sweep: bool,
    },
    /// Ribbon spectrum and edge spectral flow against the bulk Chern number
    Edge {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Sites retained in the truncated direction
        #[arg(long, default_value_t = 40)]
        width: usize,
        /// Parallel momentum samples spanning [0, 1] (odd)
        #[arg(long, default_value_t = 401)]
        parallel_points: usize,
        /// Write the ribbon spectrum as CSV here
        #[arg(long)]
        csv: Option<String>,
    },
    /// Time-reversal classification: real / quaternionic / violated
    Symmetry {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Time-reversal unitary: "identity", "isigma2", or a JSON file
        /// with u_re/u_im; defaults to the model's own datum if any
        #[arg(long)]
        trs: Option<String>,
    },
    /// Rank thresholds k0/k1 for a symmetry class over a Z/2-CW shape
    Thresholds {
        /// complex, real, or quaternionic
        #[arg(long)]
        class: String,
        /// Max dimension of trivial cells
        #[arg(long)]
        d0: Option<u32>,
        /// Max dimension of free cells
        #[arg(long)]
        d1: Option<u32>,
        /// Use the Z/2-CW shape of the d-torus with conjugation
        #[arg(long, value_name = "D")]
        torus: Option<u32>,
        #[arg(long)]
        output: Option<String>,
    },
}

fn configure_threads() -> Result<(), bloch_topo::Error> {
    match std::env::var("BLOCH_TOPO_THREADS") {
        Err(_) => Ok(()),
        Ok(value) => {
            let n: usize = value.trim().parse().map_err(|_| {
                bloch_topo::Error::InvalidInput(format!(
                    "BLOCH_TOPO_THREADS must be a nonnegative integer, got \"{value}\""
                ))
            })?;
            if n > 0 {
                // Ignore "already initialized": only possible in tests.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Analyze { model, grid } => commands::analyze(&model, &grid),
        Command::Chern {
            model,
            grid,
            plane,
            sweep,
        } => commands::chern(&model, &grid, plane.as_deref(), sweep),
        Command::Edge {
            model,
            grid,
            width,
            parallel_points,
            csv,
        } => commands::edge(&model, &grid, width, parallel_points, csv.as_deref()),
        Command::Symmetry { model, grid, trs } => {
            commands::symmetry(&model, &grid, trs.as_deref())
        }
        Command::Thresholds {
            class,
            d0,
            d1,
            torus,
            output,
        } => commands::thresholds(&class, d0, d1, torus, output.as_deref()),
    });
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_unresolved_numerics() {
                2
            } else {
                1
            }
        }
    };
    std::process::exit(code);
}
