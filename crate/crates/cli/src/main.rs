mod cache;
mod commands;
mod options;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use options::{Mode, ParamsArg};

#[derive(Parser, Debug)]
#[command(name = "refl3d", version, about = "Exact intertwiners and the 3D reflection equation")]
pub struct Cli {
    /// `canonical` or `file=<path>` with one `name=value` per line.
    #[arg(long, global = true, default_value = "canonical")]
    pub params: ParamsArg,
    /// Largest occupation per slot in equation checks.
    #[arg(long, global = true)]
    pub window: Option<u32>,
    /// Largest block weight `P, Q` to solve.
    #[arg(long, global = true)]
    pub max_block: Option<u32>,
    /// `symbolic` or `eval:q=<rat>[,<rat>...]`.
    #[arg(long, global = true, default_value = "symbolic")]
    pub mode: Mode,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Block cache directory.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Output directory for dumps, report and manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve S on all blocks up to --max-block (default 6) and dump it.
    ComputeS,
    /// Solve J on all blocks up to --max-block (default 4) and dump it.
    ComputeJ,
    /// Check the tetrahedron equation on a window (default 2).
    VerifyTetrahedron,
    /// Check the 3D reflection equation in both forms on a window
    /// (default 1), optionally with a random sample at a larger window.
    #[command(name = "verify-3d-reflection")]
    VerifyThreeDReflection {
        /// Number of random basis vectors drawn at --sample-window.
        #[arg(long, default_value_t = 0)]
        sample: usize,
        #[arg(long, default_value_t = 2)]
        sample_window: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Which form: main, moved or both.
        #[arg(long, default_value = "both")]
        form: String,
    },
    /// Check YBE, invertibility and the RTT and C relations of the
    /// representations on a window of --window (default 12).
    VerifyRtt,
    /// Check that every relation image reduces to zero.
    VerifyEmbedding {
        /// Write one trace line per relation to relations.trace.
        #[arg(long)]
        trace: bool,
        /// Generator enumeration of the monomial order.
        #[arg(long, default_value = "row-major")]
        order: String,
    },
    /// Check S^2 = 1 per block and the reversal symmetry of S.
    VerifySymmetries,
    /// Print one entry of the closed-form S.
    EvalS {
        a: u32,
        b: u32,
        c: u32,
        i: u32,
        j: u32,
        k: u32,
    },
    /// Print the J^{1102} table and compare it with the solver.
    ShowJExample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
