use std::path::PathBuf;
use std::process::ExitCode;

use bmtop_cli::{
    cap_cmd, cup_cmd, homology_cmd, subdivide_cmd, validate, verify_cmd, CapArgs, VerifyArgs,
};
use clap::{Parser, Subcommand};

/// Simplicial homology, cup and cap products, supported caps and
/// Borel-Moore homology over the integers.
#[derive(Parser)]
#[command(name = "bmtop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and close a complex, printing simplex counts per dimension.
    Validate { complex: PathBuf },
    /// Print the integral homology in each degree.
    Homology {
        complex: PathBuf,
        /// Subcomplex Y: compute H(X, Y).
        #[arg(long)]
        rel: Option<PathBuf>,
        /// Report Borel-Moore homology of X - Y.
        #[arg(long)]
        bm: bool,
    },
    /// Cup product of two cochains.
    Cup {
        complex: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Cap product with supports, with the class pulled back to the support.
    Cap {
        complex: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        /// Support Z; defaults to the whole complex.
        #[arg(long)]
        support: Option<PathBuf>,
        /// Subcomplex Y for the relative product.
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        presubdivide: usize,
    },
    /// Barycentric subdivision, written as a complex file.
    Subdivide {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Run every applicable verification suite.
    Verify {
        complex: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_boundary: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage_error { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Validate { complex } => validate(complex),
        Command::Homology { complex, rel, bm } => homology_cmd(complex, rel.as_deref(), *bm),
        Command::Cup { complex, u, v } => cup_cmd(complex, u, v),
        Command::Cap {
            complex,
            cochain,
            chain,
            support,
            rel,
            presubdivide,
        } => cap_cmd(&CapArgs {
            complex,
            cochain,
            chain,
            support: support.as_deref(),
            rel: rel.as_deref(),
            presubdivide: *presubdivide,
        }),
        Command::Subdivide { complex, times } => subdivide_cmd(complex, *times),
        Command::Verify {
            complex,
            trials,
            seed,
            corrupt_boundary,
        } => verify_cmd(&VerifyArgs {
            complex,
            trials: *trials,
            seed: *seed,
            corrupt_boundary: *corrupt_boundary,
        }),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("bmtop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
