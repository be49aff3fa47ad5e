use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod flag_spec;

/// Classify left-invariant metrics on H3 x R^(n-3) up to scaling and automorphisms.
///
/// Exit codes: 0 success, 1 malformed input, 2 precondition or scope violation,
/// 3 failed verification or witness.
#[derive(Parser)]
#[command(name = "heisenflag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the metric stored in a matrix file (header `n`, then n rows).
    Classify {
        path: String,
        /// Also report flatness, Ricci data and the soliton check.
        #[arg(long)]
        curvature: bool,
        /// Append a single-line JSON record.
        #[arg(long)]
        record: bool,
    },
    /// List the admissible classes for a signature.
    Table { p: usize, q: usize },
    /// Enumeration oracle, parabolic invariance and Matsuki count checks.
    Verify {
        p: usize,
        q: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Isometry carrying flag 2 onto flag 1, or the invariant that rules it out.
    ///
    /// Flags are semicolon-separated vectors of comma-separated rationals, e.g.
    /// "1,0,1,0;0,1,0,0". The first --small vectors span the small subspace.
    Witness {
        p: usize,
        q: usize,
        flag1: String,
        flag2: String,
        #[arg(long, default_value_t = 1)]
        small: usize,
    },
    /// Curvature report for the representative of each admissible class.
    Curvature {
        p: usize,
        q: usize,
        #[arg(long)]
        class: Option<u8>,
    },
    /// The seven intersection counts of a flag against the two coordinate blocks.
    Matsuki {
        p: usize,
        q: usize,
        flag: String,
        #[arg(long, default_value_t = 1)]
        small: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify {
            path,
            curvature,
            record,
        } => commands::classify(&path, curvature, record),
        Command::Table { p, q } => commands::table(p, q),
        Command::Verify { p, q, seed, trials } => commands::verify(p, q, seed, trials),
        Command::Witness {
            p,
            q,
            flag1,
            flag2,
            small,
        } => commands::witness(p, q, &flag1, &flag2, small),
        Command::Curvature { p, q, class } => commands::curvature(p, q, class),
        Command::Matsuki { p, q, flag, small } => commands::matsuki(p, q, &flag, small),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
