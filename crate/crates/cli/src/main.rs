//! `reeb`: count, enumerate, verify and check Reeb graphs on RP2.
//!
//! Exit status: 0 success, 1 semantic failure (mismatch, not isomorphic,
//! invalid graph), 2 usage or parse error, 3 resource cap, 4 I/O error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reeb_rp2::enumerate::DEFAULT_CAP;
use reeb_rp2::Kind;

#[derive(Parser, Debug)]
#[command(
    name = "reeb",
    version,
    about = "Reeb graphs of simple Morse functions on RP2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print K(k) or N(k) for every k up to a bound.
    Count {
        #[arg(long)]
        max_saddles: usize,
        #[command(flatten)]
        kind: KindArg,
        /// Emit a versioned JSON document instead of `k<TAB>value` lines.
        #[arg(long)]
        json: bool,
    },
    /// Write every non-isomorphic tree or graph with a given saddle count.
    Enumerate {
        #[arg(long)]
        saddles: usize,
        #[command(flatten)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = Format::Canon)]
        format: Format,
        /// Directory for one file per object plus `manifest.txt`. Without it
        /// the canonical strings go to stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Largest number of objects a level may hold.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Compare the recurrences against exhaustive enumeration.
    Verify {
        #[arg(long)]
        max_saddles: usize,
        /// Highest rooted level to enumerate.
        #[arg(long, default_value_t = 8)]
        max_rooted: usize,
        /// Highest full level to enumerate.
        #[arg(long, default_value_t = 9)]
        max_full: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Perturb the formula value at the highest rooted level (negative
        /// control for tests).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Validate an edge-list file and print its canonical string.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two edge-list files describe isomorphic Reeb graphs.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct KindArg {
    #[arg(long)]
    rooted: bool,
    #[arg(long)]
    full: bool,
}

impl KindArg {
    fn kind(self) -> Kind {
        if self.full {
            Kind::Full
        } else {
            Kind::Rooted
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Canon,
    Dot,
    Edgelist,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count {
            max_saddles,
            kind,
            json,
        } => commands::count(max_saddles, kind.kind(), json),
        Command::Enumerate {
            saddles,
            kind,
            format,
            out_dir,
            cap,
        } => commands::enumerate(saddles, kind.kind(), format, out_dir.as_deref(), cap),
        Command::Verify {
            max_saddles,
            max_rooted,
            max_full,
            cap,
            inject_fault,
        } => commands::verify(max_saddles, max_rooted, max_full, cap, inject_fault),
        Command::Check { file, json } => commands::check(&file, json),
        Command::Iso { first, second } => commands::iso(&first, &second),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("reeb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
