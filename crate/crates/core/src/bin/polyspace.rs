use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyspace::cli::{self, Format, Target};

#[derive(Parser)]
#[command(name = "polyspace", version, about = "Chambers, genetic codes and topology of polygon spaces")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Chain,
    Planar,
    Spatial,
}

#[derive(Subcommand)]
enum Command {
    /// Genetic code, a_min, Morse data and descriptions of a length vector.
    Classify {
        /// Comma-separated lengths, integers or fractions.
        #[arg(long, allow_hyphen_values = true)]
        lengths: String,
        /// Ambient dimension for the chain space (symbolic if omitted).
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        unsafe_large_m: bool,
    },
    /// All chambers for `m` with their minimal integral vectors.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        unsafe_large_m: bool,
    },
    /// The chamber table for `m`, optionally compared against a golden file.
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Directory holding `table_m<m>.txt`.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        unsafe_large_m: bool,
    },
    /// Run the consistency suites for `m`.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Tsv => Format::Tsv,
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("POLYSPACE_THREADS").ok().and_then(|s| s.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = match Args::parse().command {
        Command::Classify { lengths, d, target, format: f, unsafe_large_m } => {
            let target = target.map(|t| match t {
                TargetArg::Chain => Target::Chain,
                TargetArg::Planar => Target::Planar,
                TargetArg::Spatial => Target::Spatial,
            });
            cli::classify(&lengths, d, target, format(f), unsafe_large_m)
        }
        Command::Enumerate { m, format: f, unsafe_large_m } => cli::enumerate(m, format(f), unsafe_large_m),
        Command::Table { m, d, format: f, golden, unsafe_large_m } => {
            cli::table(m, d, format(f), golden.as_deref(), unsafe_large_m)
        }
        Command::Verify { m, format: f } => cli::verify(m, format(f)),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
