//! `zcp`: generate, verify and tabulate Z-complementary pairs.
//!
//! Exit codes: 0 when every asserted claim holds, 1 when a claim fails,
//! 2 for usage, parse and I/O errors.

mod commands;
mod golden;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "zcp",
    version,
    about = "Z-complementary pairs from generalized Boolean functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Number of Boolean variables (pair length is 2^(m-1)+2)
    #[arg(long)]
    pub m: Option<usize>,
    /// Phase alphabet size (even)
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Permutation of 0..m-3 as a comma-separated image list
    #[arg(long)]
    pub pi: Option<String>,
    /// Coefficients of x_0..x_{m-3}, comma-separated
    #[arg(long)]
    pub e: Option<String>,
    /// Coefficients of the complemented x_0..x_{m-3}, comma-separated
    #[arg(long = "f")]
    pub f_off: Option<String>,
    /// JSON parameter file with keys m, q, pi, e, f
    #[arg(long, conflicts_with_all = ["m", "pi", "e", "f_off"])]
    pub params: Option<PathBuf>,
    /// Build the degenerate m=3 object (no ZCZ claim attached)
    #[arg(long)]
    pub experimental_m3: bool,
    /// Directory for pair.txt, profile.csv and report.json
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build a truncated GBF pair and verify it
    Generate(GenerateArgs),
    /// Verify a pair file: ZCZ width and out-of-zone magnitudes
    Verify {
        pair_file: PathBuf,
        /// ZCZ width the pair is claimed to reach
        #[arg(long)]
        claimed: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the AACS profile of a pair file as CSV
    Correlate {
        pair_file: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search binary pairs of length N for the widest ZCZ
    Search {
        #[arg(long)]
        n: usize,
        /// Largest N allowed without complaint
        #[arg(long, env = "ZCP_SEARCH_CAP", default_value_t = zcp::verify::DEFAULT_CAP)]
        cap: usize,
        /// Maximum number of witness pairs to report
        #[arg(long, default_value_t = 8)]
        witnesses: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ZCZ ratio table and comparison with earlier constructions
    Table {
        #[arg(long, default_value_t = 4)]
        m_min: usize,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reproduce a worked example and diff it against the expected values
    Example {
        #[arg(value_enum)]
        name: golden::ExampleName,
        /// Directory for the example's pair, profile and report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::generate(&args),
        Command::Verify {
            pair_file,
            claimed,
            format,
        } => commands::verify(&pair_file, claimed, format),
        Command::Correlate { pair_file, out } => commands::correlate(&pair_file, out.as_deref()),
        Command::Search { n, cap, witnesses, out } => commands::search(n, cap, witnesses, out.as_deref()),
        Command::Table { m_min, m_max, format } => commands::table(m_min, m_max, format),
        Command::Example { name, out } => golden::run(name, out.as_deref()),
    };
    match result {
        Ok(commands::Outcome::ClaimsHold) => ExitCode::SUCCESS,
        Ok(commands::Outcome::ClaimFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
