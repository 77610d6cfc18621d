mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Factoriality of hypersurfaces with ordinary multiple points: numeric
/// criteria, singularity analysis, explicit constructions and invariants.
#[derive(Parser, Debug)]
#[command(name = "factoriality", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Working prime for singularity analysis.
    #[arg(long, default_value_t = 101, global = true)]
    pub prime: u64,
    /// Second prime used to cross-check the analysis.
    #[arg(long = "prime2", default_value_t = 211, global = true)]
    pub second_prime: u64,
    /// Largest extension degree searched for singular points.
    #[arg(long = "emax", default_value_t = 2, global = true)]
    pub e_max: usize,
    /// Seed for randomized constructions.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Step budget for each Gröbner basis computation.
    #[arg(long = "groebner-budget", default_value_t = 1_000_000, global = true)]
    pub groebner_budget: u64,
    /// Maximum number of draws tried by a construction.
    #[arg(long, default_value_t = 32, global = true)]
    pub retries: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the factoriality criteria on a multiplicity profile.
    Check {
        /// Degree of the hypersurface.
        #[arg(long)]
        d: u64,
        /// Comma-separated multiplicities of the singular points.
        #[arg(long, value_delimiter = ',', default_value = "")]
        mults: Vec<String>,
        /// general, plane (points on a plane inside X) or unknown.
        #[arg(long, default_value = "unknown")]
        position: String,
        /// Dimension of the ambient projective space.
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Find and certify the singular points of a hypersurface in a .poly file.
    Analyze { file: PathBuf },
    /// Build a hypersurface from one of the explicit families.
    Construct(ConstructArgs),
    /// Defect and b4 of a nodal threefold from its nodes.
    Defect {
        /// One point per line, comma-separated rationals; '#' starts a comment line.
        points: PathBuf,
        /// Degree of the threefold.
        #[arg(long)]
        d: u32,
    },
    /// Top self-intersection of aH - Σ b_i E_i on the blow-up of P^n at points.
    Intersect {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, value_delimiter = ',', default_value = "", allow_hyphen_values = true)]
        bs: Vec<String>,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// single-point, plane-pencil, kollar or cone (example52 and prop61 are
    /// accepted as aliases of the first two).
    pub family: String,
    /// Degree (single-point).
    #[arg(long)]
    pub d: Option<u32>,
    /// Multiplicity (single-point).
    #[arg(long)]
    pub m: Option<u32>,
    /// Leading form for single-point: fermatN or a .poly file in 4 variables.
    #[arg(long)]
    pub fm: Option<String>,
    /// Number of pencil members per product (plane-pencil).
    #[arg(long)]
    pub t: Option<u32>,
    /// Degree of the pencil curves (plane-pencil).
    #[arg(long)]
    pub delta: Option<u32>,
    /// Surface for the cone: fermatN or a .poly file in 4 variables.
    #[arg(long)]
    pub g: Option<String>,
    /// Record that Pic V = Z holds for the cone's base surface (not checked).
    #[arg(long)]
    pub assert_pic_z: bool,
    /// Output prefix; PREFIX.poly and PREFIX.json are written.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::validate(&cli.global).and_then(|()| match &cli.command {
        Command::Check { d, mults, position, n } => commands::check(*n, *d, mults, position),
        Command::Analyze { file } => commands::analyze(file, &cli.global),
        Command::Construct(args) => commands::construct(args, &cli.global),
        Command::Defect { points, d } => commands::defect(points, *d),
        Command::Intersect { a, bs, n } => commands::intersect(*n, *a, bs),
    });
    match result {
        Ok(value) => {
            print!("{}", render::render(&value, cli.global.format));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
