//! Command line front end. Every subcommand prints one report line per
//! check (JSON with --json), and the process exits 0 only if every
//! asserted residual stayed under --tolerance. Malformed input exits 2.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod checks;
mod io;
mod report;
mod suite;

/// Bad input: unknown group, unreadable file, rejected expression.
#[derive(Debug)]
pub struct Malformed(pub String);

/// Distribution for functions drawn from the seeded generator.
#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum RandomKind {
    /// Independent standard complex Gaussian values.
    ComplexGaussian,
    /// Independent uniformly random unit-modulus values.
    UnitPhases,
}

/// Flags shared by every subcommand, plus the argv echo for reports.
pub struct CommonArgs {
    pub command_echo: String,
    pub seed: u64,
    pub tolerance: f64,
    pub limit: u64,
}

#[derive(Parser)]
#[command(
    name = "gowers",
    version,
    about = "Uniformity norms, cube inner products, and identity checks over finite abelian groups"
)]
struct Cli {
    /// Emit each report as one JSON object per line.
    #[arg(long, global = true)]
    json: bool,

    /// Seed fixing all randomness; identical arguments and seed give
    /// identical output apart from wall times.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Residual threshold below which a check passes.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Largest enumeration size attempted before refusing.
    #[arg(long, global = true, default_value_t = gowers_core::DEFAULT_ENUM_LIMIT)]
    limit: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uniformity norm of a single function.
    Norm {
        /// Group, e.g. "7" or "2x3x3".
        #[arg(long)]
        group: String,
        /// Cube dimension.
        #[arg(long)]
        d: usize,
        /// Corner degree; -1 selects the zero cube alone.
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        /// Phase polynomial over one cyclic factor, e.g. "x^2" or "2x^3+x".
        #[arg(long)]
        phase_poly: Option<String>,
        /// JSON function file {"group": "...", "values": [[re,im],...]}.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Draw the function from the seeded generator.
        #[arg(long, value_enum)]
        random: Option<RandomKind>,
        /// Interpret the input over the dual group (sums instead of means).
        #[arg(long)]
        dual: bool,
    },

    /// Cube inner product of 2^d functions.
    Inner {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        /// JSON array of 2^d function files' worth of values.
        #[arg(long)]
        cube: Option<PathBuf>,
        #[arg(long, value_enum)]
        random: Option<RandomKind>,
        #[arg(long)]
        dual: bool,
    },

    /// Compare the primal inner product against the dual-side evaluation
    /// of the transformed cube. Defaults to a seeded Gaussian cube.
    ParsevalCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long)]
        cube: Option<PathBuf>,
        #[arg(long, value_enum)]
        random: Option<RandomKind>,
    },

    /// Character cube products against their 0/1 prediction, one report
    /// per cube, worst degree reported.
    OrthogonalityCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        /// Sweep every character cube instead of sampling.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of sampled character cubes.
        #[arg(long, default_value_t = 32)]
        samples: u64,
    },

    /// Signed higher-order Poisson summation over a lattice-cut subgroup.
    PoissonCheck {
        #[arg(long)]
        group: String,
        /// JSON lattice file {"k": ..., "generators": [[...]], "signature": [...]}.
        #[arg(long, conflicts_with = "fixture")]
        lattice: Option<PathBuf>,
        /// Built-in lattice: "progression" or "difference-cube".
        #[arg(long)]
        fixture: Option<String>,
        /// Evaluate over a random coset instead of the subgroup itself.
        #[arg(long)]
        translate: bool,
        #[arg(long, value_enum, default_value = "complex-gaussian")]
        random: RandomKind,
    },

    /// Transform of the corner convolution against the product of
    /// transforms, over every character.
    ConvolutionCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
    },

    /// Enumerate a cube space; prints one member per line then a summary.
    Cubes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        /// Print only the cardinality, computed without enumerating.
        #[arg(long)]
        count_only: bool,
    },

    /// Brute-force enumeration cross-check of the structured cube space.
    Oracle {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        /// Also compare the inner product against the brute-force mean.
        #[arg(long)]
        inner: bool,
    },

    /// Run the full verification grid, one report per check.
    Suite,
}

fn dispatch(command: &Command, common: &CommonArgs) -> Result<checks::Outcome, Malformed> {
    match command {
        Command::Norm { group, d, l, phase_poly, function, random, dual } => {
            checks::norm(common, group, *d, *l, phase_poly, function, random, *dual)
        }
        Command::Inner { group, d, l, cube, random, dual } => {
            checks::inner(common, group, *d, *l, cube, random, *dual)
        }
        Command::ParsevalCheck { group, d, l, cube, random } => {
            let random = match (cube, random) {
                (None, None) => Some(RandomKind::ComplexGaussian),
                _ => *random,
            };
            checks::parseval(common, group, *d, *l, cube, &random)
        }
        Command::OrthogonalityCheck { group, d, exhaustive, samples } => {
            checks::orthogonality(common, group, *d, *exhaustive, *samples)
        }
        Command::PoissonCheck { group, lattice, fixture, translate, random } => {
            let source = match (lattice, fixture) {
                (Some(path), None) => checks::LatticeSource::File(path.clone()),
                (None, Some(name)) => checks::LatticeSource::Fixture(name.clone()),
                _ => {
                    return Err(Malformed(
                        "exactly one of --lattice, --fixture must be given".into(),
                    ))
                }
            };
            checks::poisson(common, group, &source, *translate, *random)
        }
        Command::ConvolutionCheck { group, d, l } => checks::convolution(common, group, *d, *l),
        Command::Cubes { group, d, l, count_only } => {
            checks::cubes(common, group, *d, *l, *count_only)
        }
        Command::Oracle { group, d, l, inner } => checks::oracle(common, group, *d, *l, *inner),
        Command::Suite => {
            Ok(checks::Outcome { reports: suite::run(common), listing: Vec::new() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = CommonArgs {
        command_echo: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        seed: cli.seed,
        tolerance: cli.tolerance,
        limit: cli.limit,
    };
    match dispatch(&cli.command, &common) {
        Err(Malformed(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Ok(outcome) => {
            for line in &outcome.listing {
                println!("{line}");
            }
            let mut all_pass = true;
            for report in &outcome.reports {
                report.emit(cli.json);
                all_pass &= report.pass;
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
