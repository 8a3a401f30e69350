use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use centro::commands::{self, read_file, status_for, RegionSpec};
use centro::format::KSpec;
use centro::lattice::{ScanOrder, SignConvention};
use centro::regions::{Band, StepSequence};
use centro::report::{Report, Status};
use centro::Result;

/// Exact determinants, sum-of-two-squares certificates and domino tiling
/// counts.
#[derive(Parser)]
#[command(name = "centro", version)]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix against K, with determinant and certificate.
    Analyze {
        matrix: PathBuf,
        /// alt:<2k>, simple:<K2 file> or full:<K file>
        k: KSpec,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Integral x^2 + y^2 certificate for an integer matrix.
    Certify { matrix: PathBuf, k: KSpec },
    /// Generate regions or check their symmetry.
    #[command(subcommand)]
    Region(RegionCommand),
    /// Domino tilings of a region.
    #[command(subcommand)]
    Tile(TileCommand),
    /// Perfect matchings of a lattice graph.
    #[command(subcommand, name = "match")]
    Match(MatchCommand),
    /// Write n as a sum of two squares.
    Sos {
        n: String,
        /// List every representation with x >= y >= 0.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum RegionCommand {
    /// Print a region in the `row <y>: <x1>..<x2>` format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Report whether a region is symmetric under 180-degree rotation.
    CheckSym { file: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    AztecDiamond {
        n: u32,
    },
    AztecPillow {
        n: u32,
    },
    /// Odd steps stacked above and below a central band.
    Pillow {
        #[arg(long)]
        steps: StepSequence,
        /// <rows>x<width>, both even
        #[arg(long)]
        band: Band,
        /// Steps below the band; defaults to --steps.
        #[arg(long)]
        lower: Option<StepSequence>,
    },
}

#[derive(Subcommand)]
enum TileCommand {
    /// Count domino tilings of a region.
    Count {
        file: PathBuf,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        verify_oracle: bool,
    },
}

#[derive(Subcommand)]
enum MatchCommand {
    /// Count perfect matchings of a lattice graph.
    Count {
        file: PathBuf,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Count, certificate and vertex labeling of a symmetric graph.
    Certify {
        file: PathBuf,
        /// vertical-lower-black or horizontal-left-black
        #[arg(long, default_value = "vertical-lower-black")]
        convention: SignConvention,
        /// row-major or column-major
        #[arg(long, default_value = "row-major")]
        scan: ScanOrder,
    },
    /// Report connectivity, symmetry and colour counts.
    CheckSym { file: PathBuf },
}

enum Output {
    Report(Report, Status),
    /// Raw region text, printed as is unless `--json` is set.
    Region(Report, String),
}

fn run(cli: &Cli) -> Result<Output> {
    let report = match &cli.command {
        Command::Analyze {
            matrix,
            k,
            verify_oracle,
        } => commands::analyze(&read_file(matrix)?, k, *verify_oracle),
        Command::Certify { matrix, k } => commands::certify(&read_file(matrix)?, k),
        Command::Region(RegionCommand::Gen(g)) => {
            let spec = match g {
                GenCommand::AztecDiamond { n } => RegionSpec::AztecDiamond(*n),
                GenCommand::AztecPillow { n } => RegionSpec::AztecPillow(*n),
                GenCommand::Pillow { steps, band, lower } => RegionSpec::Pillow {
                    steps: steps.clone(),
                    band: *band,
                    lower: lower.clone(),
                },
            };
            let region = commands::region_gen(&spec)?;
            return Ok(Output::Region(commands::region_report(&region), region.to_string()));
        }
        Command::Region(RegionCommand::CheckSym { file }) => commands::region_check_sym(&read_file(file)?),
        Command::Tile(TileCommand::Count {
            file,
            certificate,
            verify_oracle,
        }) => commands::tile_count(&read_file(file)?, *certificate, *verify_oracle),
        Command::Match(MatchCommand::Count { file, verify_oracle }) => {
            commands::match_count(&read_file(file)?, *verify_oracle)
        }
        Command::Match(MatchCommand::Certify { file, convention, scan }) => {
            commands::match_certify(&read_file(file)?, *convention, *scan)
        }
        Command::Match(MatchCommand::CheckSym { file }) => commands::match_check_sym(&read_file(file)?),
        Command::Sos { n, all } => commands::sos(n, *all),
    }?;
    Ok(Output::Report(report.0, report.1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Region(report, text)) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Report(report, status)) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(status_for(&e).code() as u8)
        }
    }
}
