use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latdefect_cli::codec::CertificateDoc;
use latdefect_cli::{parse_input, recheck, run, CliError, Command, InputDocument, ReportDocument};

#[derive(Parser)]
#[command(name = "latdefect", version, about = "Defectivity tools for lattice point configurations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Input document; `-` reads standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Replay the evidence of an earlier report on this input instead of computing.
    #[arg(long, value_name = "REPORT")]
    recheck: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Whether the differences of all configurations generate ℤⁿ.
    Spanning(Common),
    /// Normalized mixed volume of n configurations in ℤⁿ.
    MixedVolume(Common),
    /// Interior lattice points of conv(A₀ + … + A_k).
    InteriorPoints {
        #[command(flatten)]
        common: Common,
        /// Use the family lattice Λ and translated configurations.
        #[arg(long)]
        lambda: bool,
    },
    /// Codegree of each configuration's convex hull.
    Codegree(Common),
    /// Lattice width of each configuration's convex hull.
    Width(Common),
    /// The Cayley sum A₀ * … * A_k.
    CayleySum(Common),
    /// Search for a Cayley decomposition with k + 1 parts.
    CayleyDetect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
    },
    /// Whether dim(ΣAᵢ) = Σ dim(Aᵢ).
    JoinType(Common),
    /// Check a defectivity certificate for a single configuration.
    FiVerify {
        #[command(flatten)]
        common: Common,
        /// Certificate JSON (the `certificate` object of an fi-search report).
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Bounded search for a defectivity certificate.
    FiSearch {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        entry_bound: u32,
        #[arg(long, default_value_t = 1)]
        c_max: usize,
    },
    /// Run every applicable criterion and report a verdict.
    Defective {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: bool,
        #[arg(long, default_value_t = 1)]
        entry_bound: u32,
        #[arg(long, default_value_t = 1)]
        c_max: usize,
        /// Skip the certificate search.
        #[arg(long)]
        no_fi_search: bool,
    },
    /// Normalized volume from lattice point counts of dilates.
    OracleEhrhart(Common),
    /// Seeded numerical search for a non-degenerate multiple root.
    OracleWitness {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also solve for the constant coefficient of the first polynomial.
        #[arg(long)]
        free_coefficient: bool,
    },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut buf).map(|_| ())
    } else {
        std::fs::read(path).map(|b| buf = b)
    };
    res.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn split(cmd: Cmd) -> Result<(Common, Command), CliError> {
    Ok(match cmd {
        Cmd::Spanning(c) => (c, Command::Spanning),
        Cmd::MixedVolume(c) => (c, Command::MixedVolume),
        Cmd::InteriorPoints { common, lambda } => (common, Command::InteriorPoints { lambda }),
        Cmd::Codegree(c) => (c, Command::Codegree),
        Cmd::Width(c) => (c, Command::Width),
        Cmd::CayleySum(c) => (c, Command::CayleySum),
        Cmd::CayleyDetect { common, k } => (common, Command::CayleyDetect { k }),
        Cmd::JoinType(c) => (c, Command::JoinType),
        Cmd::FiVerify { common, certificate } => {
            let bytes = read(&certificate)?;
            let certificate: CertificateDoc = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::Input(format!("{}: {e}", certificate.display())))?;
            (common, Command::FiVerify { certificate })
        }
        Cmd::FiSearch {
            common,
            entry_bound,
            c_max,
        } => (common, Command::FiSearch { entry_bound, c_max }),
        Cmd::Defective {
            common,
            lambda,
            entry_bound,
            c_max,
            no_fi_search,
        } => (
            common,
            Command::Defective {
                lambda,
                entry_bound,
                c_max,
                fi_search: !no_fi_search,
            },
        ),
        Cmd::OracleEhrhart(c) => (c, Command::OracleEhrhart),
        Cmd::OracleWitness {
            common,
            samples,
            seed,
            free_coefficient,
        } => (
            common,
            Command::OracleWitness {
                samples,
                seed,
                free_coefficient,
            },
        ),
    })
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let (common, command) = split(cli.command)?;
    let Format::Json = common.format;
    let input: InputDocument = parse_input(&read(&common.input)?).map_err(|e| CliError::Input(e.to_string()))?;
    match common.recheck {
        None => Ok(run(&command, &input)?.to_json()),
        Some(path) => {
            let text = String::from_utf8(read(&path)?).map_err(|e| CliError::Input(e.to_string()))?;
            let report =
                ReportDocument::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if report.command != command.name() {
                return Err(CliError::Input(format!(
                    "report is for `{}`, not `{}`",
                    report.command,
                    command.name()
                )));
            }
            let doc = recheck(&report, &input)?;
            let out = serde_json::to_string_pretty(&doc).expect("recheck documents serialize");
            if doc.ok {
                Ok(out)
            } else {
                emit(&out);
                Err(CliError::Input("evidence did not re-verify".into()))
            }
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{out}");
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("latdefect: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
