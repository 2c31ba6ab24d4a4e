//! Command-line surface: analyze fans and spherical records, compute the
//! total index, Hilbert bases and browse the bundled corpus.
//!
//! Exit codes: 0 ok, 1 parse error, 2 validation error, 3 internal
//! inconsistency (a theorem-violating result, which signals a bug rather
//! than a finding).

mod corpus;

use clap::{Parser, Subcommand, ValueEnum};
use corpus::ConeFile;
use mukai_core::exactmath::Int;
use mukai_core::mukai::{self, MukaiReport, ReportError};
use mukai_core::polyhedra::{hilbert_basis, Cone};
use mukai_core::spherical::SphericalRecordFile;
use mukai_core::toric::FanFile;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mukai",
    about = "Exact-arithmetic invariants of toric and spherical Fano varieties",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a fan file and emit a Mukai report.
    AnalyzeFan {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        report: ReportFormat,
    },
    /// Analyze a spherical record file and emit a Mukai report.
    AnalyzeSpherical {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        report: ReportFormat,
    },
    /// Total index of the anticanonical class of a toric Fano variety.
    TotalIndex { file: PathBuf },
    /// Hilbert basis of a pointed rational cone.
    HilbertBasis { file: PathBuf },
    /// Bundled example inputs.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the bundled inputs.
    List,
    /// Print one bundled input as JSON.
    Show { name: String },
}

enum CliError {
    Parse(String),
    Validation(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> CliError {
        match e {
            ReportError::Inconsistent(_) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("cannot parse {}: {e}", path.display())))
}

/// When MUKAI_OUT_DIR is set, analysis reports are also written there.
fn write_report_file(input: &Path, rendered: &str, format: ReportFormat) -> Result<(), CliError> {
    let Ok(dir) = std::env::var("MUKAI_OUT_DIR") else {
        return Ok(());
    };
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    let ext = match format {
        ReportFormat::Json => "report.json",
        ReportFormat::Text => "report.txt",
    };
    let path = Path::new(&dir).join(format!("{stem}.{ext}"));
    std::fs::write(&path, rendered)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn emit_report(
    report: &MukaiReport,
    input: &Path,
    format: ReportFormat,
) -> Result<(), CliError> {
    let rendered = match format {
        ReportFormat::Json => report.to_json_string(),
        ReportFormat::Text => report.render_text(),
    };
    print!("{rendered}");
    write_report_file(input, &rendered, format)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::AnalyzeFan { file, report } => {
            let fan_file: FanFile = read_json(&file)?;
            let fan = fan_file.into_fan().map_err(|e| CliError::Validation(e.to_string()))?;
            let r = mukai::report_fan(&fan)?;
            emit_report(&r, &file, report)
        }
        Command::AnalyzeSpherical { file, report } => {
            let record_file: SphericalRecordFile = read_json(&file)?;
            let (record, warnings) = record_file
                .into_record()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let r = mukai::report_spherical(&record, None, warnings)?;
            emit_report(&r, &file, report)
        }
        Command::TotalIndex { file } => {
            let fan_file: FanFile = read_json(&file)?;
            let fan = fan_file.into_fan().map_err(|e| CliError::Validation(e.to_string()))?;
            let data = mukai_core::nefindex::class_polytope(&fan)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let tz = mukai_core::nefindex::tau_z(&data)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let tq = mukai_core::nefindex::tau_q(&data)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            println!("tau_Z = {}, tau_Q = {}", tz.value, tq);
            Ok(())
        }
        Command::HilbertBasis { file } => {
            let cone_file: ConeFile = read_json(&file)?;
            let generators: Vec<Vec<Int>> = cone_file
                .generators
                .into_iter()
                .map(|g| g.into_iter().map(Int::from).collect())
                .collect();
            let cone = Cone::from_generators(cone_file.ambient_dim, generators)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let basis =
                hilbert_basis(&cone).map_err(|e| CliError::Validation(e.to_string()))?;
            let as_i64: Vec<Vec<String>> = basis
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect();
            let out = serde_json::json!({
                "ambient_dim": cone_file.ambient_dim,
                "hilbert_basis": as_i64,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serialises"));
            Ok(())
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for entry in corpus::entries() {
                    println!("{:10} {:10} {}", entry.name, entry.kind.label(), entry.description);
                }
                Ok(())
            }
            CorpusAction::Show { name } => match corpus::find(&name) {
                Some(entry) => {
                    print!("{}", entry.json());
                    Ok(())
                }
                None => Err(CliError::Validation(format!(
                    "no corpus entry named {name:?}; try `mukai corpus list`"
                ))),
            },
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
