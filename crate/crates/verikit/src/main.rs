use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torelli::lpres::{relation_catalog, CatalogKind};
use verikit::{check_certificate, resolve_params, run_suite, with_threads, Suite, SuiteReport, VerikitError};

#[derive(Parser)]
#[command(name = "verikit", version, about = "Exhaustive and sampled verification suites for the Birman kernel computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Sampling seed in hexadecimal, with or without 0x.
        #[arg(long, value_parser = parse_hex)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print every instance of a relation catalog.
    Catalog {
        #[arg(long, value_parser = parse_kind)]
        dump: CatalogKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a relator-insertion certificate.
    Certify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| format!("{e}; known suites: {}", Suite::ALL.map(Suite::name).join(", ")))
}

fn parse_kind(s: &str) -> Result<CatalogKind, String> {
    s.parse::<CatalogKind>().map_err(|e| e.to_string())
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("bad hex seed {s:?}: {e}"))
}

fn emit(report: &SuiteReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn run(cli: Cli) -> Result<bool, VerikitError> {
    match cli.command {
        Command::Verify { suite, n, k, samples, seed, format, report } => {
            let params = resolve_params(suite, n, k, samples, seed)?;
            let rep = with_threads(|| run_suite(suite, params))??;
            emit(&rep, format);
            if let Some(path) = report {
                std::fs::write(&path, rep.to_json() + "\n").map_err(|e| VerikitError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(rep.passed())
        }
        Command::Catalog { dump, n, k } => {
            let k = k.unwrap_or(match dump {
                CatalogKind::Table1 => 3,
                CatalogKind::S1Prime => 2,
                _ => 1,
            });
            let k = if dump == CatalogKind::Nielsen { 0 } else { k };
            for r in relation_catalog(dump, n, k)? {
                println!("{r}");
            }
            Ok(true)
        }
        Command::Certify { file, format } => {
            let rep = with_threads(|| check_certificate(&file))??;
            emit(&rep, format);
            Ok(rep.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("verikit: {e}");
            ExitCode::from(2)
        }
    }
}
