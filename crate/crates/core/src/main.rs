use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spanv::error::Result;
use spanv::io::{self, Presentation};
use spanv::report::{export_polyad, run_antipode, run_checks, Report, Selection};

#[derive(Parser)]
#[command(name = "spanv", version, about = "Check monads, Hopf structures and antipodes on span presentations")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
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
    /// Run checks; with no flags every check runs.
    Check {
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Write the polyad image of a vect presentation at the given probes.
    ExportPolyad {
        file: PathBuf,
        #[arg(long)]
        probes: PathBuf,
    },
    /// Solve for the antipode and print the presentation with it filled in.
    Antipode { file: PathBuf },
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    monad: bool,
    #[arg(long)]
    opmonoidal: bool,
    #[arg(long)]
    hopf: bool,
    #[arg(long)]
    antipode: bool,
    #[arg(long)]
    duoidal: bool,
    #[arg(long)]
    frobenius: bool,
}

fn read(path: &PathBuf) -> Result<Presentation> {
    let text = std::fs::read_to_string(path).map_err(|e| spanv::error::Error::Invalid(format!("{}: {e}", path.display())))?;
    io::load(&io::parse_file(&text)?)
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { file, flags } => {
            let sel = Selection {
                monad: flags.monad,
                opmonoidal: flags.opmonoidal,
                hopf: flags.hopf,
                antipode: flags.antipode,
                duoidal: flags.duoidal,
                frobenius: flags.frobenius,
            }
            .or_all();
            let report = run_checks(&read(&file)?, sel, cli.seed)?;
            emit(&report, cli.format);
            Ok(report.exit_code() as u8)
        }
        Command::ExportPolyad { file, probes } => {
            let ptext = std::fs::read_to_string(&probes).map_err(|e| spanv::error::Error::Invalid(format!("{}: {e}", probes.display())))?;
            let out = export_polyad(&read(&file)?, &io::parse_probes(&ptext)?)?;
            print!("{}", io::to_json(&out));
            Ok(0)
        }
        Command::Antipode { file } => {
            let (report, out) = run_antipode(&read(&file)?)?;
            match out {
                Some(f) => {
                    print!("{}", io::to_json(&f));
                    Ok(0)
                }
                None => {
                    match cli.format {
                        Format::Json => eprint!("{}", report.to_json()),
                        Format::Text => eprint!("{}", report.to_text()),
                    }
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
