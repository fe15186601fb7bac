use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lcourant_cli::primitive::{self, Outcome};
use lcourant_cli::{demo, run, InputError, Scenario, Threads, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

#[derive(Parser)]
#[command(name = "lcourant", version, about = "Exact verification of Courant structures on line bundles")]
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
    /// Run the suites of a scenario file.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// What to print on standard output.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a walkthrough: canonical-p1, canonical-p2, or acyclicity.
    Demo { name: String },
    /// Print the canonical primitive of a closed form read from a file.
    Primitive {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn input_error(e: &InputError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn verify(scenario: PathBuf, report: Option<PathBuf>, format: Format) -> ExitCode {
    let threads = match Threads::from_env() {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    let scenario = match Scenario::load(&scenario) {
        Ok(s) => s,
        Err(e) => return input_error(&e),
    };
    let result = run(&scenario, threads);
    let json = result.to_json();
    if let Some(path) = report {
        if let Err(e) = std::fs::write(&path, &json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    match format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{}", result.to_text()),
    }
    ExitCode::from(if result.passed { EXIT_PASS } else { EXIT_FAIL } as u8)
}

fn primitive_cmd(path: PathBuf, format: Format) -> ExitCode {
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return input_error(&InputError::new("", format!("cannot read {}: {e}", path.display()))),
    };
    match primitive::compute(&text) {
        Ok(Outcome::Found { text, json }) => {
            match format {
                Format::Text => println!("{text}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("records serialize")),
            }
            ExitCode::from(EXIT_PASS as u8)
        }
        Ok(Outcome::NotClosed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAIL as u8)
        }
        Err(e) => input_error(&e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { scenario, report, format } => verify(scenario, report, format),
        Command::Demo { name } => match demo::run(&name) {
            Ok(text) => {
                print!("{text}");
                ExitCode::from(EXIT_PASS as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INPUT as u8)
            }
        },
        Command::Primitive { form, format } => primitive_cmd(form, format),
    }
}
