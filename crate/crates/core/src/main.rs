use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rweno::cli::{execute, output_root, Command};

#[derive(Parser)]
#[command(name = "rweno", version, about = "Finite-volume WENO solver for the Euler equations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one simulation and write the final (and periodic) fields.
    Run {
        config: PathBuf,
        /// `section.key=value` settings applied after the file.
        overrides: Vec<String>,
    },
    /// Convergence study over `study.resolutions` and `study.schemes`.
    Study { config: PathBuf, overrides: Vec<String> },
    /// Compute (or reuse) the cached fine-grid reference solution.
    Reference { config: PathBuf, overrides: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, config, overrides) = match cli.command {
        Cmd::Run { config, overrides } => (Command::Run, config, overrides),
        Cmd::Study { config, overrides } => (Command::Study, config, overrides),
        Cmd::Reference { config, overrides } => (Command::Reference, config, overrides),
    };
    let m = execute(command, &config, &overrides, &output_root());
    match &m.failure {
        Some(f) => eprintln!("rweno {}: {}", command.as_str(), f.message),
        None => {
            for p in &m.outputs {
                println!("{}", p.display());
            }
            if m.steps > 0 {
                println!(
                    "{} steps to t = {} in {:.2} s ({} fallback faces)",
                    m.steps,
                    m.final_time.unwrap_or_default(),
                    m.wall_clock_seconds,
                    m.fallback_faces
                );
            }
        }
    }
    ExitCode::from(m.exit_code as u8)
}
