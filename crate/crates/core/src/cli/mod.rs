//! Command-line driver: `run`, `study` and `reference`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 numerical
//! failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::euler::GasModel;
use crate::problems::{
    convergence_csv, convergence_study, init_problem, reference_cache_name, reference_scheme,
    reference_solution, ProblemError, ProblemName, Snapshot,
};
use crate::solver::{Cadence, ConservationTally, ConservedField, Observer, Solver, SolverError, StepInfo};

pub mod config;
pub mod output;

pub use config::{ConfigError, Origin, OutputFormat, RunConfig};
pub use output::{field_csv, field_vtk, Failure, OutputError, RunManifest};

/// Environment variable naming the directory all outputs go under.
pub const OUTPUT_ROOT_ENV: &str = "RWENO_OUTPUT_ROOT";
pub const DEFAULT_OUTPUT_ROOT: &str = "rweno-output";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Output(#[from] OutputError),
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Problem(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Problem(p) => match p {
                ProblemError::Solver(SolverError::NonPhysical { .. } | SolverError::TimeStep { .. }) => {
                    EXIT_NUMERICAL
                }
                ProblemError::Solver(SolverError::Config(_))
                | ProblemError::Unknown(_)
                | ProblemError::Mismatch(_)
                | ProblemError::Resolution(_) => EXIT_CONFIG,
                ProblemError::Io { .. } | ProblemError::Format(_) => EXIT_IO,
            },
            CliError::Output(_) => EXIT_IO,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_CONFIG => "config",
            EXIT_NUMERICAL => "numerical",
            _ => "io",
        }
    }

    fn failure(&self) -> Failure {
        let mut f = Failure {
            kind: self.kind().to_string(),
            message: self.to_string(),
            cell: None,
            time: None,
            step: None,
            stage: None,
        };
        if let CliError::Problem(ProblemError::Solver(s)) = self {
            match s {
                SolverError::NonPhysical {
                    cell, time, step, stage, ..
                } => {
                    f.cell = Some(*cell);
                    f.time = Some(*time);
                    f.step = Some(*step);
                    f.stage = Some(*stage);
                }
                SolverError::TimeStep { time, .. } => f.time = Some(*time),
                SolverError::Config(_) => {}
            }
        }
        f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Study,
    Reference,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::Study => "study",
            Command::Reference => "reference",
        }
    }
}

/// Output root from the environment, or the default.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_ROOT))
}

fn output_dir(root: &Path, cfg: &RunConfig) -> PathBuf {
    root.join(&cfg.output.dir)
}

fn references_dir(root: &Path) -> PathBuf {
    root.join("references")
}

/// Writes periodic outputs during a run; the final state is written by the
/// caller.
struct PeriodicWriter<'a> {
    cfg: &'a RunConfig,
    gas: GasModel,
    dir: PathBuf,
    stem: String,
    cadence: Option<Cadence>,
    written: Vec<PathBuf>,
    error: Option<OutputError>,
}

impl Observer for PeriodicWriter<'_> {
    fn observe(&mut self, info: &StepInfo, field: &ConservedField) {
        if self.error.is_some() || info.is_final {
            return;
        }
        let Some(c) = self.cadence.as_mut() else { return };
        if c.due(info) {
            let stem = format!("{}_s{:06}", self.stem, info.step);
            match write_field(self.cfg, &self.gas, field, &self.dir, &stem) {
                Ok(mut paths) => self.written.append(&mut paths),
                Err(e) => self.error = Some(e),
            }
        }
    }
}

fn write_field(
    cfg: &RunConfig,
    gas: &GasModel,
    field: &ConservedField,
    dir: &Path,
    stem: &str,
) -> Result<Vec<PathBuf>, OutputError> {
    let mut written = Vec::new();
    for f in &cfg.output.formats {
        let (path, bytes) = match f {
            OutputFormat::Csv => (dir.join(format!("{stem}.csv")), field_csv(field, gas).into_bytes()),
            OutputFormat::Vtk => {
                let title = format!("{} {} t={:?}", cfg.problem, cfg.scheme.label(), field.time);
                (dir.join(format!("{stem}.vtk")), field_vtk(field, gas, &title).into_bytes())
            }
            OutputFormat::Snapshot => {
                let snap = Snapshot::from_field(cfg.problem.as_str(), &cfg.scheme.cache_key(), field);
                (dir.join(format!("{stem}.snap")), snap.to_bytes())
            }
        };
        output::write_file(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}

fn run(cfg: &RunConfig, root: &Path, manifest: &mut RunManifest) -> Result<(), CliError> {
    let spec = cfg.problem_spec();
    let mut field = init_problem(&spec, spec.grid(cfg.n)?)?;
    let solver = Solver::new(cfg.scheme, spec.gas, spec.bc).with_source(spec.source);
    let dir = output_dir(root, cfg);
    let stem = format!("{}_{}_n{}", cfg.problem, cfg.scheme.label(), cfg.n);
    let mut tally = ConservationTally::default();
    let mut writer = PeriodicWriter {
        cfg,
        gas: spec.gas,
        dir: dir.clone(),
        stem: stem.clone(),
        cadence: (cfg.output.every_steps.is_some() || cfg.output.every_time.is_some())
            .then(|| Cadence::new(cfg.output.every_steps, cfg.output.every_time)),
        written: Vec::new(),
        error: None,
    };
    let result = solver.advance(&mut field, &cfg.controls(), &mut [&mut tally, &mut writer]);
    manifest.outputs.append(&mut writer.written);
    if let Some(init) = tally.initial {
        manifest.conservation = Some(output::Conservation {
            initial_totals: init,
            final_totals: field.totals(),
            max_relative_drift: tally.max_rel_drift,
        });
    }
    let log = result?;
    manifest.steps = log.steps();
    manifest.final_time = Some(field.time);
    manifest.fallback_faces = log.fallback_faces();
    if let Some(e) = writer.error {
        return Err(e.into());
    }
    manifest.outputs.extend(write_field(cfg, &spec.gas, &field, &dir, &stem)?);
    Ok(())
}

fn reference(cfg: &RunConfig, root: &Path, manifest: &mut RunManifest) -> Result<Option<Snapshot>, CliError> {
    let spec = cfg.problem_spec();
    let Some(n_ref) = cfg.study.reference_n else {
        if cfg.problem == ProblemName::AdvectSine {
            return Ok(None);
        }
        return Err(ConfigError::MissingRequired {
            key: "study.reference_n",
        }
        .into());
    };
    let dir = references_dir(root);
    let scheme = reference_scheme();
    let snap = reference_solution(&spec, n_ref, &scheme, Some(&dir))?;
    manifest.outputs.push(dir.join(reference_cache_name(&spec, n_ref, &scheme)));
    Ok(Some(snap))
}

fn study(cfg: &RunConfig, root: &Path, manifest: &mut RunManifest) -> Result<(), CliError> {
    let spec = cfg.problem_spec();
    let reference = reference(cfg, root, manifest)?;
    let reports = convergence_study(
        &spec,
        &cfg.study_cases(),
        &cfg.study.resolutions,
        &cfg.controls(),
        reference.as_ref(),
    )?;
    let path = output_dir(root, cfg).join(format!("{}_convergence.csv", cfg.problem));
    output::write_file(&path, convergence_csv(&reports).as_bytes())?;
    manifest.outputs.push(path);
    Ok(())
}

/// Execute `command` and write its manifest. Never panics on bad input; the
/// returned manifest carries the exit code.
pub fn execute(command: Command, config: &Path, overrides: &[String], root: &Path) -> RunManifest {
    let start = Instant::now();
    let mut manifest = RunManifest::new(command.as_str());
    let parsed = RunConfig::from_file(config, overrides);
    let (dir, result) = match parsed {
        Err(e) => (root.to_path_buf(), Err(CliError::Config(e))),
        Ok(cfg) => {
            let cfg = &cfg;
            manifest.config = cfg.echo();
            let r = match command {
                Command::Run => run(cfg, root, &mut manifest),
                Command::Study => study(cfg, root, &mut manifest),
                Command::Reference => reference(cfg, root, &mut manifest).and_then(|s| {
                    if s.is_none() {
                        return Err(ConfigError::MissingRequired {
                            key: "study.reference_n",
                        }
                        .into());
                    }
                    Ok(())
                }),
            };
            (output_dir(root, cfg), r)
        }
    };
    if let Err(e) = result {
        manifest.status = "failed";
        manifest.exit_code = e.exit_code();
        manifest.failure = Some(e.failure());
    }
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    let path = dir.join(format!("{}_manifest.json", command.as_str()));
    if let Err(e) = output::write_file(&path, manifest.to_json().as_bytes()) {
        eprintln!("could not write manifest: {e}");
        if manifest.exit_code == EXIT_OK {
            manifest.exit_code = EXIT_IO;
        }
    }
    manifest
}
