//! Error norms, reference solutions and convergence studies.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::solver::{ConservedField, Observer, SchemeConfig, Solver, StepLog, TimeControls};
use crate::weno::WeightScheme;

use super::init::exact_advect_sine_average;
use super::{init_problem, ProblemError, ProblemName, ProblemSpec, RtSoundSpeed, Snapshot};

/// Density error norms; L1 is weighted by cell volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub linf: f64,
}

/// What a computed density field is compared against.
pub enum Reference<'a> {
    /// Exact cell-averaged density from the cell's `x` and `y` ranges.
    Exact(&'a dyn Fn((f64, f64), (f64, f64)) -> f64),
    /// A finer snapshot, block-averaged onto the field's grid.
    Snapshot(&'a Snapshot),
}

pub fn error_norms(field: &ConservedField, reference: &Reference) -> Result<ErrorNorms, ProblemError> {
    let grid = &field.grid;
    let vol = grid.dx[0] * if grid.dim == 2 { grid.dx[1] } else { 1.0 };
    let [nx, ny] = grid.n;
    let mut l1 = 0.0;
    let mut linf = 0.0f64;
    let mut acc = |e: f64| {
        l1 += e * vol;
        linf = linf.max(e);
    };
    match reference {
        Reference::Exact(f) => {
            for (i, j, u) in field.interior() {
                let (i, j) = (i as isize, j as isize);
                let xs = (grid.face(0, i), grid.face(0, i + 1));
                let ys = (grid.face(1, j), grid.face(1, j + 1));
                acc((u[0] - f(xs, ys)).abs());
            }
        }
        Reference::Snapshot(s) => {
            let [sx, sy] = s.n;
            if sx % nx != 0 || sy % ny != 0 || sx < nx || sy < ny {
                return Err(ProblemError::Resolution(format!(
                    "reference {sx}x{sy} is not an integer refinement of {nx}x{ny}"
                )));
            }
            if (s.time - field.time).abs() > 1e-9 * s.time.abs().max(1.0) {
                return Err(ProblemError::Mismatch(format!(
                    "reference at t = {} but field at t = {}",
                    s.time, field.time
                )));
            }
            let (rx, ry) = (sx / nx, sy / ny);
            let inv = 1.0 / (rx * ry) as f64;
            for (i, j, u) in field.interior() {
                let mut sum = 0.0;
                for b in 0..ry {
                    let row = (j * ry + b) * sx;
                    for a in 0..rx {
                        sum += s.data[row + i * rx + a][0];
                    }
                }
                acc((u[0] - sum * inv).abs());
            }
        }
    }
    Ok(ErrorNorms { l1, linf })
}

/// `log2(e_k-1 / e_k)` between successive rows whose resolutions double.
pub fn orders(resolutions: &[usize], errors: &[f64]) -> Vec<Option<f64>> {
    (0..errors.len())
        .map(|k| {
            if k == 0 || resolutions[k] != 2 * resolutions[k - 1] {
                None
            } else {
                Some((errors[k - 1] / errors[k]).log2())
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub label: String,
    pub resolutions: Vec<usize>,
    pub l1: Vec<f64>,
    pub linf: Vec<f64>,
}

impl ErrorReport {
    pub fn l1_orders(&self) -> Vec<Option<f64>> {
        orders(&self.resolutions, &self.l1)
    }
}

/// One scheme in a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyCase {
    pub label: String,
    pub scheme: SchemeConfig,
}

impl StudyCase {
    pub fn new(label: &str, scheme: SchemeConfig) -> Self {
        Self {
            label: label.to_string(),
            scheme,
        }
    }
}

/// Initialise `spec` at resolution `n` and run it to `controls.t_end`.
pub fn run_problem(
    spec: &ProblemSpec,
    n: usize,
    scheme: &SchemeConfig,
    controls: &TimeControls,
    observers: &mut [&mut dyn Observer],
) -> Result<(ConservedField, StepLog), ProblemError> {
    let mut field = init_problem(spec, spec.grid(n)?)?;
    let solver = Solver::new(*scheme, spec.gas, spec.bc).with_source(spec.source);
    let log = solver.advance(&mut field, controls, observers)?;
    Ok((field, log))
}

/// Scheme used for fine-grid references.
pub fn reference_scheme() -> SchemeConfig {
    SchemeConfig::weno6(WeightScheme::z())
}

/// File name of the cached reference for `(spec, n_ref, scheme)`.
pub fn reference_cache_name(spec: &ProblemSpec, n_ref: usize, scheme: &SchemeConfig) -> String {
    let [nx, ny] = spec.cells(n_ref);
    let sound = match spec.rt_sound_speed {
        RtSoundSpeed::Local => String::new(),
        RtSoundSpeed::Constant(c) => format!("_c{c:?}"),
    };
    format!(
        "{}_{}x{}_{}_t{:?}_g{:?}{sound}.snap",
        spec.name,
        nx,
        ny,
        scheme.cache_key(),
        spec.t_end,
        spec.gas.gamma
    )
}

/// Fine-grid reference computed with `scheme` (normally
/// [`reference_scheme`]), cached under `cache_dir` when given.
pub fn reference_solution(
    spec: &ProblemSpec,
    n_ref: usize,
    scheme: &SchemeConfig,
    cache_dir: Option<&Path>,
) -> Result<Snapshot, ProblemError> {
    let path = cache_dir.map(|d| d.join(reference_cache_name(spec, n_ref, scheme)));
    if let Some(p) = &path {
        if p.exists() {
            if let Ok(s) = Snapshot::load(p) {
                if s.problem == spec.name.as_str() && s.n == spec.cells(n_ref) && s.scheme == scheme.cache_key() {
                    return Ok(s);
                }
            }
        }
    }
    let controls = spec.default_controls();
    let (field, _) = run_problem(spec, n_ref, scheme, &controls, &mut [])?;
    let snap = Snapshot::from_field(spec.name.as_str(), &scheme.cache_key(), &field);
    if let Some(p) = &path {
        snap.save(p)?;
    }
    Ok(snap)
}

/// Run every `(case, resolution)` pair and tabulate density errors.
///
/// Without a snapshot the exact solution is used, which only exists for
/// `advect_sine`.
pub fn convergence_study(
    spec: &ProblemSpec,
    cases: &[StudyCase],
    resolutions: &[usize],
    controls: &TimeControls,
    reference: Option<&Snapshot>,
) -> Result<Vec<ErrorReport>, ProblemError> {
    if reference.is_none() && spec.name != ProblemName::AdvectSine {
        return Err(ProblemError::Mismatch(format!(
            "{} has no exact solution; a reference snapshot is required",
            spec.name
        )));
    }
    let t_end = controls.t_end;
    let exact = move |xs: (f64, f64), _ys: (f64, f64)| exact_advect_sine_average(xs.0, xs.1, t_end);
    let jobs: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|c| (0..resolutions.len()).map(move |r| (c, r)))
        .collect();
    let results: Vec<ErrorNorms> = jobs
        .par_iter()
        .map(|&(c, r)| {
            let (field, _) = run_problem(spec, resolutions[r], &cases[c].scheme, controls, &mut [])?;
            let refr = match reference {
                Some(s) => Reference::Snapshot(s),
                None => Reference::Exact(&exact),
            };
            error_norms(&field, &refr)
        })
        .collect::<Result<_, _>>()?;
    Ok(cases
        .iter()
        .enumerate()
        .map(|(c, case)| {
            let rows = &results[c * resolutions.len()..(c + 1) * resolutions.len()];
            ErrorReport {
                label: case.label.clone(),
                resolutions: resolutions.to_vec(),
                l1: rows.iter().map(|e| e.l1).collect(),
                linf: rows.iter().map(|e| e.linf).collect(),
            }
        })
        .collect())
}

/// Convergence table as CSV: `mesh`, then `<label>_L1, <label>_order` per
/// report. The first row leaves the order empty.
pub fn convergence_csv(reports: &[ErrorReport]) -> String {
    let mut out = String::from("mesh");
    for r in reports {
        write!(out, ",{0}_L1,{0}_order", r.label).expect("string write");
    }
    out.push('\n');
    let Some(first) = reports.first() else {
        return out;
    };
    let ords: Vec<Vec<Option<f64>>> = reports.iter().map(|r| r.l1_orders()).collect();
    for (k, n) in first.resolutions.iter().enumerate() {
        write!(out, "{n}").expect("string write");
        for (r, o) in reports.iter().zip(&ords) {
            write!(out, ",{:.16e},", r.l1[k]).expect("string write");
            if let Some(v) = o[k] {
                write!(out, "{v:.16e}").expect("string write");
            }
        }
        out.push('\n');
    }
    out
}
