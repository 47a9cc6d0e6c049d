//! Run configuration.
//!
//! The format is line oriented. Each non-blank line is `key = value`, where
//! `key` is either `problem` or `section.key`. `#` starts a comment. A later
//! assignment to the same key replaces an earlier one, and command-line
//! overrides (`key=value`) are applied after the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::euler::{FluxKind, GasModel};
use crate::problems::{MeshUnit, ProblemName, ProblemSpec, RtSoundSpeed, StudyCase};
use crate::solver::{
    DtLaw, FaceFallback, ReconstructionOrder, SchemeConfig, TimeControls, VariableSpace,
};
use crate::weno::{Tau6Form, WeightKind, WeightScheme};

/// Where a setting came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    /// 1-based position among the command-line overrides.
    Override(usize),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Override(n) => write!(f, "override #{n}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{at}: expected `key = value`, got `{text}`")]
    Syntax { at: Origin, text: String },
    #[error("{at}: unknown key `{key}`")]
    UnknownKey { key: String, at: Origin },
    #[error("{at}: `{key}` expects {expected}, got `{value}`")]
    TypeMismatch {
        key: String,
        at: Origin,
        expected: &'static str,
        value: String,
    },
    #[error("{at}: `{key}` must be one of {allowed}, got `{value}`")]
    UnknownValue {
        key: String,
        at: Origin,
        allowed: &'static str,
        value: String,
    },
    #[error("missing required key `{key}`")]
    MissingRequired { key: &'static str },
    #[error("{at}: `{key}`: {reason}")]
    Invalid {
        key: String,
        at: Origin,
        reason: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ConfigError {
    /// Key the error refers to, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::UnknownKey { key, .. }
            | ConfigError::TypeMismatch { key, .. }
            | ConfigError::UnknownValue { key, .. }
            | ConfigError::Invalid { key, .. } => Some(key),
            ConfigError::MissingRequired { key } => Some(key),
            ConfigError::Syntax { .. } | ConfigError::Io { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtChoice {
    Cfl,
    DxSquared,
    DxFraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Vtk,
    Snapshot,
}

impl OutputFormat {
    fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Vtk => "vtk",
            OutputFormat::Snapshot => "snapshot",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    /// Entries `[weno5-|weno6-]{linear|js|z}`; the entry text is the label.
    pub schemes: Vec<String>,
    pub resolutions: Vec<usize>,
    pub reference_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    /// Relative paths are taken under the output root.
    pub dir: String,
    pub formats: Vec<OutputFormat>,
    pub every_steps: Option<usize>,
    pub every_time: Option<f64>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemName,
    pub n: usize,
    pub mesh_unit: MeshUnit,
    pub t_end: f64,
    pub gamma: f64,
    pub rt_sound_speed: RtSoundSpeed,
    pub scheme: SchemeConfig,
    pub dt_law: DtChoice,
    pub dt_fraction: f64,
    pub cfl: f64,
    pub study: StudyConfig,
    pub output: OutputConfig,
}

const KEYS: &[&str] = &[
    "problem",
    "problem.n",
    "problem.mesh_unit",
    "problem.t_end",
    "problem.gamma",
    "problem.rt_sound_speed",
    "scheme.kind",
    "scheme.weights",
    "scheme.p",
    "scheme.q",
    "scheme.epsilon",
    "scheme.tau",
    "scheme.flux",
    "scheme.variables",
    "scheme.fallback",
    "time.dt_law",
    "time.dt_fraction",
    "time.cfl",
    "study.schemes",
    "study.resolutions",
    "study.reference_n",
    "output.dir",
    "output.formats",
    "output.every_steps",
    "output.every_time",
];

const PROBLEM_NAMES: &str = "advect_sine, blast_wave, shu_osher, titarev_toro, double_mach, \
                             riemann2d_shocks, riemann2d_contacts, rayleigh_taylor";

/// Raw assignments, last one per key wins.
type Entries = BTreeMap<&'static str, (String, Origin)>;

fn split_assignment(text: &str) -> Option<(&str, &str)> {
    let (k, v) = text.split_once('=')?;
    let (k, v) = (k.trim(), v.trim());
    (!k.is_empty() && !v.is_empty()).then_some((k, v))
}

fn record(entries: &mut Entries, key: &str, value: &str, at: Origin) -> Result<(), ConfigError> {
    let known = KEYS.iter().find(|k| **k == key).ok_or_else(|| ConfigError::UnknownKey {
        key: key.to_string(),
        at,
    })?;
    entries.insert(known, (value.to_string(), at));
    Ok(())
}

fn choice<T: Copy>(
    key: &str,
    value: &str,
    at: Origin,
    allowed: &'static str,
    table: &[(&str, T)],
) -> Result<T, ConfigError> {
    table
        .iter()
        .find(|(name, _)| *name == value)
        .map(|(_, v)| *v)
        .ok_or_else(|| ConfigError::UnknownValue {
            key: key.to_string(),
            at,
            allowed,
            value: value.to_string(),
        })
}

fn mismatch(key: &str, value: &str, at: Origin, expected: &'static str) -> ConfigError {
    ConfigError::TypeMismatch {
        key: key.to_string(),
        at,
        expected,
        value: value.to_string(),
    }
}

fn invalid(key: &str, at: Origin, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        at,
        reason: reason.into(),
    }
}

fn positive_int(key: &str, value: &str, at: Origin) -> Result<usize, ConfigError> {
    match value.parse::<usize>() {
        Ok(0) => Err(invalid(key, at, "must be at least 1")),
        Ok(n) => Ok(n),
        Err(_) => Err(mismatch(key, value, at, "a positive integer")),
    }
}

fn real(key: &str, value: &str, at: Origin) -> Result<f64, ConfigError> {
    match value.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(mismatch(key, value, at, "a finite real number")),
    }
}

fn positive_real(key: &str, value: &str, at: Origin) -> Result<f64, ConfigError> {
    let x = real(key, value, at)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(key, at, "must be positive"))
    }
}

fn optional<T>(
    value: &str,
    parse: impl FnOnce(&str) -> Result<T, ConfigError>,
) -> Result<Option<T>, ConfigError> {
    if value == "none" {
        Ok(None)
    } else {
        parse(value).map(Some)
    }
}

fn list(key: &str, value: &str, at: Origin) -> Result<Vec<String>, ConfigError> {
    let items: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(mismatch(key, value, at, "a comma-separated list"));
    }
    Ok(items)
}

const WEIGHT_TABLE: &[(&str, WeightKind)] =
    &[("linear", WeightKind::Linear), ("js", WeightKind::Js), ("z", WeightKind::Z)];
const ORDER_TABLE: &[(&str, ReconstructionOrder)] =
    &[("weno5", ReconstructionOrder::Weno5), ("weno6", ReconstructionOrder::Weno6)];

/// Scheme for a study entry, starting from `base`.
fn study_scheme(base: &SchemeConfig, entry: &str, at: Origin) -> Result<SchemeConfig, ConfigError> {
    let key = "study.schemes";
    let (order, weights) = match entry.split_once('-') {
        Some((o, w)) => (Some(choice(key, o, at, "weno5, weno6", ORDER_TABLE)?), w),
        None => (None, entry),
    };
    let kind = choice(key, weights, at, "linear, js, z (optionally prefixed weno5- or weno6-)", WEIGHT_TABLE)?;
    let mut s = *base;
    if let Some(o) = order {
        s.order = o;
    }
    s.weights.kind = kind;
    Ok(s)
}

impl RunConfig {
    pub fn from_file(path: &Path, overrides: &[String]) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, overrides)
    }

    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut entries = Entries::new();
        for (i, raw) in text.lines().enumerate() {
            let at = Origin::Line(i + 1);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = split_assignment(line).ok_or_else(|| ConfigError::Syntax {
                at,
                text: line.to_string(),
            })?;
            record(&mut entries, k, v, at)?;
        }
        for (i, o) in overrides.iter().enumerate() {
            let at = Origin::Override(i + 1);
            let (k, v) = split_assignment(o).ok_or_else(|| ConfigError::Syntax {
                at,
                text: o.clone(),
            })?;
            record(&mut entries, k, v, at)?;
        }
        Self::resolve(&entries)
    }

    fn resolve(e: &Entries) -> Result<Self, ConfigError> {
        let (name, at) = e
            .get("problem")
            .ok_or(ConfigError::MissingRequired { key: "problem" })?;
        let problem = name.parse::<ProblemName>().map_err(|_| ConfigError::UnknownValue {
            key: "problem".into(),
            at: *at,
            allowed: PROBLEM_NAMES,
            value: name.clone(),
        })?;
        let spec = ProblemSpec::named(problem);
        let defaults = spec.default_controls();
        let mut scheme = SchemeConfig::weno6(WeightScheme::z());
        let mut cfg = RunConfig {
            problem,
            n: spec.default_n,
            mesh_unit: spec.mesh_unit,
            t_end: spec.t_end,
            gamma: spec.gas.gamma,
            rt_sound_speed: spec.rt_sound_speed,
            scheme,
            dt_law: DtChoice::Cfl,
            dt_fraction: 0.2,
            cfl: defaults.cfl,
            study: StudyConfig {
                schemes: Vec::new(),
                resolutions: Vec::new(),
                reference_n: None,
            },
            output: OutputConfig {
                dir: problem.as_str().to_string(),
                formats: vec![if spec.dim == 1 { OutputFormat::Csv } else { OutputFormat::Vtk }],
                every_steps: None,
                every_time: None,
            },
        };
        let mut study_entries: Option<(Vec<String>, Origin)> = None;
        let mut resolutions_at = None;
        let mut reference_at = None;

        for (&key, (v, at)) in e {
            let at = *at;
            let v = v.as_str();
            match key {
                "problem" => {}
                "problem.n" => cfg.n = positive_int(key, v, at)?,
                "problem.mesh_unit" => {
                    cfg.mesh_unit = choice(
                        key,
                        v,
                        at,
                        "cells, per_length",
                        &[("cells", MeshUnit::Cells), ("per_length", MeshUnit::PerLength)],
                    )?
                }
                "problem.t_end" => {
                    cfg.t_end = real(key, v, at)?;
                    if cfg.t_end < 0.0 {
                        return Err(invalid(key, at, "must be >= 0"));
                    }
                }
                "problem.gamma" => {
                    cfg.gamma = real(key, v, at)?;
                    if GasModel::new(cfg.gamma).is_none() {
                        return Err(invalid(key, at, "must exceed 1"));
                    }
                }
                "problem.rt_sound_speed" => {
                    cfg.rt_sound_speed = if v == "local" {
                        RtSoundSpeed::Local
                    } else {
                        RtSoundSpeed::Constant(
                            positive_real(key, v, at)
                                .map_err(|_| mismatch(key, v, at, "`local` or a positive real"))?,
                        )
                    }
                }
                "scheme.kind" => scheme.order = choice(key, v, at, "weno5, weno6", ORDER_TABLE)?,
                "scheme.weights" => scheme.weights.kind = choice(key, v, at, "linear, js, z", WEIGHT_TABLE)?,
                "scheme.p" => scheme.weights.p = small_int(key, v, at)?,
                "scheme.q" => scheme.weights.q = small_int(key, v, at)?,
                "scheme.epsilon" => scheme.weights.epsilon = positive_real(key, v, at)?,
                "scheme.tau" => {
                    scheme.weights.tau6 = choice(
                        key,
                        v,
                        at,
                        "balanced, unbalanced",
                        &[("balanced", Tau6Form::Balanced), ("unbalanced", Tau6Form::Unbalanced)],
                    )?
                }
                "scheme.flux" => {
                    scheme.flux =
                        choice(key, v, at, "hllc, llf", &[("hllc", FluxKind::Hllc), ("llf", FluxKind::Llf)])?
                }
                "scheme.variables" => {
                    scheme.variables = choice(
                        key,
                        v,
                        at,
                        "characteristic, component",
                        &[
                            ("characteristic", VariableSpace::Characteristic),
                            ("component", VariableSpace::Component),
                        ],
                    )?
                }
                "scheme.fallback" => {
                    scheme.fallback = choice(
                        key,
                        v,
                        at,
                        "first_order, abort",
                        &[("first_order", FaceFallback::FirstOrder), ("abort", FaceFallback::Abort)],
                    )?
                }
                "time.dt_law" => {
                    cfg.dt_law = choice(
                        key,
                        v,
                        at,
                        "cfl, dx_squared, dx_fraction",
                        &[
                            ("cfl", DtChoice::Cfl),
                            ("dx_squared", DtChoice::DxSquared),
                            ("dx_fraction", DtChoice::DxFraction),
                        ],
                    )?
                }
                "time.dt_fraction" => cfg.dt_fraction = positive_real(key, v, at)?,
                "time.cfl" => {
                    cfg.cfl = positive_real(key, v, at)?;
                    if cfg.cfl > 1.0 {
                        return Err(invalid(key, at, "must not exceed 1"));
                    }
                }
                "study.schemes" => study_entries = Some((list(key, v, at)?, at)),
                "study.resolutions" => {
                    cfg.study.resolutions = list(key, v, at)?
                        .iter()
                        .map(|s| positive_int(key, s, at))
                        .collect::<Result<_, _>>()?;
                    resolutions_at = Some(at);
                }
                "study.reference_n" => {
                    cfg.study.reference_n = optional(v, |s| positive_int(key, s, at))?;
                    reference_at = Some(at);
                }
                "output.dir" => cfg.output.dir = v.to_string(),
                "output.formats" => {
                    cfg.output.formats = list(key, v, at)?
                        .iter()
                        .map(|s| {
                            choice(
                                key,
                                s,
                                at,
                                "csv, vtk, snapshot",
                                &[
                                    ("csv", OutputFormat::Csv),
                                    ("vtk", OutputFormat::Vtk),
                                    ("snapshot", OutputFormat::Snapshot),
                                ],
                            )
                        })
                        .collect::<Result<_, _>>()?
                }
                "output.every_steps" => cfg.output.every_steps = optional(v, |s| positive_int(key, s, at))?,
                "output.every_time" => cfg.output.every_time = optional(v, |s| positive_real(key, s, at))?,
                other => unreachable!("key table out of sync: {other}"),
            }
        }
        cfg.scheme = scheme;

        if let Some(at) = e.get("output.formats").map(|(_, at)| *at) {
            if spec.dim == 1 && cfg.output.formats.contains(&OutputFormat::Vtk) {
                return Err(invalid("output.formats", at, "vtk output needs a 2D problem"));
            }
        }

        match study_entries {
            Some((items, at)) => {
                for s in &items {
                    study_scheme(&cfg.scheme, s, at)?;
                }
                cfg.study.schemes = items;
            }
            None => {
                let w = WEIGHT_TABLE
                    .iter()
                    .find(|(_, k)| *k == cfg.scheme.weights.kind)
                    .map(|(n, _)| *n)
                    .expect("every weight kind has a name");
                cfg.study.schemes = vec![w.to_string()];
            }
        }
        if cfg.study.resolutions.is_empty() {
            cfg.study.resolutions = vec![cfg.n, 2 * cfg.n, 4 * cfg.n];
        }
        if let Some(at) = resolutions_at {
            if cfg.study.resolutions.windows(2).any(|w| w[1] <= w[0]) {
                return Err(invalid("study.resolutions", at, "must be strictly increasing"));
            }
        }
        if let (Some(nr), Some(at)) = (cfg.study.reference_n, reference_at) {
            for &r in &cfg.study.resolutions {
                if nr < 8 * r || nr % r != 0 {
                    return Err(invalid(
                        "study.reference_n",
                        at,
                        format!("must be a multiple of every resolution and at least 8x it (resolution {r})"),
                    ));
                }
            }
        }
        Ok(cfg)
    }

    /// Deterministic `key = value` rendering of every setting;
    /// `parse(echo)` reproduces the configuration.
    pub fn echo(&self) -> String {
        let mut lines: Vec<(&str, String)> = Vec::new();
        let w = &self.scheme.weights;
        let name_of = |table: &[(&'static str, WeightKind)], k| {
            table.iter().find(|(_, v)| *v == k).map(|(n, _)| *n).unwrap_or("?")
        };
        lines.push(("problem", self.problem.as_str().into()));
        lines.push(("problem.n", self.n.to_string()));
        lines.push(("problem.mesh_unit", self.mesh_unit.as_str().into()));
        lines.push(("problem.t_end", format!("{:?}", self.t_end)));
        lines.push(("problem.gamma", format!("{:?}", self.gamma)));
        lines.push((
            "problem.rt_sound_speed",
            match self.rt_sound_speed {
                RtSoundSpeed::Local => "local".into(),
                RtSoundSpeed::Constant(c) => format!("{c:?}"),
            },
        ));
        lines.push((
            "scheme.kind",
            match self.scheme.order {
                ReconstructionOrder::Weno5 => "weno5",
                ReconstructionOrder::Weno6 => "weno6",
            }
            .into(),
        ));
        lines.push(("scheme.weights", name_of(WEIGHT_TABLE, w.kind).into()));
        lines.push(("scheme.p", w.p.to_string()));
        lines.push(("scheme.q", w.q.to_string()));
        lines.push(("scheme.epsilon", format!("{:?}", w.epsilon)));
        lines.push((
            "scheme.tau",
            match w.tau6 {
                Tau6Form::Balanced => "balanced",
                Tau6Form::Unbalanced => "unbalanced",
            }
            .into(),
        ));
        lines.push((
            "scheme.flux",
            match self.scheme.flux {
                FluxKind::Hllc => "hllc",
                FluxKind::Llf => "llf",
            }
            .into(),
        ));
        lines.push((
            "scheme.variables",
            match self.scheme.variables {
                VariableSpace::Characteristic => "characteristic",
                VariableSpace::Component => "component",
            }
            .into(),
        ));
        lines.push((
            "scheme.fallback",
            match self.scheme.fallback {
                FaceFallback::FirstOrder => "first_order",
                FaceFallback::Abort => "abort",
            }
            .into(),
        ));
        lines.push((
            "time.dt_law",
            match self.dt_law {
                DtChoice::Cfl => "cfl",
                DtChoice::DxSquared => "dx_squared",
                DtChoice::DxFraction => "dx_fraction",
            }
            .into(),
        ));
        lines.push(("time.dt_fraction", format!("{:?}", self.dt_fraction)));
        lines.push(("time.cfl", format!("{:?}", self.cfl)));
        lines.push(("study.schemes", self.study.schemes.join(", ")));
        lines.push((
            "study.resolutions",
            self.study.resolutions.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
        ));
        lines.push((
            "study.reference_n",
            self.study.reference_n.map_or("none".into(), |n| n.to_string()),
        ));
        lines.push(("output.dir", self.output.dir.clone()));
        lines.push((
            "output.formats",
            self.output.formats.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(", "),
        ));
        lines.push((
            "output.every_steps",
            self.output.every_steps.map_or("none".into(), |n| n.to_string()),
        ));
        lines.push((
            "output.every_time",
            self.output.every_time.map_or("none".into(), |t| format!("{t:?}")),
        ));
        let mut out = String::new();
        for (k, v) in lines {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    /// Problem definition with the configured overrides applied.
    pub fn problem_spec(&self) -> ProblemSpec {
        let mut spec = ProblemSpec::named(self.problem);
        spec.mesh_unit = self.mesh_unit;
        spec.t_end = self.t_end;
        spec.gas = GasModel::new(self.gamma).expect("gamma validated at parse time");
        spec.rt_sound_speed = self.rt_sound_speed;
        spec
    }

    pub fn controls(&self) -> TimeControls {
        TimeControls {
            cfl: self.cfl,
            dt_law: match self.dt_law {
                DtChoice::Cfl => DtLaw::Cfl,
                DtChoice::DxSquared => DtLaw::DxSquared,
                DtChoice::DxFraction => DtLaw::CoefficientDx(self.dt_fraction),
            },
            t_end: self.t_end,
        }
    }

    pub fn study_cases(&self) -> Vec<StudyCase> {
        self.study
            .schemes
            .iter()
            .map(|s| {
                let scheme = study_scheme(&self.scheme, s, Origin::Line(0)).expect("entries validated at parse time");
                StudyCase::new(s, scheme)
            })
            .collect()
    }
}

fn small_int(key: &str, value: &str, at: Origin) -> Result<u32, ConfigError> {
    let n = positive_int(key, value, at)?;
    if n > 16 {
        return Err(invalid(key, at, "must not exceed 16"));
    }
    Ok(n as u32)
}
