//! Named benchmark problems, initial conditions, reference solutions and
//! error measurement.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::euler::{GasModel, PrimitiveState};
use crate::solver::boundary::dmr_post_shock;
use crate::solver::{
    BoundaryCondition, BoundarySpec, DtLaw, Grid, SolverError, SourceSpec, TimeControls,
};

pub mod init;
pub mod norms;
pub mod snapshot;

pub use init::{cell_average, exact_advect_sine, exact_advect_sine_average, init_problem};
pub use norms::{
    convergence_csv, convergence_study, error_norms, orders, reference_cache_name, reference_scheme,
    reference_solution,
    run_problem, ErrorNorms, ErrorReport, Reference, StudyCase,
};
pub use snapshot::Snapshot;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("unknown problem `{0}`")]
    Unknown(String),
    #[error("configuration mismatch: {0}")]
    Mismatch(String),
    #[error("resolution mismatch: {0}")]
    Resolution(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed snapshot: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemName {
    AdvectSine,
    BlastWave,
    ShuOsher,
    TitarevToro,
    DoubleMach,
    Riemann2dShocks,
    Riemann2dContacts,
    RayleighTaylor,
}

impl ProblemName {
    pub const ALL: [ProblemName; 8] = [
        ProblemName::AdvectSine,
        ProblemName::BlastWave,
        ProblemName::ShuOsher,
        ProblemName::TitarevToro,
        ProblemName::DoubleMach,
        ProblemName::Riemann2dShocks,
        ProblemName::Riemann2dContacts,
        ProblemName::RayleighTaylor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemName::AdvectSine => "advect_sine",
            ProblemName::BlastWave => "blast_wave",
            ProblemName::ShuOsher => "shu_osher",
            ProblemName::TitarevToro => "titarev_toro",
            ProblemName::DoubleMach => "double_mach",
            ProblemName::Riemann2dShocks => "riemann2d_shocks",
            ProblemName::Riemann2dContacts => "riemann2d_contacts",
            ProblemName::RayleighTaylor => "rayleigh_taylor",
        }
    }
}

impl fmt::Display for ProblemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemName {
    type Err = ProblemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| ProblemError::Unknown(s.to_string()))
    }
}

/// How the sound speed in the Rayleigh–Taylor velocity perturbation is
/// evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RtSoundSpeed {
    /// `sqrt(gamma p / rho)` from the layer's own state at that height.
    #[default]
    Local,
    Constant(f64),
}

/// Meaning of a resolution number `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshUnit {
    /// `n` cells along each axis.
    Cells,
    /// `n` cells per unit length along each axis (`dx = 1/n`).
    PerLength,
}

impl MeshUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            MeshUnit::Cells => "cells",
            MeshUnit::PerLength => "per_length",
        }
    }
}

/// A fully specified benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub name: ProblemName,
    pub dim: usize,
    pub extent: [(f64, f64); 2],
    pub default_n: usize,
    /// Cells in 1D and per unit length in 2D unless overridden.
    pub mesh_unit: MeshUnit,
    pub gas: GasModel,
    pub t_end: f64,
    pub bc: BoundarySpec,
    pub source: SourceSpec,
    pub rt_sound_speed: RtSoundSpeed,
}

impl ProblemSpec {
    pub fn named(name: ProblemName) -> Self {
        use BoundaryCondition::*;
        let base = |dim, extent, n, t_end, bc| Self {
            name,
            dim,
            extent,
            default_n: n,
            mesh_unit: if dim == 1 { MeshUnit::Cells } else { MeshUnit::PerLength },
            gas: GasModel::air(),
            t_end,
            bc,
            source: SourceSpec::None,
            rt_sound_speed: RtSoundSpeed::Local,
        };
        let unit = (0.0, 1.0);
        match name {
            ProblemName::AdvectSine => base(1, [(0.0, 2.0), unit], 40, 2.0, BoundarySpec::all(Periodic)),
            ProblemName::BlastWave => {
                base(1, [(0.0, 100.0), unit], 400, 3.8, BoundarySpec::all(Reflective))
            }
            ProblemName::ShuOsher => base(1, [(-5.0, 5.0), unit], 400, 1.8, BoundarySpec::all(Outflow)),
            ProblemName::TitarevToro => {
                base(1, [(-5.0, 5.0), unit], 1000, 5.0, BoundarySpec::all(Outflow))
            }
            ProblemName::DoubleMach => base(
                2,
                [(0.0, 4.0), unit],
                120,
                0.2,
                BoundarySpec {
                    x_lo: Fixed(dmr_post_shock()),
                    x_hi: Outflow,
                    y_lo: DmrBottom,
                    y_hi: DmrTop,
                },
            ),
            ProblemName::Riemann2dShocks => base(2, [unit, unit], 250, 0.6, BoundarySpec::all(Outflow)),
            ProblemName::Riemann2dContacts => {
                base(2, [unit, unit], 250, 0.35, BoundarySpec::all(Outflow))
            }
            ProblemName::RayleighTaylor => {
                let mut s = base(
                    2,
                    [(0.0, 0.25), unit],
                    100,
                    2.25,
                    BoundarySpec {
                        x_lo: Reflective,
                        x_hi: Reflective,
                        y_lo: Fixed(PrimitiveState::new(2.0, 0.0, 0.0, 1.0)),
                        y_hi: Fixed(PrimitiveState::new(1.0, 0.0, 0.0, 2.5)),
                    },
                );
                s.gas = GasModel::monatomic();
                s.source = SourceSpec::RtGravity;
                s
            }
        }
    }

    /// Cell counts for resolution `n` under `mesh_unit`.
    pub fn cells(&self, n: usize) -> [usize; 2] {
        let along = |a: usize| match self.mesh_unit {
            MeshUnit::Cells => n,
            MeshUnit::PerLength => {
                let (lo, hi) = self.extent[a];
                ((hi - lo) * n as f64).round().max(1.0) as usize
            }
        };
        if self.dim == 1 {
            [along(0), 1]
        } else {
            [along(0), along(1)]
        }
    }

    pub fn grid(&self, n: usize) -> Result<Grid, ProblemError> {
        self.grid_cells(self.cells(n))
    }

    pub fn grid_cells(&self, cells: [usize; 2]) -> Result<Grid, ProblemError> {
        Ok(if self.dim == 1 {
            Grid::new_1d(self.extent[0].0, self.extent[0].1, cells[0])?
        } else {
            Grid::new_2d(self.extent[0], self.extent[1], cells[0], cells[1])?
        })
    }

    /// Default time controls: CFL 0.2 for the smooth accuracy test, 0.5 for
    /// the discontinuous benchmarks.
    pub fn default_controls(&self) -> TimeControls {
        let cfl = if self.name == ProblemName::AdvectSine { 0.2 } else { 0.5 };
        TimeControls {
            cfl,
            dt_law: DtLaw::Cfl,
            t_end: self.t_end,
        }
    }
}
