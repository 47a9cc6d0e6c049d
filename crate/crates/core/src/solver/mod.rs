//! Uniform-grid finite-volume discretisation, boundary conditions and time
//! integration.

use thiserror::Error;

use crate::euler::{Axis, EulerError};

pub mod boundary;
pub mod grid;
pub mod rhs;
pub mod time;

pub use boundary::{fill_ghosts, BoundaryCondition, BoundarySpec};
pub use grid::{ConservedField, Grid, MIN_GHOST};
pub use rhs::{
    rhs_1d, rhs_2d, FaceFallback, Rates, ReconstructionOrder, SchemeConfig, SourceSpec, VariableSpace,
};
pub use time::{
    advance, clip_to_end, compute_dt, max_wave_speed, rk3_step, Cadence, ConservationTally,
    DtLaw, Observer, Solver, StepInfo, StepLog, StepRecord, TimeControls,
};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("invalid time step {dt} at t = {time}")]
    TimeStep { dt: f64, time: f64 },
    #[error(
        "non-physical state near cell ({}, {}){} at t = {time}, step {step}, stage {stage}: {source}",
        cell[0], cell[1], sweep_label(sweep)
    )]
    NonPhysical {
        /// Storage coordinates `(i, j)`; in a sweep this is the cell right of
        /// the failing face.
        cell: [isize; 2],
        sweep: Option<Axis>,
        time: f64,
        step: usize,
        stage: usize,
        #[source]
        source: EulerError,
    },
}

fn sweep_label(s: &Option<Axis>) -> &'static str {
    match s {
        Some(Axis::X) => " in the x sweep",
        Some(Axis::Y) => " in the y sweep",
        None => "",
    }
}

impl SolverError {
    pub(crate) fn at_stage(mut self, s: usize) -> Self {
        if let SolverError::NonPhysical { stage, .. } = &mut self {
            *stage = s;
        }
        self
    }

    pub(crate) fn at_step(mut self, s: usize) -> Self {
        if let SolverError::NonPhysical { step, .. } = &mut self {
            *step = s;
        }
        self
    }
}
