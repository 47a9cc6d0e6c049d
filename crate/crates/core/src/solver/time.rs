use crate::euler::{pressure, Cons, GasModel, EulerError, NCONS};

use super::{
    fill_ghosts, rhs_1d, rhs_2d, BoundarySpec, Rates, ConservedField, SchemeConfig, SolverError,
    SourceSpec,
};

/// Time-step policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtLaw {
    /// `dt = cfl * min_axis(dx / max(|u| + c))`.
    Cfl,
    /// `dt = c * dx`.
    CoefficientDx(f64),
    /// `dt = dx^2`.
    DxSquared,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeControls {
    pub cfl: f64,
    pub dt_law: DtLaw,
    pub t_end: f64,
}

impl TimeControls {
    pub fn cfl(cfl: f64, t_end: f64) -> Self {
        Self {
            cfl,
            dt_law: DtLaw::Cfl,
            t_end,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(SolverError::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(SolverError::Config(format!("t_end must be finite and >= 0, got {}", self.t_end)));
        }
        if let DtLaw::CoefficientDx(c) = self.dt_law {
            if !(c > 0.0) || !c.is_finite() {
                return Err(SolverError::Config(format!("dt coefficient must be positive, got {c}")));
            }
        }
        Ok(())
    }
}

impl Default for TimeControls {
    fn default() -> Self {
        Self::cfl(0.5, 1.0)
    }
}

/// Largest `|u_a| + c` over interior cells, per axis.
pub fn max_wave_speed(field: &ConservedField, gas: &GasModel) -> Result<[f64; 2], SolverError> {
    let mut s = [0.0f64; 2];
    for (i, j, u) in field.interior() {
        let p = pressure(u, gas);
        if !(u[0] > 0.0) || !(p > 0.0) || !p.is_finite() {
            return Err(SolverError::NonPhysical {
                cell: [i as isize, j as isize],
                sweep: None,
                time: field.time,
                step: 0,
                stage: 0,
                source: EulerError::NonPhysicalState { rho: u[0], p },
            });
        }
        let c = (gas.gamma * p / u[0]).sqrt();
        s[0] = s[0].max((u[1] / u[0]).abs() + c);
        s[1] = s[1].max((u[2] / u[0]).abs() + c);
    }
    Ok(s)
}

/// Clip `dt` so a step never overshoots `t_end`; a step that would leave a
/// sliver shorter than a tiny fraction of `dt` is stretched to land on it.
pub fn clip_to_end(t: f64, dt: f64, t_end: f64) -> f64 {
    let remaining = t_end - t;
    if dt >= remaining * (1.0 - 1e-10) {
        remaining.max(0.0)
    } else {
        dt
    }
}

pub fn compute_dt(
    field: &ConservedField,
    controls: &TimeControls,
    gas: &GasModel,
) -> Result<f64, SolverError> {
    let grid = &field.grid;
    let dx_min = grid.dx[..grid.dim].iter().cloned().fold(f64::INFINITY, f64::min);
    let raw = match controls.dt_law {
        DtLaw::Cfl => {
            let s = max_wave_speed(field, gas)?;
            let mut dt = f64::INFINITY;
            for a in 0..grid.dim {
                if s[a] > 0.0 {
                    dt = dt.min(grid.dx[a] / s[a]);
                }
            }
            controls.cfl * dt
        }
        DtLaw::CoefficientDx(c) => c * dx_min,
        DtLaw::DxSquared => dx_min * dx_min,
    };
    Ok(clip_to_end(field.time, raw, controls.t_end))
}

fn lincomb(a: f64, x: &[Cons], b: f64, y: &[Cons], c: f64, z: &[Cons]) -> Vec<Cons> {
    x.iter()
        .zip(y)
        .zip(z)
        .map(|((x, y), z)| std::array::from_fn(|m| a * x[m] + b * y[m] + c * z[m]))
        .collect()
}

/// One three-stage TVD Runge–Kutta step. `rhs` receives the field with the
/// stage time set and must refresh ghosts itself.
pub fn rk3_step<F>(field: &mut ConservedField, dt: f64, mut rhs: F) -> Result<(), SolverError>
where
    F: FnMut(&mut ConservedField) -> Result<Vec<Cons>, SolverError>,
{
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(SolverError::TimeStep { dt, time: field.time });
    }
    let t0 = field.time;
    let u0 = field.interior_values();

    let l0 = rhs(field).map_err(|e| e.at_stage(1))?;
    let u1 = lincomb(1.0, &u0, 0.0, &u0, dt, &l0);
    field.set_interior(&u1);
    field.time = t0 + dt;

    let l1 = rhs(field).map_err(|e| e.at_stage(2))?;
    let u2 = lincomb(0.75, &u0, 0.25, &u1, 0.25 * dt, &l1);
    field.set_interior(&u2);
    field.time = t0 + 0.5 * dt;

    let l2 = rhs(field).map_err(|e| e.at_stage(3))?;
    let u3 = lincomb(1.0 / 3.0, &u0, 2.0 / 3.0, &u2, 2.0 / 3.0 * dt, &l2);
    field.set_interior(&u3);
    field.time = t0 + dt;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub is_final: bool,
}

/// Callback invoked once before the first step and after every step.
pub trait Observer {
    fn observe(&mut self, info: &StepInfo, field: &ConservedField);
}

/// Snapshot cadence: every k steps and/or every `dt_out` of simulated time.
/// The initial and final states are always due.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cadence {
    pub every_steps: Option<usize>,
    pub every_time: Option<f64>,
    next_time: f64,
}

impl Cadence {
    pub fn new(every_steps: Option<usize>, every_time: Option<f64>) -> Self {
        Self {
            every_steps,
            every_time,
            next_time: 0.0,
        }
    }

    pub fn due(&mut self, info: &StepInfo) -> bool {
        let mut due = info.step == 0 || info.is_final;
        if let Some(k) = self.every_steps {
            due |= k > 0 && info.step % k == 0;
        }
        if let Some(h) = self.every_time {
            if h > 0.0 && info.time >= self.next_time {
                due = true;
                while self.next_time <= info.time {
                    self.next_time += h;
                }
            }
        }
        due
    }
}

/// Tracks domain totals of each conserved component. Drift is relative to
/// the initial total, or absolute where that total is zero.
#[derive(Debug, Clone, Default)]
pub struct ConservationTally {
    pub initial: Option<Cons>,
    pub max_rel_drift: [f64; NCONS],
}

impl Observer for ConservationTally {
    fn observe(&mut self, _info: &StepInfo, field: &ConservedField) {
        let now = field.totals();
        let init = *self.initial.get_or_insert(now);
        for m in 0..NCONS {
            let d = (now[m] - init[m]).abs();
            let drift = if init[m] != 0.0 { d / init[m].abs() } else { d };
            self.max_rel_drift[m] = self.max_rel_drift[m].max(drift);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    /// Faces evaluated with fallback states, summed over the stages.
    pub fallback_faces: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepLog {
    pub records: Vec<StepRecord>,
}

impl StepLog {
    pub fn steps(&self) -> usize {
        self.records.len()
    }

    pub fn final_time(&self) -> Option<f64> {
        self.records.last().map(|r| r.time)
    }

    pub fn fallback_faces(&self) -> usize {
        self.records.iter().map(|r| r.fallback_faces).sum()
    }
}

/// Everything needed to evolve a field besides the time controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solver {
    pub scheme: SchemeConfig,
    pub gas: GasModel,
    pub bc: BoundarySpec,
    pub source: SourceSpec,
}

impl Solver {
    pub fn new(scheme: SchemeConfig, gas: GasModel, bc: BoundarySpec) -> Self {
        Self {
            scheme,
            gas,
            bc,
            source: SourceSpec::None,
        }
    }

    pub fn with_source(mut self, source: SourceSpec) -> Self {
        self.source = source;
        self
    }

    pub fn validate(&self, dim: usize) -> Result<(), SolverError> {
        self.bc.validate(dim)?;
        self.source.validate(dim)?;
        self.scheme
            .weights
            .validate()
            .map_err(|e| SolverError::Config(e.to_string()))
    }

    /// Refresh ghosts at the field time, then evaluate the rates.
    pub fn rhs(&self, field: &mut ConservedField) -> Result<Rates, SolverError> {
        fill_ghosts(field, &self.bc, &self.gas, field.time);
        if field.grid.dim == 1 {
            rhs_1d(field, &self.scheme, &self.gas)
        } else {
            rhs_2d(field, &self.scheme, &self.gas, self.source)
        }
    }

    /// One RK3 step; returns the fallback face count over its stages.
    pub fn step(&self, field: &mut ConservedField, dt: f64) -> Result<usize, SolverError> {
        let mut lowered = 0;
        rk3_step(field, dt, |f| {
            let r = self.rhs(f)?;
            lowered += r.fallback_faces;
            Ok(r.values)
        })?;
        Ok(lowered)
    }

    /// Run to `controls.t_end`.
    pub fn advance(
        &self,
        field: &mut ConservedField,
        controls: &TimeControls,
        observers: &mut [&mut dyn Observer],
    ) -> Result<StepLog, SolverError> {
        controls.validate()?;
        self.validate(field.grid.dim)?;
        let mut log = StepLog::default();
        let mut notify = |info: StepInfo, field: &ConservedField| {
            for o in observers.iter_mut() {
                o.observe(&info, field);
            }
        };
        let done = |t: f64| t >= controls.t_end;
        notify(
            StepInfo {
                step: 0,
                time: field.time,
                dt: 0.0,
                is_final: done(field.time),
            },
            field,
        );
        let mut step = 0;
        while !done(field.time) {
            step += 1;
            let dt = compute_dt(field, controls, &self.gas).map_err(|e| e.at_step(step))?;
            let landing = field.time + dt >= controls.t_end;
            let fallback_faces = self.step(field, dt).map_err(|e| e.at_step(step))?;
            if landing {
                field.time = controls.t_end;
            }
            if let Some((cell, err)) = field.find_invalid(&self.gas) {
                return Err(SolverError::NonPhysical {
                    cell: [cell[0] as isize, cell[1] as isize],
                    sweep: None,
                    time: field.time,
                    step,
                    stage: 3,
                    source: err,
                });
            }
            log.records.push(StepRecord {
                step,
                time: field.time,
                dt,
                fallback_faces,
            });
            notify(
                StepInfo {
                    step,
                    time: field.time,
                    dt,
                    is_final: done(field.time),
                },
                field,
            );
        }
        Ok(log)
    }
}

pub fn advance(
    field: &mut ConservedField,
    controls: &TimeControls,
    solver: &Solver,
    observers: &mut [&mut dyn Observer],
) -> Result<StepLog, SolverError> {
    solver.advance(field, controls, observers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{prim_to_cons, PrimitiveState};
    use crate::solver::{BoundaryCondition, Grid};
    use crate::weno::WeightScheme;

    fn scalar_field(w: f64) -> ConservedField {
        let mut f = ConservedField::new(Grid::new_1d(0.0, 1.0, 1).unwrap());
        f.set_interior(&[[w, 0.0, 0.0, 0.0]]);
        f
    }

    fn linear_rhs(lambda: f64) -> impl FnMut(&mut ConservedField) -> Result<Vec<Cons>, SolverError> {
        move |f: &mut ConservedField| Ok(f.interior_values().iter().map(|u| u.map(|v| lambda * v)).collect())
    }

    #[test]
    fn zero_rhs_leaves_field() {
        let mut f = scalar_field(1.25);
        let before = f.interior_values();
        rk3_step(&mut f, 0.1, |f| Ok(vec![[0.0; 4]; f.grid.interior_len()])).unwrap();
        assert_eq!(f.interior_values(), before);
        assert!((f.time - 0.1).abs() < 1e-16);
    }

    #[test]
    fn amplification_factor() {
        for (lambda, dt) in [(-1.0, 0.1), (-3.0, 0.5), (2.0, 0.25), (-0.7, 1.3)] {
            let mut f = scalar_field(1.0);
            rk3_step(&mut f, dt, linear_rhs(lambda)).unwrap();
            let z: f64 = lambda * dt;
            let expected = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
            assert!((f.at(0, 0)[0] - expected).abs() <= 1e-14, "{} vs {}", f.at(0, 0)[0], expected);
        }
    }

    #[test]
    fn third_order_in_time() {
        let err = |n: usize| {
            let mut f = scalar_field(1.0);
            let dt = 1.0 / n as f64;
            for _ in 0..n {
                rk3_step(&mut f, dt, linear_rhs(1.0)).unwrap();
            }
            (f.at(0, 0)[0] - 1f64.exp()).abs()
        };
        let e: Vec<f64> = [20, 40, 80, 160].iter().map(|&n| err(n)).collect();
        for w in e.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 3.0).abs() <= 0.1, "order {order}");
        }
    }

    #[test]
    fn dt_laws() {
        let gas = GasModel::air();
        let u = prim_to_cons(&PrimitiveState::new_1d(1.0, 1.0, 1.0), &gas);
        let f = ConservedField::uniform(Grid::new_1d(0.0, 1.0, 10).unwrap(), u);
        let c = TimeControls {
            cfl: 0.5,
            dt_law: DtLaw::DxSquared,
            t_end: 10.0,
        };
        assert!((compute_dt(&f, &c, &gas).unwrap() - 0.01).abs() < 1e-15);
        let c = TimeControls::cfl(0.5, 10.0);
        let expected = 0.05 / (1.0 + 1.4f64.sqrt());
        assert!((compute_dt(&f, &c, &gas).unwrap() - expected).abs() < 1e-15);
        let c = TimeControls {
            cfl: 0.5,
            dt_law: DtLaw::CoefficientDx(0.2),
            t_end: 10.0,
        };
        assert!((compute_dt(&f, &c, &gas).unwrap() - 0.02).abs() < 1e-15);
    }

    #[test]
    fn final_step_is_clipped() {
        assert!((clip_to_end(0.99, 0.05, 1.0) - 0.01).abs() < 1e-15);
        assert_eq!(clip_to_end(0.5, 0.05, 1.0), 0.05);
        assert_eq!(clip_to_end(1.0, 0.05, 1.0), 0.0);
    }

    #[test]
    fn invalid_controls_rejected() {
        assert!(TimeControls::cfl(0.0, 1.0).validate().is_err());
        assert!(TimeControls::cfl(1.5, 1.0).validate().is_err());
        assert!(TimeControls::cfl(0.5, -1.0).validate().is_err());
    }

    fn sine_field(n: usize, gas: &GasModel) -> ConservedField {
        let mut f = ConservedField::new(Grid::new_1d(0.0, 2.0, n).unwrap());
        let vals: Vec<Cons> = (0..n)
            .map(|i| {
                let x = f.grid.centre(0, i as isize);
                let rho = 1.0 + 0.2 * (std::f64::consts::PI * x).sin();
                prim_to_cons(&PrimitiveState::new_1d(rho, 1.0, 1.0), gas).to_array()
            })
            .collect();
        f.set_interior(&vals);
        f
    }

    #[test]
    fn zero_end_time_returns_initial_field() {
        let gas = GasModel::air();
        let mut f = sine_field(16, &gas);
        let before = f.clone();
        let solver = Solver::new(
            SchemeConfig::weno6(WeightScheme::js()),
            gas,
            BoundarySpec::all(BoundaryCondition::Periodic),
        );
        let log = solver.advance(&mut f, &TimeControls::cfl(0.5, 0.0), &mut []).unwrap();
        assert_eq!(log.steps(), 0);
        assert_eq!(f.interior_values(), before.interior_values());
    }

    #[test]
    fn periodic_run_conserves_and_lands_on_end_time() {
        let gas = GasModel::air();
        let mut f = sine_field(32, &gas);
        let solver = Solver::new(
            SchemeConfig::weno6(WeightScheme::z()),
            gas,
            BoundarySpec::all(BoundaryCondition::Periodic),
        );
        let mut tally = ConservationTally::default();
        let log = solver
            .advance(&mut f, &TimeControls::cfl(0.5, 0.37), &mut [&mut tally])
            .unwrap();
        assert_eq!(f.time, 0.37);
        assert_eq!(log.final_time(), Some(0.37));
        for m in [0, 1, 3] {
            assert!(tally.max_rel_drift[m] <= 1e-12, "{:?}", tally.max_rel_drift);
        }
    }

    #[test]
    fn cadence_always_covers_ends() {
        let mut c = Cadence::new(Some(3), None);
        let due: Vec<bool> = (0..=7)
            .map(|s| {
                c.due(&StepInfo {
                    step: s,
                    time: s as f64,
                    dt: 1.0,
                    is_final: s == 7,
                })
            })
            .collect();
        assert_eq!(due, vec![true, false, false, true, false, false, true, true]);
        let mut c = Cadence::new(None, Some(0.25));
        let hits = (0..=10)
            .filter(|&s| {
                c.due(&StepInfo {
                    step: s,
                    time: s as f64 * 0.1,
                    dt: 0.1,
                    is_final: false,
                })
            })
            .count();
        // t = 0, 0.3, 0.5, 0.8, 1.0
        assert_eq!(hits, 5);
    }
}
