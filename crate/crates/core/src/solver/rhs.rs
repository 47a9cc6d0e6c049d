//! Semi-discrete right-hand side: reconstruction, interface fluxes and
//! flux differencing.

use rayon::prelude::*;

use crate::euler::flux::numerical_flux_x;
use crate::euler::{check_physical, Axis, CharBasis, Cons, EulerError, FluxKind, GasModel, NCONS};
use crate::weno::fifth::reconstruct5_values;
use crate::weno::sixth::reconstruct6_values;
use crate::weno::{PointInterpolator, ReconstructionPair, Tau6Form, WeightKind, WeightScheme};

use super::{ConservedField, SolverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionOrder {
    Weno5,
    Weno6,
}

/// Variables the reconstruction acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VariableSpace {
    #[default]
    Characteristic,
    Component,
}

/// What to do at a face whose reconstructed states are not physical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaceFallback {
    /// Use the two adjacent cell averages at that face (first order). The
    /// solver still aborts if those are invalid.
    #[default]
    FirstOrder,
    /// Abort with `NonPhysical`.
    Abort,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub order: ReconstructionOrder,
    pub weights: WeightScheme,
    pub flux: FluxKind,
    pub variables: VariableSpace,
    pub fallback: FaceFallback,
}

impl SchemeConfig {
    pub fn new(order: ReconstructionOrder, weights: WeightScheme) -> Self {
        Self {
            order,
            weights,
            flux: FluxKind::Hllc,
            variables: VariableSpace::Characteristic,
            fallback: FaceFallback::FirstOrder,
        }
    }

    pub fn weno6(weights: WeightScheme) -> Self {
        Self::new(ReconstructionOrder::Weno6, weights)
    }

    pub fn weno5(weights: WeightScheme) -> Self {
        Self::new(ReconstructionOrder::Weno5, weights)
    }

    pub fn with_flux(mut self, flux: FluxKind) -> Self {
        self.flux = flux;
        self
    }

    pub fn with_variables(mut self, variables: VariableSpace) -> Self {
        self.variables = variables;
        self
    }

    pub fn with_fallback(mut self, fallback: FaceFallback) -> Self {
        self.fallback = fallback;
        self
    }

    /// Short name such as `weno6-z`, with `-llf` / `-component` / `-strict`
    /// suffixes when those differ from the defaults.
    pub fn label(&self) -> String {
        let order = match self.order {
            ReconstructionOrder::Weno5 => "weno5",
            ReconstructionOrder::Weno6 => "weno6",
        };
        let weights = match self.weights.kind {
            WeightKind::Linear => "linear",
            WeightKind::Js => "js",
            WeightKind::Z => "z",
        };
        let mut s = format!("{order}-{weights}");
        if self.flux == FluxKind::Llf {
            s.push_str("-llf");
        }
        if self.variables == VariableSpace::Component {
            s.push_str("-component");
        }
        if self.fallback == FaceFallback::Abort {
            s.push_str("-strict");
        }
        s
    }

    /// Label plus every weight parameter; distinct configurations give
    /// distinct keys.
    pub fn cache_key(&self) -> String {
        let w = &self.weights;
        let tau = match w.tau6 {
            Tau6Form::Balanced => "balanced",
            Tau6Form::Unbalanced => "unbalanced",
        };
        format!("{}-p{}-q{}-eps{:e}-{tau}", self.label(), w.p, w.q, w.epsilon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceSpec {
    #[default]
    None,
    /// Unit gravity along +y: `S = (0, 0, rho, rho v)`.
    RtGravity,
}

impl SourceSpec {
    pub fn validate(&self, dim: usize) -> Result<(), SolverError> {
        match (self, dim) {
            (SourceSpec::RtGravity, d) if d != 2 => Err(SolverError::Config(
                "rt_gravity source requires a 2D grid".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[inline]
fn reconstruct(v: &[f64; 6], cfg: &SchemeConfig) -> (f64, f64) {
    match cfg.order {
        ReconstructionOrder::Weno6 => {
            let ReconstructionPair { left, right } = reconstruct6_values(v, &cfg.weights);
            (left, right)
        }
        ReconstructionOrder::Weno5 => {
            let l = reconstruct5_values(&[v[0], v[1], v[2], v[3], v[4]], &cfg.weights).right;
            let r = reconstruct5_values(&[v[1], v[2], v[3], v[4], v[5]], &cfg.weights).left;
            (l, r)
        }
    }
}

/// Left and right states at the face between `win[2]` and `win[3]`, all in
/// the X frame.
pub(crate) fn face_states(
    win: &[Cons; 6],
    cfg: &SchemeConfig,
    gas: &GasModel,
) -> Result<(Cons, Cons), EulerError> {
    let mut l = [0.0; NCONS];
    let mut r = [0.0; NCONS];
    match cfg.variables {
        VariableSpace::Component => {
            for m in 0..NCONS {
                let v = win.map(|u| u[m]);
                (l[m], r[m]) = reconstruct(&v, cfg);
            }
            Ok((l, r))
        }
        VariableSpace::Characteristic => {
            let basis = CharBasis::roe_x(&win[2], &win[3], gas)?;
            let proj = win.map(|u| basis.project(&u));
            for m in 0..NCONS {
                let v = proj.map(|w| w[m]);
                (l[m], r[m]) = reconstruct(&v, cfg);
            }
            Ok((basis.unproject(&l), basis.unproject(&r)))
        }
    }
}

fn check_pair(pair: (Cons, Cons), gas: &GasModel) -> Result<(Cons, Cons), EulerError> {
    check_physical(&pair.0, gas)?;
    check_physical(&pair.1, gas)?;
    Ok(pair)
}

/// Faces of one line. `line[g + k]` is cell `k`; face `k` sits between
/// cells `k - 1` and `k`. Returns the number of first-order faces, or the
/// failing face on error.
fn line_faces(
    line: &[Cons],
    g: usize,
    cfg: &SchemeConfig,
    gas: &GasModel,
    out: &mut [(Cons, Cons)],
) -> Result<usize, (usize, EulerError)> {
    let mut lowered = 0;
    for (k, slot) in out.iter_mut().enumerate() {
        let s = g + k - 3;
        let win: &[Cons; 6] = line[s..s + 6].try_into().expect("six-cell window");
        *slot = match face_states(win, cfg, gas).and_then(|p| check_pair(p, gas)) {
            Ok(pair) => pair,
            Err(e) if cfg.fallback == FaceFallback::Abort => return Err((k, e)),
            Err(_) => {
                lowered += 1;
                check_pair((win[2], win[3]), gas).map_err(|e| (k, e))?
            }
        };
    }
    Ok(lowered)
}

fn axis_index(axis: Axis) -> usize {
    match axis {
        Axis::X => 0,
        Axis::Y => 1,
    }
}

/// Cell `(normal, tangential)` along `axis`, as storage coordinates `(i, j)`.
#[inline]
fn cell_ij(axis: Axis, k: isize, t: isize) -> (isize, isize) {
    match axis {
        Axis::X => (k, t),
        Axis::Y => (t, k),
    }
}

fn nonphysical(axis: Axis, k: isize, t: isize, time: f64, source: EulerError) -> SolverError {
    let (i, j) = cell_ij(axis, k, t);
    SolverError::NonPhysical {
        cell: [i, j],
        sweep: Some(axis),
        time,
        step: 0,
        stage: 0,
        source,
    }
}

/// Interface fluxes along `axis` for every interior line, in the global
/// frame, laid out `[t * (n + 1) + k]`, and the number of faces (or Gauss
/// points) that fell back to lower-order states.
fn sweep_fluxes(
    field: &ConservedField,
    axis: Axis,
    cfg: &SchemeConfig,
    gas: &GasModel,
) -> Result<(Vec<Cons>, usize), SolverError> {
    let grid = &field.grid;
    let a = axis_index(axis);
    let n = grid.n[a];
    let nt = grid.n[1 - a];
    let g = grid.ghost;
    let two_d = grid.dim == 2;
    let band = if two_d { 2 } else { 0 };
    let nf = n + 1;
    let lines = nt + 2 * band;

    let mut states = vec![([0.0; NCONS], [0.0; NCONS]); lines * nf];
    let mut lowered = states
        .par_chunks_mut(nf)
        .enumerate()
        .map(|(row, out)| {
            let t = row as isize - band as isize;
            let line: Vec<Cons> = (-(g as isize)..(n + g) as isize)
                .map(|k| {
                    let (i, j) = cell_ij(axis, k, t);
                    axis.rotate(*field.at(i, j))
                })
                .collect();
            line_faces(&line, g, cfg, gas, out)
                .map_err(|(k, e)| nonphysical(axis, k as isize, t, field.time, e))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;

    let mut fluxes = vec![[0.0; NCONS]; nt * nf];
    if !two_d {
        for (k, (f, (ul, ur))) in fluxes.iter_mut().zip(&states).enumerate() {
            *f = numerical_flux_x(cfg.flux, ul, ur, gas)
                .map_err(|e| nonphysical(axis, k as isize, 0, field.time, e))?;
        }
        return Ok((fluxes, lowered));
    }

    let nodes = PointInterpolator::gauss_pair();
    lowered += fluxes
        .par_chunks_mut(nf)
        .enumerate()
        .map(|(t, out)| {
            let mut lowered = 0;
            for (k, slot) in out.iter_mut().enumerate() {
                let mut acc = [0.0; NCONS];
                for node in &nodes {
                    let mut ul = [0.0; NCONS];
                    let mut ur = [0.0; NCONS];
                    for m in 0..NCONS {
                        let sl: [f64; 5] = std::array::from_fn(|q| states[(t + q) * nf + k].0[m]);
                        let sr: [f64; 5] = std::array::from_fn(|q| states[(t + q) * nf + k].1[m]);
                        ul[m] = node.interpolate(&sl, &cfg.weights);
                        ur[m] = node.interpolate(&sr, &cfg.weights);
                    }
                    let fail = |e| nonphysical(axis, k as isize, t as isize, field.time, e);
                    let (ul, ur) = match check_pair((ul, ur), gas) {
                        Ok(pair) => pair,
                        Err(e) if cfg.fallback == FaceFallback::Abort => return Err(fail(e)),
                        Err(_) => {
                            // line-averaged states of this segment
                            lowered += 1;
                            states[(t + 2) * nf + k]
                        }
                    };
                    let f = numerical_flux_x(cfg.flux, &ul, &ur, gas).map_err(fail)?;
                    for m in 0..NCONS {
                        acc[m] += f[m];
                    }
                }
                *slot = axis.rotate(acc.map(|v| 0.5 * v));
            }
            Ok(lowered)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok((fluxes, lowered))
}

/// Subtract the flux differences of `axis` into `rates` (row-major interior).
fn accumulate(rates: &mut [Cons], fluxes: &[Cons], axis: Axis, n: [usize; 2], dx: f64) {
    let a = axis_index(axis);
    let nf = n[a] + 1;
    let inv = 1.0 / dx;
    for j in 0..n[1] {
        for i in 0..n[0] {
            let (k, t) = if a == 0 { (i, j) } else { (j, i) };
            let lo = &fluxes[t * nf + k];
            let hi = &fluxes[t * nf + k + 1];
            let r = &mut rates[j * n[0] + i];
            for m in 0..NCONS {
                r[m] -= (hi[m] - lo[m]) * inv;
            }
        }
    }
}

/// Cell rates, row-major over the interior.
#[derive(Debug, Clone, PartialEq)]
pub struct Rates {
    pub values: Vec<Cons>,
    /// Faces (in 2D, Gauss points) evaluated with fallback states.
    pub fallback_faces: usize,
}

/// Cell rates of a 1D field (ghosts must be filled).
pub fn rhs_1d(
    field: &ConservedField,
    scheme: &SchemeConfig,
    gas: &GasModel,
) -> Result<Rates, SolverError> {
    let grid = &field.grid;
    if grid.dim != 1 {
        return Err(SolverError::Config("rhs_1d called on a 2D grid".into()));
    }
    let (fluxes, fallback_faces) = sweep_fluxes(field, Axis::X, scheme, gas)?;
    let mut values = vec![[0.0; NCONS]; grid.interior_len()];
    accumulate(&mut values, &fluxes, Axis::X, grid.n, grid.dx[0]);
    Ok(Rates {
        values,
        fallback_faces,
    })
}

/// Cell rates of a 2D field (ghosts, including corners, must be filled).
pub fn rhs_2d(
    field: &ConservedField,
    scheme: &SchemeConfig,
    gas: &GasModel,
    source: SourceSpec,
) -> Result<Rates, SolverError> {
    let grid = &field.grid;
    if grid.dim != 2 {
        return Err(SolverError::Config("rhs_2d called on a 1D grid".into()));
    }
    let (fx, nx) = sweep_fluxes(field, Axis::X, scheme, gas)?;
    let (fy, ny) = sweep_fluxes(field, Axis::Y, scheme, gas)?;
    let mut rates = vec![[0.0; NCONS]; grid.interior_len()];
    accumulate(&mut rates, &fx, Axis::X, grid.n, grid.dx[0]);
    accumulate(&mut rates, &fy, Axis::Y, grid.n, grid.dx[1]);
    if source == SourceSpec::RtGravity {
        for ((_, _, u), r) in field.interior().zip(rates.iter_mut()) {
            r[2] += u[0];
            r[3] += u[2];
        }
    }
    Ok(Rates {
        values: rates,
        fallback_faces: nx + ny,
    })
}
