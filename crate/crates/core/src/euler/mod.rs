//! Ideal-gas Euler equations: state transforms, fluxes and the exact Riemann
//! solver.
//!
//! Conserved vectors are `[rho, rho*u, rho*v, E]` in both 1D and 2D; 1D runs
//! carry `v = 0`, which every operation here preserves exactly.

pub mod characteristic;
pub mod flux;
pub mod riemann;

pub use characteristic::{char_basis, CharBasis};
pub use flux::{hllc_flux, llf_flux, physical_flux, FluxKind};
pub use riemann::{exact_riemann, RiemannSolution, Wave};

/// Number of conserved components.
pub const NCONS: usize = 4;

/// Raw conserved vector `[rho, rho*u, rho*v, E]`.
pub type Cons = [f64; NCONS];

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum EulerError {
    #[error("non-physical state: rho = {rho}, p = {p}")]
    NonPhysicalState { rho: f64, p: f64 },
    #[error("initial data generates vacuum (pressure positivity condition violated)")]
    VacuumFormation,
    #[error("Riemann solver failed to converge")]
    NoConvergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Option<Self> {
        (gamma > 1.0 && gamma.is_finite()).then_some(Self { gamma })
    }

    pub fn air() -> Self {
        Self { gamma: 1.4 }
    }

    pub fn monatomic() -> Self {
        Self { gamma: 5.0 / 3.0 }
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::air()
    }
}

/// Flux direction. Y-direction quantities are computed by swapping the
/// momentum components and reusing the X-direction code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    #[inline]
    pub fn rotate(self, u: Cons) -> Cons {
        match self {
            Axis::X => u,
            Axis::Y => [u[0], u[2], u[1], u[3]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState {
    pub rho: f64,
    pub mom: [f64; 2],
    pub energy: f64,
}

impl ConservedState {
    pub fn new(rho: f64, mom: [f64; 2], energy: f64) -> Self {
        Self { rho, mom, energy }
    }

    pub fn from_array(u: Cons) -> Self {
        Self {
            rho: u[0],
            mom: [u[1], u[2]],
            energy: u[3],
        }
    }

    pub fn to_array(self) -> Cons {
        [self.rho, self.mom[0], self.mom[1], self.energy]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrimitiveState {
    pub rho: f64,
    pub vel: [f64; 2],
    pub p: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self {
            rho,
            vel: [u, v],
            p,
        }
    }

    /// 1D state (`v = 0`).
    pub fn new_1d(rho: f64, u: f64, p: f64) -> Self {
        Self::new(rho, u, 0.0, p)
    }

    pub fn sound_speed(&self, gas: &GasModel) -> f64 {
        (gas.gamma * self.p / self.rho).sqrt()
    }

    pub fn is_valid(&self) -> bool {
        self.rho > 0.0 && self.p > 0.0 && self.vel.iter().all(|v| v.is_finite())
    }

    /// Swap velocity components (the `x <-> y` mirror).
    pub fn transposed(&self) -> Self {
        Self::new(self.rho, self.vel[1], self.vel[0], self.p)
    }
}

/// Pressure from a raw conserved vector, without validation.
#[inline]
pub fn pressure(u: &Cons, gas: &GasModel) -> f64 {
    (gas.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
}

#[inline]
pub(crate) fn check_physical(u: &Cons, gas: &GasModel) -> Result<f64, EulerError> {
    let p = pressure(u, gas);
    // negated comparisons also reject NaN
    if !(u[0] > 0.0) || !(p > 0.0) || !u[1].is_finite() || !u[2].is_finite() || !p.is_finite() {
        return Err(EulerError::NonPhysicalState { rho: u[0], p });
    }
    Ok(p)
}

pub fn cons_to_prim(u: &ConservedState, gas: &GasModel) -> Result<PrimitiveState, EulerError> {
    let a = u.to_array();
    let p = check_physical(&a, gas)?;
    Ok(PrimitiveState::new(a[0], a[1] / a[0], a[2] / a[0], p))
}

pub fn prim_to_cons(w: &PrimitiveState, gas: &GasModel) -> ConservedState {
    let [u, v] = w.vel;
    ConservedState {
        rho: w.rho,
        mom: [w.rho * u, w.rho * v],
        energy: w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (u * u + v * v),
    }
}
