//! Stencil-level WENO reconstruction kernels.
//!
//! Two families live here:
//!
//! * [`sixth`]: the recursive sixth-order reconstruction on the symmetric
//!   six-cell stencil `{I_{i-2}, ..., I_{i+3}}` of interface `x_{i+1/2}`. Four
//!   candidates (two quadratics, two cubics) are blended with linear weights
//!   `d = (1/20, 3/20, 3/5, 1/5)` on both sides of the interface.
//! * [`fifth`]: the classical fifth-order WENO-JS/Z reconstruction of the two
//!   end values of a cell from a five-cell window, plus point-value
//!   interpolation at arbitrary interior locations (used for tangential
//!   Gauss-point evaluation in 2D).
//!
//! All kernels are pure functions on plain `f64` arrays. Non-finite input
//! propagates to the output; callers detect it.

pub mod fifth;
pub mod oracle;
pub mod sixth;
pub mod weights;

pub use fifth::{candidates5, reconstruct5, smoothness5, PointInterpolator};
pub use oracle::smoothness_oracle;
pub use sixth::{candidates6, optimal6, reconstruct6, smoothness6, tau6, tau6_balanced};
pub use weights::nonlinear_weights;

/// Which side of an interface (or which end of a cell) a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Six consecutive cell averages `W_{i-2}..W_{i+3}` around interface `x_{i+1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWindow {
    pub values: [f64; 6],
    /// Cell width. The closed forms are spacing independent; kept for
    /// callers that need dimensional smoothness indicators.
    pub spacing: f64,
}

impl StencilWindow {
    pub fn new(values: [f64; 6]) -> Self {
        Self {
            values,
            spacing: 1.0,
        }
    }

    pub fn with_spacing(values: [f64; 6], spacing: f64) -> Self {
        Self { values, spacing }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// The same window read right-to-left.
    pub fn reversed(&self) -> Self {
        let mut values = self.values;
        values.reverse();
        Self {
            values,
            spacing: self.spacing,
        }
    }
}

/// Five consecutive cell averages `W_{i-2}..W_{i+2}` centred on cell `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window5 {
    pub values: [f64; 5],
}

impl Window5 {
    pub fn new(values: [f64; 5]) -> Self {
        Self { values }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn reversed(&self) -> Self {
        let mut values = self.values;
        values.reverse();
        Self { values }
    }
}

/// Nonlinear weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Linear (optimal) weights, no adaptation.
    Linear,
    /// Jiang–Shu: `alpha_k = d_k / (beta_k + eps)^p`.
    Js,
    /// Borges-type Z weights: `alpha_k = d_k (1 + (|tau| / (beta_k + eps))^q)`.
    Z,
}

/// Reference indicator used by the sixth-order Z weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tau6Form {
    /// `(-2 b1 + b2 + b3) / 6`: cancels the `dx^5` term of the smoothness
    /// indicators, so `tau = O(dx^6)`.
    Balanced,
    /// `(-3 b1 + 2 b2 + b3) / 6`. With exact smoothness indicators this is
    /// only `O(dx^5)`.
    Unbalanced,
}

/// Weight configuration shared by the fifth- and sixth-order kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightScheme {
    pub kind: WeightKind,
    /// JS exponent.
    pub p: u32,
    /// Z exponent on the `tau / (beta + eps)` ratio.
    pub q: u32,
    pub epsilon: f64,
    pub tau6: Tau6Form,
}

impl Default for WeightScheme {
    fn default() -> Self {
        Self {
            kind: WeightKind::Js,
            p: 2,
            q: 2,
            epsilon: 1e-6,
            tau6: Tau6Form::Balanced,
        }
    }
}

impl WeightScheme {
    pub fn linear() -> Self {
        Self {
            kind: WeightKind::Linear,
            ..Self::default()
        }
    }

    pub fn js() -> Self {
        Self::default()
    }

    pub fn z() -> Self {
        Self {
            kind: WeightKind::Z,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), WenoConfigError> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(WenoConfigError::Epsilon(self.epsilon));
        }
        if self.p == 0 {
            return Err(WenoConfigError::Exponent("p"));
        }
        if self.q == 0 {
            return Err(WenoConfigError::Exponent("q"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WenoConfigError {
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
    #[error("exponent {0} must be at least 1")]
    Exponent(&'static str),
}

/// Linear weights of the sixth-order reconstruction (both sides).
pub const D6: [f64; 4] = [1.0 / 20.0, 3.0 / 20.0, 3.0 / 5.0, 1.0 / 5.0];

/// Linear weights of the fifth-order reconstruction at the right end of the
/// centre cell, candidates indexed by stencil start `{i-2+k, .., i+k}`.
pub const D5_RIGHT: [f64; 3] = [1.0 / 10.0, 3.0 / 5.0, 3.0 / 10.0];
/// Left-end counterpart of [`D5_RIGHT`].
pub const D5_LEFT: [f64; 3] = [3.0 / 10.0, 3.0 / 5.0, 1.0 / 10.0];

/// Candidates, indicators and linear weights of one side of a six-cell window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSet6 {
    pub w: [f64; 4],
    pub beta: [f64; 4],
    pub d: [f64; 4],
    pub side: Side,
}

/// Candidates, indicators and linear weights of one end of a five-cell window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSet5 {
    pub w: [f64; 3],
    pub beta: [f64; 3],
    pub d: [f64; 3],
    pub side: Side,
}

/// Reconstructed values on the two sides of an interface (sixth order) or at
/// the two ends of a cell (fifth order).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionPair {
    pub left: f64,
    pub right: f64,
}
