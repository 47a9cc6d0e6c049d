//! Sixth-order recursive WENO reconstruction at interface `x_{i+1/2}`.
//!
//! Left-side sub-stencils (values at `x_{i+1/2}` seen from cell `I_i`):
//!
//! | k | stencil                  | degree |
//! |---|--------------------------|--------|
//! | 0 | `I_{i-2}, I_{i-1}, I_i`   | 2      |
//! | 1 | `I_{i-1}, I_i, I_{i+1}`   | 2      |
//! | 2 | `I_{i-1} .. I_{i+2}`      | 3      |
//! | 3 | `I_i .. I_{i+3}`          | 3      |
//!
//! The right side is the mirror image under `W_{i-2+j} <-> W_{i+3-j}`, and is
//! computed by reversing the window and reusing the left-side forms.
//!
//! Smoothness indicators are `sum_p  int_{I_i} (d^p/dx^p w_k)^2 dx^(2p-1)`
//! over all non-vanishing derivatives; `beta_1` uses the cubic on
//! `I_{i-2} .. I_{i+1}` instead of the quadratic. For a cubic the integral
//! reduces to
//!
//! ```text
//! beta = A^2/36 + 13/12 B^2 + 781/720 C^2
//! ```
//!
//! with `A/6`, `B` and `C` the first, second and third derivative of the cubic
//! at the centre of `I_i` (unit spacing). A variant with
//! `1043/960 C^2 + A C / 432` (and `+W_{i+3}` inside `B` of `beta_3`) does not
//! match the integral; `weno::oracle` checks the forms used here.

use super::weights::nonlinear_weights;
use super::{
    CandidateSet6, ReconstructionPair, Side, StencilWindow, Tau6Form, WeightKind, WeightScheme, D6,
};

#[inline]
fn left_candidates(v: &[f64; 6]) -> [f64; 4] {
    let [wm2, wm1, w0, w1, w2, w3] = *v;
    [
        (2.0 * wm2 - 7.0 * wm1 + 11.0 * w0) / 6.0,
        (-wm1 + 5.0 * w0 + 2.0 * w1) / 6.0,
        (-wm1 + 7.0 * w0 + 7.0 * w1 - w2) / 12.0,
        (3.0 * w0 + 13.0 * w1 - 5.0 * w2 + w3) / 12.0,
    ]
}

#[inline]
fn cubic_indicator(a: f64, b: f64, c: f64) -> f64 {
    a * a / 36.0 + 13.0 / 12.0 * b * b + 781.0 / 720.0 * c * c
}

#[inline]
fn left_smoothness(v: &[f64; 6]) -> [f64; 4] {
    let [wm2, wm1, w0, w1, w2, w3] = *v;
    let q1 = wm2 - 4.0 * wm1 + 3.0 * w0;
    let q2 = wm2 - 2.0 * wm1 + w0;
    let b0 = 0.25 * q1 * q1 + 13.0 / 12.0 * q2 * q2;

    let curv = wm1 - 2.0 * w0 + w1;
    let b1 = cubic_indicator(
        wm2 - 6.0 * wm1 + 3.0 * w0 + 2.0 * w1,
        curv,
        -wm2 + 3.0 * wm1 - 3.0 * w0 + w1,
    );
    let b2 = cubic_indicator(
        -2.0 * wm1 - 3.0 * w0 + 6.0 * w1 - w2,
        curv,
        -wm1 + 3.0 * w0 - 3.0 * w1 + w2,
    );
    let b3 = cubic_indicator(
        -11.0 * w0 + 18.0 * w1 - 9.0 * w2 + 2.0 * w3,
        2.0 * w0 - 5.0 * w1 + 4.0 * w2 - w3,
        -w0 + 3.0 * w1 - 3.0 * w2 + w3,
    );
    [b0, b1, b2, b3]
}

#[inline]
fn mirrored(v: &[f64; 6]) -> [f64; 6] {
    [v[5], v[4], v[3], v[2], v[1], v[0]]
}

/// Candidate interface values with the linear weights filled in.
///
/// `beta` is populated as well, so the returned set is complete.
pub fn candidates6(window: &StencilWindow, side: Side) -> CandidateSet6 {
    let v = match side {
        Side::Left => window.values,
        Side::Right => mirrored(&window.values),
    };
    CandidateSet6 {
        w: left_candidates(&v),
        beta: left_smoothness(&v),
        d: D6,
        side,
    }
}

/// The six-point optimal interface value, identical from both sides.
pub fn optimal6(window: &StencilWindow) -> f64 {
    let [wm2, wm1, w0, w1, w2, w3] = window.values;
    (wm2 - 8.0 * wm1 + 37.0 * w0 + 37.0 * w1 - 8.0 * w2 + w3) / 60.0
}

pub fn smoothness6(window: &StencilWindow, side: Side) -> [f64; 4] {
    match side {
        Side::Left => left_smoothness(&window.values),
        Side::Right => left_smoothness(&mirrored(&window.values)),
    }
}

/// `(-3 b1 + 2 b2 + b3) / 6`, the unbalanced reference indicator.
pub fn tau6(beta: &[f64; 4]) -> f64 {
    (-3.0 * beta[1] + 2.0 * beta[2] + beta[3]) / 6.0
}

/// `(-2 b1 + b2 + b3) / 6`. Shares the `dx^6` leading term with [`tau6`] but
/// has no `dx^5` term.
pub fn tau6_balanced(beta: &[f64; 4]) -> f64 {
    (-2.0 * beta[1] + beta[2] + beta[3]) / 6.0
}

#[inline]
fn side_value(v: &[f64; 6], scheme: &WeightScheme) -> f64 {
    let w = left_candidates(v);
    let delta = match scheme.kind {
        WeightKind::Linear => D6,
        _ => {
            let beta = left_smoothness(v);
            let tau = match scheme.tau6 {
                Tau6Form::Balanced => tau6_balanced(&beta),
                Tau6Form::Unbalanced => tau6(&beta),
            };
            nonlinear_weights(&D6, &beta, Some(tau), scheme)
        }
    };
    delta[0] * w[0] + delta[1] * w[1] + delta[2] * w[2] + delta[3] * w[3]
}

/// Reconstruction on raw values; the hot path used by the solver.
#[inline]
pub fn reconstruct6_values(v: &[f64; 6], scheme: &WeightScheme) -> ReconstructionPair {
    ReconstructionPair {
        left: side_value(v, scheme),
        right: side_value(&mirrored(v), scheme),
    }
}

/// `W^l_{i+1/2}` and `W^r_{i+1/2}` as weighted sums of the candidates.
pub fn reconstruct6(window: &StencilWindow, scheme: &WeightScheme) -> ReconstructionPair {
    reconstruct6_values(&window.values, scheme)
}
