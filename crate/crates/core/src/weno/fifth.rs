//! Classical fifth-order WENO on a five-cell window.
//!
//! Candidates are indexed by the start of their three-cell sub-stencil,
//! `S_k = {I_{i-2+k}, I_{i-1+k}, I_{i+k}}`, for both cell ends. With that
//! indexing the linear weights are `(1/10, 3/5, 3/10)` at the right end
//! `x_{i+1/2}` and `(3/10, 3/5, 1/10)` at the left end `x_{i-1/2}`.

use super::weights::nonlinear_weights;
use super::{
    CandidateSet5, ReconstructionPair, Side, WeightKind, WeightScheme, Window5, D5_LEFT, D5_RIGHT,
};

#[inline]
fn indicators(v: &[f64; 5]) -> [f64; 3] {
    let [wm2, wm1, w0, w1, w2] = *v;
    let a0 = wm2 - 2.0 * wm1 + w0;
    let b0 = wm2 - 4.0 * wm1 + 3.0 * w0;
    let a1 = wm1 - 2.0 * w0 + w1;
    let b1 = wm1 - w1;
    let a2 = w0 - 2.0 * w1 + w2;
    let b2 = 3.0 * w0 - 4.0 * w1 + w2;
    [
        13.0 / 12.0 * a0 * a0 + 0.25 * b0 * b0,
        13.0 / 12.0 * a1 * a1 + 0.25 * b1 * b1,
        13.0 / 12.0 * a2 * a2 + 0.25 * b2 * b2,
    ]
}

#[inline]
fn right_end(v: &[f64; 5]) -> [f64; 3] {
    let [wm2, wm1, w0, w1, w2] = *v;
    [
        (2.0 * wm2 - 7.0 * wm1 + 11.0 * w0) / 6.0,
        (-wm1 + 5.0 * w0 + 2.0 * w1) / 6.0,
        (2.0 * w0 + 5.0 * w1 - w2) / 6.0,
    ]
}

#[inline]
fn left_end(v: &[f64; 5]) -> [f64; 3] {
    let [wm2, wm1, w0, w1, w2] = *v;
    [
        (-wm2 + 5.0 * wm1 + 2.0 * w0) / 6.0,
        (2.0 * wm1 + 5.0 * w0 - w1) / 6.0,
        (11.0 * w0 - 7.0 * w1 + 2.0 * w2) / 6.0,
    ]
}

pub fn smoothness5(window: &Window5) -> [f64; 3] {
    indicators(&window.values)
}

/// Candidate end values of the centre cell; `Side::Right` is `x_{i+1/2}`.
pub fn candidates5(window: &Window5, side: Side) -> CandidateSet5 {
    let (w, d) = match side {
        Side::Left => (left_end(&window.values), D5_LEFT),
        Side::Right => (right_end(&window.values), D5_RIGHT),
    };
    CandidateSet5 {
        w,
        beta: indicators(&window.values),
        d,
        side,
    }
}

#[inline]
fn blend(w: &[f64; 3], d: &[f64; 3], beta: &[f64; 3], scheme: &WeightScheme) -> f64 {
    let delta = match scheme.kind {
        WeightKind::Linear => *d,
        _ => nonlinear_weights(d, beta, Some((beta[0] - beta[2]).abs()), scheme),
    };
    delta[0] * w[0] + delta[1] * w[1] + delta[2] * w[2]
}

/// Values at the left (`x_{i-1/2}`) and right (`x_{i+1/2}`) ends of the
/// centre cell.
#[inline]
pub fn reconstruct5_values(v: &[f64; 5], scheme: &WeightScheme) -> ReconstructionPair {
    let beta = match scheme.kind {
        WeightKind::Linear => [0.0; 3],
        _ => indicators(v),
    };
    ReconstructionPair {
        left: blend(&left_end(v), &D5_LEFT, &beta, scheme),
        right: blend(&right_end(v), &D5_RIGHT, &beta, scheme),
    }
}

pub fn reconstruct5(window: &Window5, scheme: &WeightScheme) -> ReconstructionPair {
    reconstruct5_values(&window.values, scheme)
}

/// WENO5 point-value interpolation at offset `xi` (in cell widths) from the
/// centre of the middle cell, `xi` in `(-1/2, 1/2)`.
///
/// Candidate coefficients and linear weights are computed once per `xi`.
/// At the two-point Gauss nodes `xi = ±1/(2√3)` the linear weights are
/// `7/36 ± √3/1080` and `11/18`, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointInterpolator {
    pub xi: f64,
    /// Row `k` maps the stencil `S_k` (3 values, left to right) to `p_k(xi)`.
    pub coeffs: [[f64; 3]; 3],
    pub d: [f64; 3],
}

impl PointInterpolator {
    pub fn new(xi: f64) -> Self {
        let x2 = xi * xi;
        let coeffs = [
            [
                0.5 * x2 + 0.5 * xi - 1.0 / 24.0,
                -x2 - 2.0 * xi + 1.0 / 12.0,
                0.5 * x2 + 1.5 * xi + 23.0 / 24.0,
            ],
            [
                0.5 * x2 - 0.5 * xi - 1.0 / 24.0,
                13.0 / 12.0 - x2,
                0.5 * x2 + 0.5 * xi - 1.0 / 24.0,
            ],
            [
                0.5 * x2 - 1.5 * xi + 23.0 / 24.0,
                -x2 + 2.0 * xi + 1.0 / 12.0,
                0.5 * x2 - 0.5 * xi - 1.0 / 24.0,
            ],
        ];
        // Quartic coefficients of the outermost cells fix d0 and d2.
        let x3 = x2 * xi;
        let x4 = x2 * x2;
        let q_m2 = x4 / 24.0 - x3 / 12.0 - x2 / 16.0 + 5.0 * xi / 48.0 + 3.0 / 640.0;
        let q_p2 = x4 / 24.0 + x3 / 12.0 - x2 / 16.0 - 5.0 * xi / 48.0 + 3.0 / 640.0;
        let d0 = q_m2 / coeffs[0][0];
        let d2 = q_p2 / coeffs[2][2];
        let d = [d0, 1.0 - d0 - d2, d2];
        Self { xi, coeffs, d }
    }

    /// The two Gauss–Legendre nodes of a unit segment, in increasing order.
    pub fn gauss_pair() -> [Self; 2] {
        let g = 0.5 / 3f64.sqrt();
        [Self::new(-g), Self::new(g)]
    }

    #[inline]
    pub fn interpolate(&self, v: &[f64; 5], scheme: &WeightScheme) -> f64 {
        let c = &self.coeffs;
        let w = [
            c[0][0] * v[0] + c[0][1] * v[1] + c[0][2] * v[2],
            c[1][0] * v[1] + c[1][1] * v[2] + c[1][2] * v[3],
            c[2][0] * v[2] + c[2][1] * v[3] + c[2][2] * v[4],
        ];
        let beta = match scheme.kind {
            WeightKind::Linear => [0.0; 3],
            _ => indicators(v),
        };
        blend(&w, &self.d, &beta, scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_window() {
        for scheme in [WeightScheme::linear(), WeightScheme::js(), WeightScheme::z()] {
            let r = reconstruct5(&Window5::new([4.0; 5]), &scheme);
            assert!((r.left - 4.0).abs() < 1e-15 && (r.right - 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_data_gives_cell_end_values() {
        let r = reconstruct5(&Window5::new([-2.0, -1.0, 0.0, 1.0, 2.0]), &WeightScheme::linear());
        assert!((r.left + 0.5).abs() < 1e-15);
        assert!((r.right - 0.5).abs() < 1e-15);
    }

    #[test]
    fn step_is_not_smeared() {
        let r = reconstruct5(&Window5::new([0.0, 0.0, 0.0, 1.0, 1.0]), &WeightScheme::js());
        assert!(r.right.abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn linear_weights_give_fifth_order_end_value() {
        // averages of x^4 on unit cells centred at -2..2; exact x^4 at x = 1/2
        let mut v = [0.0; 5];
        for (k, j) in (-2..=2).enumerate() {
            let j = j as f64;
            v[k] = ((j + 0.5f64).powi(5) - (j - 0.5f64).powi(5)) / 5.0;
        }
        let r = reconstruct5(&Window5::new(v), &WeightScheme::linear());
        assert!((r.right - 0.0625).abs() < 1e-13, "{r:?}");
        assert!((r.left - 0.0625).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn candidate_sets_carry_expected_weights() {
        let w = Window5::new([0.1, 0.2, 0.4, 0.8, 1.6]);
        assert_eq!(candidates5(&w, Side::Right).d, [0.1, 0.6, 0.3]);
        assert_eq!(candidates5(&w, Side::Left).d, [0.3, 0.6, 0.1]);
        let sum: f64 = candidates5(&w, Side::Left).d.iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_interpolator_reproduces_quartics() {
        for interp in PointInterpolator::gauss_pair()
            .into_iter()
            .chain([PointInterpolator::new(0.5), PointInterpolator::new(0.17)])
        {
            assert!(interp.d.iter().all(|&d| d > 0.0), "{:?}", interp.d);
            for deg in 0..=4 {
                let mut v = [0.0; 5];
                for (k, j) in (-2..=2).enumerate() {
                    let j = j as f64;
                    v[k] = ((j + 0.5f64).powi(deg + 1) - (j - 0.5f64).powi(deg + 1)) / (deg + 1) as f64;
                }
                let got = interp.interpolate(&v, &WeightScheme::linear());
                let exact = interp.xi.powi(deg);
                assert!((got - exact).abs() < 1e-13, "deg {deg} xi {}: {got} vs {exact}", interp.xi);
            }
        }
    }

    #[test]
    fn gauss_weights_closed_form() {
        let [m, p] = PointInterpolator::gauss_pair();
        let s3 = 3f64.sqrt();
        assert!((m.d[0] - (7.0 / 36.0 + s3 / 1080.0)).abs() < 1e-15);
        assert!((m.d[1] - 11.0 / 18.0).abs() < 1e-15);
        assert!((p.d[2] - (7.0 / 36.0 + s3 / 1080.0)).abs() < 1e-15);
        let half = PointInterpolator::new(0.5);
        assert!((half.d[0] - 0.1).abs() < 1e-15 && (half.d[2] - 0.3).abs() < 1e-15);
    }
}
