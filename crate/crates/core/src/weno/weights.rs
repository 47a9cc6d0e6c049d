use super::{WeightKind, WeightScheme};

/// Normalised nonlinear weights from linear weights `d` and indicators `beta`.
///
/// `tau` is only read for Z weights; a missing `tau` there falls back to the
/// linear weights. The sign of `tau` is immaterial (its magnitude is used).
///
/// The normaliser `sum(alpha)` is bounded below by
/// `min(d) / (max(beta) + eps)^p > 0` for any finite input, so no extra
/// underflow guard is applied.
pub fn nonlinear_weights<const K: usize>(
    d: &[f64; K],
    beta: &[f64; K],
    tau: Option<f64>,
    scheme: &WeightScheme,
) -> [f64; K] {
    let mut alpha = [0.0; K];
    match (scheme.kind, tau) {
        (WeightKind::Linear, _) | (WeightKind::Z, None) => return *d,
        (WeightKind::Js, _) => {
            for k in 0..K {
                alpha[k] = d[k] / powi(beta[k] + scheme.epsilon, scheme.p);
            }
        }
        (WeightKind::Z, Some(tau)) => {
            let tau = tau.abs();
            for k in 0..K {
                alpha[k] = d[k] * (1.0 + powi(tau / (beta[k] + scheme.epsilon), scheme.q));
            }
        }
    }
    let sum: f64 = alpha.iter().sum();
    let mut delta = [0.0; K];
    for k in 0..K {
        delta[k] = alpha[k] / sum;
    }
    delta
}

#[inline]
fn powi(x: f64, n: u32) -> f64 {
    match n {
        1 => x,
        2 => x * x,
        _ => x.powi(n as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weno::{smoothness6, Side, StencilWindow, D6};

    #[test]
    fn equal_betas_return_linear_weights() {
        let delta = nonlinear_weights(&D6, &[0.3; 4], None, &WeightScheme::js());
        for k in 0..4 {
            assert!((delta[k] - D6[k]).abs() < 1e-16);
        }
    }

    #[test]
    fn linear_kind_passes_d_through() {
        let delta = nonlinear_weights(&D6, &[1.0, 5.0, 0.0, 2.0], Some(3.0), &WeightScheme::linear());
        assert_eq!(delta, D6);
    }

    #[test]
    fn unit_step_at_interface_selects_first_candidate() {
        let beta = smoothness6(&StencilWindow::new([0.0, 0.0, 0.0, 1.0, 1.0, 1.0]), Side::Left);
        let delta = nonlinear_weights(&D6, &beta, None, &WeightScheme::js());
        assert!(delta[0] > 0.999, "{delta:?}");
        for k in 1..4 {
            assert!(delta[k] < 1e-3, "{delta:?}");
        }
    }

    #[test]
    fn z_with_zero_tau_is_linear() {
        let delta = nonlinear_weights(&D6, &[1.0, 2.0, 3.0, 4.0], Some(0.0), &WeightScheme::z());
        for k in 0..4 {
            assert!((delta[k] - D6[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn exponents_other_than_two() {
        let scheme = WeightScheme {
            p: 1,
            q: 1,
            ..WeightScheme::js()
        };
        let delta = nonlinear_weights(&D6, &[0.0, 1.0, 1.0, 1.0], None, &scheme);
        let sum: f64 = delta.iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
        assert!(delta[0] > 0.99);
        let z = WeightScheme {
            kind: WeightKind::Z,
            ..scheme
        };
        let delta = nonlinear_weights(&D6, &[0.0, 1.0, 1.0, 1.0], Some(-0.5), &z);
        assert!(delta[0] > 0.99);
    }
}
