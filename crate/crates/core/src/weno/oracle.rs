//! Integral-definition smoothness indicator, used to validate closed forms.
//!
//! The interpolating polynomial is recovered from unit-width cell averages by
//! a dense linear solve; the indicator is then integrated exactly over the
//! target cell.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("polynomial degree {0} not supported (expected 2 or 3)")]
    Degree(usize),
    #[error("target cell {target} outside a stencil of {cells} cells")]
    Target { target: usize, cells: usize },
    #[error("singular interpolation system")]
    Singular,
}

/// `sum_{p=1}^{deg} int_{target} (d^p/dx^p P)^2 dx` for the polynomial `P`
/// of degree `cell_averages.len() - 1` whose unit-cell averages match the input.
pub fn smoothness_oracle(cell_averages: &[f64], target: usize) -> Result<f64, OracleError> {
    let n = cell_averages.len();
    let degree = n.wrapping_sub(1);
    if !(2..=3).contains(&degree) {
        return Err(OracleError::Degree(degree));
    }
    if target >= n {
        return Err(OracleError::Target { target, cells: n });
    }
    // monomials in x centred on the target cell
    let mut m = DMatrix::<f64>::zeros(n, n);
    for row in 0..n {
        let centre = row as f64 - target as f64;
        for k in 0..n {
            let e = (k + 1) as i32;
            m[(row, k)] = ((centre + 0.5).powi(e) - (centre - 0.5).powi(e)) / e as f64;
        }
    }
    let rhs = DVector::from_column_slice(cell_averages);
    let coeffs = m.lu().solve(&rhs).ok_or(OracleError::Singular)?;
    let mut poly: Vec<f64> = coeffs.iter().copied().collect();

    let mut total = 0.0;
    for _ in 1..=degree {
        poly = derivative(&poly);
        total += integrate_square(&poly);
    }
    Ok(total)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

// int_{-1/2}^{1/2} p(x)^2 dx; odd powers vanish
fn integrate_square(p: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, a) in p.iter().enumerate() {
        for (j, b) in p.iter().enumerate() {
            let e = i + j;
            if e % 2 == 0 {
                total += a * b * 2.0 * 0.5f64.powi(e as i32 + 1) / (e + 1) as f64;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_smooth() {
        assert!(smoothness_oracle(&[2.0, 2.0, 2.0], 1).unwrap().abs() < 1e-14);
        assert!(smoothness_oracle(&[2.0, 2.0, 2.0, 2.0], 0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn quadratic_examples() {
        assert!((smoothness_oracle(&[0.0, 1.0, 2.0], 1).unwrap() - 1.0).abs() < 1e-13);
        assert!((smoothness_oracle(&[4.0, 1.0, 0.0], 2).unwrap() - 13.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(smoothness_oracle(&[1.0, 2.0], 0), Err(OracleError::Degree(1)));
        assert_eq!(
            smoothness_oracle(&[1.0, 2.0, 3.0], 3),
            Err(OracleError::Target { target: 3, cells: 3 })
        );
    }
}
