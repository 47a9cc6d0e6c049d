use super::{pressure, Axis, Cons, ConservedState, EulerError, GasModel, NCONS};

/// Eigen-decomposition of the flux Jacobian at the Roe average of two states.
///
/// `right` holds the right eigenvectors as columns, `left` the left
/// eigenvectors as rows, both in the frame of `axis`. Eigenvalues are ordered
/// `(u - c, u, u, u + c)`; the second is the entropy wave, the third the shear
/// wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharBasis {
    pub left: [[f64; NCONS]; NCONS],
    pub right: [[f64; NCONS]; NCONS],
    pub eigenvalues: [f64; NCONS],
    pub axis: Axis,
}

impl CharBasis {
    /// Roe-averaged basis from raw conserved vectors already rotated into the
    /// X frame.
    #[inline]
    pub(crate) fn roe_x(ul: &Cons, ur: &Cons, gas: &GasModel) -> Result<Self, EulerError> {
        let g = gas.gamma;
        let (rl, rr) = (ul[0], ur[0]);
        if !(rl > 0.0) || !(rr > 0.0) {
            return Err(EulerError::NonPhysicalState {
                rho: rl.min(rr),
                p: f64::NAN,
            });
        }
        let pl = pressure(ul, gas);
        let pr = pressure(ur, gas);
        let (sl, sr) = (rl.sqrt(), rr.sqrt());
        let inv = 1.0 / (sl + sr);
        let u = (ul[1] / sl + ur[1] / sr) * inv;
        let v = (ul[2] / sl + ur[2] / sr) * inv;
        let h = ((ul[3] + pl) / sl + (ur[3] + pr) / sr) * inv;
        let q2 = u * u + v * v;
        let c2 = (g - 1.0) * (h - 0.5 * q2);
        if !(c2 > 0.0) || !c2.is_finite() {
            return Err(EulerError::NonPhysicalState {
                rho: sl * sr,
                p: c2 * sl * sr / g,
            });
        }
        let c = c2.sqrt();
        Ok(Self::from_velocity(u, v, h, c, g, Axis::X))
    }

    fn from_velocity(u: f64, v: f64, h: f64, c: f64, g: f64, axis: Axis) -> Self {
        let q2 = u * u + v * v;
        let b1 = (g - 1.0) / (c * c);
        let b2 = 0.5 * b1 * q2;
        let right = [
            [1.0, 1.0, 0.0, 1.0],
            [u - c, u, 0.0, u + c],
            [v, v, 1.0, v],
            [h - u * c, 0.5 * q2, v, h + u * c],
        ];
        let left = [
            [
                0.5 * (b2 + u / c),
                -0.5 * (b1 * u + 1.0 / c),
                -0.5 * b1 * v,
                0.5 * b1,
            ],
            [1.0 - b2, b1 * u, b1 * v, -b1],
            [-v, 0.0, 1.0, 0.0],
            [
                0.5 * (b2 - u / c),
                -0.5 * (b1 * u - 1.0 / c),
                -0.5 * b1 * v,
                0.5 * b1,
            ],
        ];
        Self {
            left,
            right,
            eigenvalues: [u - c, u, u, u + c],
            axis,
        }
    }

    /// Characteristic variables `L u` (input in the basis frame).
    #[inline]
    pub fn project(&self, u: &Cons) -> Cons {
        let mut out = [0.0; NCONS];
        for (o, row) in out.iter_mut().zip(&self.left) {
            *o = row[0] * u[0] + row[1] * u[1] + row[2] * u[2] + row[3] * u[3];
        }
        out
    }

    /// Conserved variables `R w` (output in the basis frame).
    #[inline]
    pub fn unproject(&self, w: &Cons) -> Cons {
        let mut out = [0.0; NCONS];
        for (o, row) in out.iter_mut().zip(&self.right) {
            *o = row[0] * w[0] + row[1] * w[1] + row[2] * w[2] + row[3] * w[3];
        }
        out
    }
}

/// Roe-averaged characteristic basis between two states for the given axis.
///
/// Matrices are expressed in the rotated frame of `axis` (momentum normal to
/// the interface first); see [`Axis::rotate`].
pub fn char_basis(
    wl: &ConservedState,
    wr: &ConservedState,
    axis: Axis,
    gas: &GasModel,
) -> Result<CharBasis, EulerError> {
    let ul = axis.rotate(wl.to_array());
    let ur = axis.rotate(wr.to_array());
    for u in [&ul, &ur] {
        super::check_physical(u, gas)?;
    }
    let mut b = CharBasis::roe_x(&ul, &ur, gas)?;
    b.axis = axis;
    Ok(b)
}
