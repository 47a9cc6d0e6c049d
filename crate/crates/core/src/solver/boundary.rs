//! Ghost-cell boundary conditions.

use crate::euler::{prim_to_cons, Cons, GasModel, PrimitiveState};

use super::{ConservedField, SolverError};

/// Post-shock state of the double Mach reflection setup.
pub fn dmr_post_shock() -> PrimitiveState {
    PrimitiveState::new(8.0, 4.125 * 3f64.sqrt(), -4.125, 116.5)
}

/// Pre-shock state of the double Mach reflection setup.
pub fn dmr_pre_shock() -> PrimitiveState {
    PrimitiveState::new(1.4, 0.0, 0.0, 1.0)
}

/// Wall start of the double Mach reflection setup.
pub const DMR_WALL_X: f64 = 1.0 / 6.0;

/// Position where the Mach 10 shock meets the line `y` at time `t`.
pub fn dmr_shock_x(y: f64, t: f64) -> f64 {
    DMR_WALL_X + (y + 20.0 * t) / 3f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    Periodic,
    /// Mirror with the wall-normal momentum negated.
    Reflective,
    /// Zero-gradient extrapolation.
    Outflow,
    Fixed(PrimitiveState),
    /// Post-shock inflow for `x < 1/6`, reflective wall beyond.
    DmrBottom,
    /// Pre/post-shock split at the moving shock's intersection with `y = 1`.
    DmrTop,
}

/// Conditions on the four sides; `y_lo`/`y_hi` are ignored in 1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySpec {
    pub x_lo: BoundaryCondition,
    pub x_hi: BoundaryCondition,
    pub y_lo: BoundaryCondition,
    pub y_hi: BoundaryCondition,
}

impl BoundarySpec {
    pub fn all(bc: BoundaryCondition) -> Self {
        Self {
            x_lo: bc,
            x_hi: bc,
            y_lo: bc,
            y_hi: bc,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<(), SolverError> {
        use BoundaryCondition::Periodic;
        let pairs = [("x", self.x_lo, self.x_hi), ("y", self.y_lo, self.y_hi)];
        for (name, lo, hi) in pairs.iter().take(dim) {
            if (*lo == Periodic) != (*hi == Periodic) {
                return Err(SolverError::Config(format!(
                    "periodic boundary on {name} must be paired on both sides"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum End {
    Lo,
    Hi,
}

/// Populate all ghost layers. X ghosts are filled on interior rows first;
/// Y ghosts then copy whole rows, which fills the corners.
pub fn fill_ghosts(field: &mut ConservedField, bc: &BoundarySpec, gas: &GasModel, t: f64) {
    let [nx, ny] = field.grid.n;
    for j in 0..ny as isize {
        fill_x_side(field, bc.x_lo, End::Lo, j, gas, t);
        fill_x_side(field, bc.x_hi, End::Hi, j, gas, t);
    }
    if field.grid.dim == 2 {
        let g = field.grid.ghost as isize;
        for i in -g..nx as isize + g {
            fill_y_side(field, bc.y_lo, End::Lo, i, gas, t);
            fill_y_side(field, bc.y_hi, End::Hi, i, gas, t);
        }
    }
}

fn negate(mut u: Cons, comp: usize) -> Cons {
    u[comp] = -u[comp];
    u
}

fn fill_x_side(
    field: &mut ConservedField,
    bc: BoundaryCondition,
    end: End,
    j: isize,
    gas: &GasModel,
    t: f64,
) {
    let n = field.grid.n[0] as isize;
    let g = field.grid.ghost as isize;
    for k in 1..=g {
        let (ghost, mirror, nearest, wrap) = match end {
            End::Lo => (-k, k - 1, 0, n - k),
            End::Hi => (n - 1 + k, n - k, n - 1, k - 1),
        };
        let value = match bc {
            BoundaryCondition::Periodic => *field.at(wrap, j),
            BoundaryCondition::Reflective | BoundaryCondition::DmrBottom => {
                negate(*field.at(mirror, j), 1)
            }
            BoundaryCondition::Outflow => *field.at(nearest, j),
            BoundaryCondition::Fixed(w) => prim_to_cons(&w, gas).to_array(),
            BoundaryCondition::DmrTop => {
                // undisturbed moving shock evaluated at the ghost centre
                let x = field.grid.centre(0, ghost);
                let y = field.grid.centre(1, j);
                let w = if x < dmr_shock_x(y, t) { dmr_post_shock() } else { dmr_pre_shock() };
                prim_to_cons(&w, gas).to_array()
            }
        };
        *field.at_mut(ghost, j) = value;
    }
}

fn fill_y_side(
    field: &mut ConservedField,
    bc: BoundaryCondition,
    end: End,
    i: isize,
    gas: &GasModel,
    t: f64,
) {
    let n = field.grid.n[1] as isize;
    let g = field.grid.ghost as isize;
    for k in 1..=g {
        let (ghost, mirror, nearest, wrap) = match end {
            End::Lo => (-k, k - 1, 0, n - k),
            End::Hi => (n - 1 + k, n - k, n - 1, k - 1),
        };
        let value = match bc {
            BoundaryCondition::Periodic => *field.at(i, wrap),
            BoundaryCondition::Reflective => negate(*field.at(i, mirror), 2),
            BoundaryCondition::Outflow => *field.at(i, nearest),
            BoundaryCondition::Fixed(w) => prim_to_cons(&w, gas).to_array(),
            BoundaryCondition::DmrBottom => {
                if field.grid.centre(0, i) < DMR_WALL_X {
                    prim_to_cons(&dmr_post_shock(), gas).to_array()
                } else {
                    negate(*field.at(i, mirror), 2)
                }
            }
            BoundaryCondition::DmrTop => {
                let x = field.grid.centre(0, i);
                let w = if x < dmr_shock_x(1.0, t) { dmr_post_shock() } else { dmr_pre_shock() };
                prim_to_cons(&w, gas).to_array()
            }
        };
        *field.at_mut(i, ghost) = value;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Grid;

    fn field_1d(values: &[f64]) -> ConservedField {
        let grid = Grid::new_1d(0.0, 1.0, values.len()).unwrap();
        let mut f = ConservedField::new(grid);
        let v: Vec<Cons> = values.iter().map(|&r| [r, 10.0 * r, 0.0, 100.0 * r]).collect();
        f.set_interior(&v);
        f
    }

    #[test]
    fn periodic_wraps() {
        let mut f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        fill_ghosts(&mut f, &BoundarySpec::all(BoundaryCondition::Periodic), &GasModel::air(), 0.0);
        let left: Vec<f64> = (-3..0).map(|i| f.at(i, 0)[0]).collect();
        let right: Vec<f64> = (4..7).map(|i| f.at(i, 0)[0]).collect();
        assert_eq!(left, vec![2.0, 3.0, 4.0]);
        assert_eq!(right, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn reflective_mirrors_and_flips_normal_momentum() {
        let mut f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        fill_ghosts(&mut f, &BoundarySpec::all(BoundaryCondition::Reflective), &GasModel::air(), 0.0);
        assert_eq!(*f.at(-1, 0), [1.0, -10.0, 0.0, 100.0]);
        assert_eq!(*f.at(-3, 0), [3.0, -30.0, 0.0, 300.0]);
        assert_eq!(*f.at(4, 0), [4.0, -40.0, 0.0, 400.0]);
    }

    #[test]
    fn outflow_copies_edge_cell() {
        let mut f = field_1d(&[1.0, 2.0, 3.0, 4.0]);
        fill_ghosts(&mut f, &BoundarySpec::all(BoundaryCondition::Outflow), &GasModel::air(), 0.0);
        assert_eq!(f.at(-2, 0)[0], 1.0);
        assert_eq!(f.at(6, 0)[0], 4.0);
    }

    #[test]
    fn unpaired_periodic_rejected() {
        let mut bc = BoundarySpec::all(BoundaryCondition::Outflow);
        bc.x_lo = BoundaryCondition::Periodic;
        assert!(bc.validate(1).is_err());
        bc.x_hi = BoundaryCondition::Periodic;
        assert!(bc.validate(1).is_ok());
        bc.y_lo = BoundaryCondition::Periodic;
        assert!(bc.validate(1).is_ok());
        assert!(bc.validate(2).is_err());
    }

    #[test]
    fn dmr_top_shock_position() {
        let x0 = dmr_shock_x(1.0, 0.0);
        assert!((x0 - (1.0 / 6.0 + 1.0 / 3f64.sqrt())).abs() < 1e-15);

        let grid = Grid::new_2d((0.0, 4.0), (0.0, 1.0), 480, 120).unwrap();
        let gas = GasModel::air();
        let mut f = ConservedField::uniform(grid, prim_to_cons(&dmr_pre_shock(), &gas));
        let bc = BoundarySpec {
            x_lo: BoundaryCondition::Fixed(dmr_post_shock()),
            x_hi: BoundaryCondition::Outflow,
            y_lo: BoundaryCondition::DmrBottom,
            y_hi: BoundaryCondition::DmrTop,
        };
        fill_ghosts(&mut f, &bc, &gas, 0.0);
        let dx = f.grid.dx[0];
        let i_shock = (x0 / dx).floor() as isize;
        assert_eq!(f.at(i_shock - 1, 120)[0], 8.0);
        assert_eq!(f.at(i_shock + 1, 120)[0], 1.4);
        // bottom: inflow before the wall, reflection after
        assert_eq!(f.at(5, -1)[0], 8.0);
        assert_eq!(f.at(40, -1)[0], 1.4);
        // at t = 0.2 the split has moved by 4/sqrt(3)
        fill_ghosts(&mut f, &bc, &gas, 0.2);
        let i_later = ((x0 + 4.0 / 3f64.sqrt()) / dx).floor() as isize;
        assert_eq!(f.at(i_later - 1, 121)[0], 8.0);
        assert_eq!(f.at(i_later + 1, 121)[0], 1.4);
    }
}
