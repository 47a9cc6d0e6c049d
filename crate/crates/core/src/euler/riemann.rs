//! Exact Riemann solver for the ideal-gas Euler equations.
//!
//! Star pressure from Newton iteration on the pressure function, started
//! from the two-rarefaction approximation and safeguarded by a bisection
//! bracket. The tangential velocity is a passive scalar advected with the
//! contact.

use super::{EulerError, GasModel, PrimitiveState};

const MAX_ITER: usize = 200;
const P_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave {
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
    gamma: f64,
}

// pressure function f_K and its derivative
fn pressure_fn(p: f64, side: &PrimitiveState, g: f64) -> (f64, f64) {
    let c = (g * side.p / side.rho).sqrt();
    if p > side.p {
        let a = 2.0 / ((g + 1.0) * side.rho);
        let b = (g - 1.0) / (g + 1.0) * side.p;
        let q = (a / (p + b)).sqrt();
        ((p - side.p) * q, q * (1.0 - 0.5 * (p - side.p) / (b + p)))
    } else {
        let ratio = p / side.p;
        let f = 2.0 * c / (g - 1.0) * (ratio.powf((g - 1.0) / (2.0 * g)) - 1.0);
        let df = ratio.powf(-(g + 1.0) / (2.0 * g)) / (side.rho * c);
        (f, df)
    }
}

impl RiemannSolution {
    pub fn solve(
        left: &PrimitiveState,
        right: &PrimitiveState,
        gas: &GasModel,
    ) -> Result<Self, EulerError> {
        for w in [left, right] {
            if !w.is_valid() {
                return Err(EulerError::NonPhysicalState { rho: w.rho, p: w.p });
            }
        }
        let g = gas.gamma;
        let cl = left.sound_speed(gas);
        let cr = right.sound_speed(gas);
        let du = right.vel[0] - left.vel[0];
        if 2.0 * (cl + cr) / (g - 1.0) <= du {
            return Err(EulerError::VacuumFormation);
        }
        let total = |p: f64| {
            let (fl, dl) = pressure_fn(p, left, g);
            let (fr, dr) = pressure_fn(p, right, g);
            (fl + fr + du, dl + dr)
        };

        let z = (g - 1.0) / (2.0 * g);
        let guess = ((cl + cr - 0.5 * (g - 1.0) * du)
            / (cl / left.p.powf(z) + cr / right.p.powf(z)))
        .powf(1.0 / z);

        // f is increasing in p with f(0+) < 0 when no vacuum forms.
        let mut lo = 0.0;
        let mut hi = left.p.max(right.p).max(guess);
        while total(hi).0 < 0.0 {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(EulerError::NoConvergence);
            }
        }
        let mut p = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
        let mut converged = false;
        for _ in 0..MAX_ITER {
            let (f, df) = total(p);
            if f < 0.0 {
                lo = p;
            } else {
                hi = p;
            }
            let mut next = p - f / df;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let change = (next - p).abs() / (0.5 * (next + p));
            p = next;
            if change < P_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(EulerError::NoConvergence);
        }

        let (fl, _) = pressure_fn(p, left, g);
        let (fr, _) = pressure_fn(p, right, g);
        let u_star = 0.5 * (left.vel[0] + right.vel[0]) + 0.5 * (fr - fl);
        let gm = (g - 1.0) / (g + 1.0);

        let (rho_star_left, left_wave) = if p > left.p {
            let ratio = p / left.p;
            let rho = left.rho * (ratio + gm) / (gm * ratio + 1.0);
            let speed = left.vel[0]
                - cl * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            (rho, Wave::Shock { speed })
        } else {
            let rho = left.rho * (p / left.p).powf(1.0 / g);
            let c_star = cl * (p / left.p).powf(z);
            (
                rho,
                Wave::Rarefaction {
                    head: left.vel[0] - cl,
                    tail: u_star - c_star,
                },
            )
        };
        let (rho_star_right, right_wave) = if p > right.p {
            let ratio = p / right.p;
            let rho = right.rho * (ratio + gm) / (gm * ratio + 1.0);
            let speed = right.vel[0]
                + cr * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            (rho, Wave::Shock { speed })
        } else {
            let rho = right.rho * (p / right.p).powf(1.0 / g);
            let c_star = cr * (p / right.p).powf(z);
            (
                rho,
                Wave::Rarefaction {
                    head: right.vel[0] + cr,
                    tail: u_star + c_star,
                },
            )
        };

        Ok(Self {
            left: *left,
            right: *right,
            p_star: p,
            u_star,
            rho_star_left,
            rho_star_right,
            left_wave,
            right_wave,
            gamma: g,
        })
    }

    /// State at similarity coordinate `xi = x / t`.
    pub fn sample(&self, xi: f64) -> PrimitiveState {
        let g = self.gamma;
        if xi <= self.u_star {
            let w = &self.left;
            let vt = w.vel[1];
            match self.left_wave {
                Wave::Shock { speed } => {
                    if xi <= speed {
                        *w
                    } else {
                        PrimitiveState::new(self.rho_star_left, self.u_star, vt, self.p_star)
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi <= head {
                        *w
                    } else if xi >= tail {
                        PrimitiveState::new(self.rho_star_left, self.u_star, vt, self.p_star)
                    } else {
                        let c = (g * w.p / w.rho).sqrt();
                        let base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.vel[0] - xi);
                        PrimitiveState::new(
                            w.rho * base.powf(2.0 / (g - 1.0)),
                            2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.vel[0] + xi),
                            vt,
                            w.p * base.powf(2.0 * g / (g - 1.0)),
                        )
                    }
                }
            }
        } else {
            let w = &self.right;
            let vt = w.vel[1];
            match self.right_wave {
                Wave::Shock { speed } => {
                    if xi >= speed {
                        *w
                    } else {
                        PrimitiveState::new(self.rho_star_right, self.u_star, vt, self.p_star)
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi >= head {
                        *w
                    } else if xi <= tail {
                        PrimitiveState::new(self.rho_star_right, self.u_star, vt, self.p_star)
                    } else {
                        let c = (g * w.p / w.rho).sqrt();
                        let base = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.vel[0] - xi);
                        PrimitiveState::new(
                            w.rho * base.powf(2.0 / (g - 1.0)),
                            2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.vel[0] + xi),
                            vt,
                            w.p * base.powf(2.0 * g / (g - 1.0)),
                        )
                    }
                }
            }
        }
    }
}

/// Exact solution of the Riemann problem `(wl, wr)` at `xi = x / t`.
pub fn exact_riemann(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    gas: &GasModel,
    xi: f64,
) -> Result<PrimitiveState, EulerError> {
    RiemannSolution::solve(wl, wr, gas).map(|s| s.sample(xi))
}
