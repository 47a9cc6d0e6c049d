//! Initial conditions and cell averaging.

use std::f64::consts::PI;

use crate::euler::{prim_to_cons, Cons, PrimitiveState, NCONS};
use crate::solver::boundary::{dmr_post_shock, dmr_pre_shock, DMR_WALL_X};
use crate::solver::{ConservedField, Grid};

use super::{ProblemError, ProblemName, ProblemSpec, RtSoundSpeed};

/// Five-point Gauss–Legendre rule on `[-1, 1]`.
const GAUSS5: [(f64, f64); 5] = [
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.0, 0.568_888_888_888_888_9),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

fn quadrant_states(name: ProblemName) -> (f64, [PrimitiveState; 4]) {
    let s = PrimitiveState::new;
    match name {
        ProblemName::Riemann2dShocks => (
            0.7,
            [
                s(1.5, 0.0, 0.0, 1.5),
                s(0.5323, 1.206, 0.0, 0.3),
                s(0.138, 1.206, 1.206, 0.029),
                s(0.5323, 0.0, 1.206, 0.3),
            ],
        ),
        _ => (
            0.5,
            [
                s(1.0, 0.75, -0.5, 1.0),
                s(2.0, 0.75, 0.5, 1.0),
                s(1.0, -0.75, 0.5, 1.0),
                s(3.0, -0.75, -0.5, 1.0),
            ],
        ),
    }
}

fn quadrant(x: f64, y: f64, c: f64, q: [PrimitiveState; 4]) -> PrimitiveState {
    match (x > c, y > c) {
        (true, true) => q[0],
        (false, true) => q[1],
        (false, false) => q[2],
        (true, false) => q[3],
    }
}

fn rt_state(spec: &ProblemSpec, x: f64, y: f64) -> PrimitiveState {
    let (rho, p) = if y <= 0.5 { (2.0, 2.0 * y + 1.0) } else { (1.0, y + 1.5) };
    let c = match spec.rt_sound_speed {
        RtSoundSpeed::Local => (spec.gas.gamma * p / rho).sqrt(),
        RtSoundSpeed::Constant(c) => c,
    };
    PrimitiveState::new(rho, 0.0, -0.025 * c * (8.0 * PI * x).cos(), p)
}

impl ProblemSpec {
    /// Pointwise initial state.
    pub fn initial_state(&self, x: f64, y: f64) -> PrimitiveState {
        let p1 = PrimitiveState::new_1d;
        match self.name {
            ProblemName::AdvectSine => exact_advect_sine(x, 0.0),
            ProblemName::BlastWave => {
                if x < 10.0 {
                    p1(1.0, 0.0, 1000.0)
                } else if x < 90.0 {
                    p1(1.0, 0.0, 0.01)
                } else {
                    p1(1.0, 0.0, 100.0)
                }
            }
            ProblemName::ShuOsher => {
                if x <= -4.0 {
                    p1(3.857134, 2.629369, 10.33333)
                } else {
                    p1(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
                }
            }
            ProblemName::TitarevToro => {
                if x <= -4.5 {
                    p1(1.515695, 0.523346, 1.805)
                } else {
                    p1(1.0 + 0.1 * (20.0 * PI * x).sin(), 0.0, 1.0)
                }
            }
            ProblemName::DoubleMach => {
                if x < DMR_WALL_X + y / 3f64.sqrt() {
                    dmr_post_shock()
                } else {
                    dmr_pre_shock()
                }
            }
            ProblemName::Riemann2dShocks | ProblemName::Riemann2dContacts => {
                let (c, q) = quadrant_states(self.name);
                quadrant(x, y, c, q)
            }
            ProblemName::RayleighTaylor => rt_state(self, x, y),
        }
    }

    /// Discontinuities crossing the horizontal line at height `y`.
    fn x_breaks(&self, y: f64) -> Vec<f64> {
        match self.name {
            ProblemName::AdvectSine | ProblemName::RayleighTaylor => vec![],
            ProblemName::BlastWave => vec![10.0, 90.0],
            ProblemName::ShuOsher => vec![-4.0],
            ProblemName::TitarevToro => vec![-4.5],
            ProblemName::DoubleMach => vec![DMR_WALL_X + y / 3f64.sqrt()],
            ProblemName::Riemann2dShocks | ProblemName::Riemann2dContacts => {
                vec![quadrant_states(self.name).0]
            }
        }
    }

    /// Heights in `(ya, yb)` where the x-integral over `[xa, xb]` has a kink.
    fn y_breaks(&self, xa: f64, xb: f64) -> Vec<f64> {
        match self.name {
            ProblemName::DoubleMach => {
                let s3 = 3f64.sqrt();
                vec![(xa - DMR_WALL_X) * s3, (xb - DMR_WALL_X) * s3]
            }
            ProblemName::RayleighTaylor => vec![0.5],
            _ => vec![],
        }
    }
}

/// Split `[a, b]` at the breakpoints strictly inside it. Breakpoints within
/// a relative `1e-12` of an end are dropped so no sliver intervals form.
fn pieces(a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
    let tol = 1e-12 * (b - a);
    let mut cuts: Vec<f64> = breaks.iter().cloned().filter(|&c| c > a + tol && c < b - tol).collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).expect("finite breakpoints"));
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for c in cuts {
        out.push((lo, c));
        lo = c;
    }
    out.push((lo, b));
    out
}

fn gauss<F: FnMut(f64) -> Cons>(a: f64, b: f64, mut f: F) -> Cons {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = [0.0; NCONS];
    for (xi, w) in GAUSS5 {
        let v = f(mid + half * xi);
        for m in 0..NCONS {
            acc[m] += w * half * v[m];
        }
    }
    acc
}

fn add(acc: &mut Cons, v: Cons) {
    for m in 0..NCONS {
        acc[m] += v[m];
    }
}

/// Fraction of `[a, b]` lying below `c`.
fn fraction_below(a: f64, b: f64, c: f64) -> f64 {
    let f = ((c - a) / (b - a)).clamp(0.0, 1.0);
    if f < 1e-12 {
        0.0
    } else if f > 1.0 - 1e-12 {
        1.0
    } else {
        f
    }
}

/// Exact average of piecewise-constant quadrant data. Terms are grouped so
/// that transposing the cell (and swapping velocity components) reproduces
/// the result bit for bit.
fn quadrant_average(spec: &ProblemSpec, x: (f64, f64), y: (f64, f64)) -> Cons {
    let (c, q) = quadrant_states(spec.name);
    let u = q.map(|w| prim_to_cons(&w, &spec.gas).to_array());
    let fx = fraction_below(x.0, x.1, c);
    let fy = fraction_below(y.0, y.1, c);
    let a = [(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy), fx * fy, (1.0 - fx) * fy];
    std::array::from_fn(|m| (a[0] * u[0][m] + a[2] * u[2][m]) + (a[1] * u[1][m] + a[3] * u[3][m]))
}

/// Average of the conserved initial data over `[xa, xb] x [ya, yb]` (the y
/// range is ignored in 1D).
pub fn cell_average(spec: &ProblemSpec, x: (f64, f64), y: (f64, f64)) -> Cons {
    let cons = |x: f64, y: f64| prim_to_cons(&spec.initial_state(x, y), &spec.gas).to_array();
    let line = |yq: f64| {
        let mut acc = [0.0; NCONS];
        for (a, b) in pieces(x.0, x.1, &spec.x_breaks(yq)) {
            add(&mut acc, gauss(a, b, |xq| cons(xq, yq)));
        }
        acc
    };
    if spec.dim == 1 {
        return line(0.0).map(|v| v / (x.1 - x.0));
    }
    if matches!(spec.name, ProblemName::Riemann2dShocks | ProblemName::Riemann2dContacts) {
        return quadrant_average(spec, x, y);
    }
    let mut acc = [0.0; NCONS];
    for (a, b) in pieces(y.0, y.1, &spec.y_breaks(x.0, x.1)) {
        add(&mut acc, gauss(a, b, line));
    }
    let area = (x.1 - x.0) * (y.1 - y.0);
    acc.map(|v| v / area)
}

/// Cell-averaged initial field on `grid`.
pub fn init_problem(spec: &ProblemSpec, grid: Grid) -> Result<ConservedField, ProblemError> {
    if grid.dim != spec.dim {
        return Err(ProblemError::Mismatch(format!(
            "{} is {}D but the grid is {}D",
            spec.name, spec.dim, grid.dim
        )));
    }
    for a in 0..spec.dim {
        let (lo, hi) = spec.extent[a];
        let (glo, ghi) = grid.extent[a];
        let tol = 1e-12 * (hi - lo);
        if (lo - glo).abs() > tol || (hi - ghi).abs() > tol {
            return Err(ProblemError::Mismatch(format!(
                "{} axis {a} spans [{lo}, {hi}], grid spans [{glo}, {ghi}]",
                spec.name
            )));
        }
    }
    let [nx, ny] = grid.n;
    let mut values = Vec::with_capacity(nx * ny);
    for j in 0..ny as isize {
        let ys = (grid.face(1, j), grid.face(1, j + 1));
        for i in 0..nx as isize {
            let xs = (grid.face(0, i), grid.face(0, i + 1));
            values.push(cell_average(spec, xs, ys));
        }
    }
    let mut field = ConservedField::new(grid);
    field.set_interior(&values);
    Ok(field)
}

/// Smooth density wave advected at unit speed on a period-2 domain.
pub fn exact_advect_sine(x: f64, t: f64) -> PrimitiveState {
    PrimitiveState::new_1d(1.0 + 0.2 * (PI * (x - t)).sin(), 1.0, 1.0)
}

/// Exact cell average of the advected density over `[xa, xb]`.
pub fn exact_advect_sine_average(xa: f64, xb: f64, t: f64) -> f64 {
    1.0 + 0.2 * ((PI * (xa - t)).cos() - (PI * (xb - t)).cos()) / (PI * (xb - xa))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_average_matches_integral() {
        let spec = ProblemSpec::named(ProblemName::AdvectSine);
        let f = init_problem(&spec, spec.grid(10).unwrap()).unwrap();
        let expected = 1.0 + 0.2 * (1.0 - (0.2 * PI).cos()) / (0.2 * PI);
        assert!((f.at(0, 0)[0] - expected).abs() <= 1e-12);
        for n in [10, 37, 160] {
            let f = init_problem(&spec, spec.grid(n).unwrap()).unwrap();
            for (i, _, u) in f.interior() {
                let xa = f.grid.face(0, i as isize);
                let xb = f.grid.face(0, i as isize + 1);
                let exact = exact_advect_sine_average(xa, xb, 0.0);
                assert!((u[0] - exact).abs() <= 1e-12, "n={n} i={i}");
                // momentum and energy follow from u = 1, p = 1
                assert!((u[1] - u[0]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn exact_sine_values() {
        assert_eq!(exact_advect_sine(0.5, 0.5).rho, 1.0);
        for x in [0.1, 0.77, 1.9] {
            assert!((exact_advect_sine(x, 2.0).rho - exact_advect_sine(x, 0.0).rho).abs() < 1e-15);
        }
    }

    #[test]
    fn blast_cell_straddling_break_is_volume_weighted() {
        let spec = ProblemSpec::named(ProblemName::BlastWave);
        let f = init_problem(&spec, Grid::new_1d(0.0, 100.0, 7).unwrap()).unwrap();
        // cell 0 is [0, 14.28...]: 10 units at p = 1000, the rest at 0.01
        let w = 100.0 / 7.0;
        let e = (10.0 * 1000.0 + (w - 10.0) * 0.01) / w / 0.4;
        assert!((f.at(0, 0)[3] - e).abs() <= 1e-10 * e);
        assert!((f.at(0, 0)[0] - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn riemann_quadrants() {
        let spec = ProblemSpec::named(ProblemName::Riemann2dShocks);
        let s = spec.initial_state(0.8, 0.9);
        assert_eq!((s.rho, s.vel, s.p), (1.5, [0.0, 0.0], 1.5));
        for n in [20, 33, 50] {
            let f = init_problem(&spec, spec.grid(n).unwrap()).unwrap();
            for j in 0..n {
                for i in 0..n {
                    let a = f.at(i as isize, j as isize);
                    let b = f.at(j as isize, i as isize);
                    assert_eq!([a[0], a[1], a[2], a[3]], [b[0], b[2], b[1], b[3]], "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn dmr_average_uses_shock_area() {
        let spec = ProblemSpec::named(ProblemName::DoubleMach);
        // a cell cut by the slanted shock: compare with a fine midpoint sum
        let (xs, ys) = ((0.3, 0.35), (0.2, 0.25));
        let avg = cell_average(&spec, xs, ys)[0];
        let m = 2000;
        let mut s = 0.0;
        for a in 0..m {
            for b in 0..m {
                let x = xs.0 + (a as f64 + 0.5) * 0.05 / m as f64;
                let y = ys.0 + (b as f64 + 0.5) * 0.05 / m as f64;
                s += spec.initial_state(x, y).rho;
            }
        }
        let approx = s / (m * m) as f64;
        assert!(avg > 1.4 && avg < 8.0);
        assert!((avg - approx).abs() < 1e-5, "{avg} vs {approx}");
    }

    #[test]
    fn rt_layers_are_hydrostatic() {
        let spec = ProblemSpec::named(ProblemName::RayleighTaylor);
        let lo = spec.initial_state(0.1, 0.25);
        let hi = spec.initial_state(0.1, 0.75);
        assert_eq!((lo.rho, lo.p), (2.0, 1.5));
        assert_eq!((hi.rho, hi.p), (1.0, 2.25));
        let c = (5.0 / 3.0 * 1.5 / 2.0f64).sqrt();
        assert!((lo.vel[1] + 0.025 * c * (0.8 * PI).cos()).abs() < 1e-15);
    }

    #[test]
    fn mismatched_grid_rejected() {
        let spec = ProblemSpec::named(ProblemName::ShuOsher);
        assert!(init_problem(&spec, Grid::new_1d(0.0, 1.0, 10).unwrap()).is_err());
        let g2 = Grid::new_2d((-5.0, 5.0), (0.0, 1.0), 4, 4).unwrap();
        assert!(init_problem(&spec, g2).is_err());
    }
}
