use crate::euler::{
    cons_to_prim, pressure, Cons, ConservedState, EulerError, GasModel, PrimitiveState, NCONS,
};

use super::SolverError;

/// Minimum ghost width: a six-cell window reaches three cells past an interface.
pub const MIN_GHOST: usize = 3;

/// Uniform 1D or 2D cell-centred grid with ghost layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub dim: usize,
    /// Per-axis `(lo, hi)`; the second entry is unused in 1D.
    pub extent: [(f64, f64); 2],
    pub n: [usize; 2],
    pub dx: [f64; 2],
    pub ghost: usize,
}

impl Grid {
    pub fn new_1d(lo: f64, hi: f64, n: usize) -> Result<Self, SolverError> {
        Self::build(1, [(lo, hi), (0.0, 1.0)], [n, 1], MIN_GHOST)
    }

    pub fn new_2d(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Result<Self, SolverError> {
        Self::build(2, [x, y], [nx, ny], MIN_GHOST)
    }

    pub fn build(
        dim: usize,
        extent: [(f64, f64); 2],
        n: [usize; 2],
        ghost: usize,
    ) -> Result<Self, SolverError> {
        if !(1..=2).contains(&dim) {
            return Err(SolverError::Config(format!("dimension must be 1 or 2, got {dim}")));
        }
        if ghost < MIN_GHOST {
            return Err(SolverError::Config(format!(
                "ghost width {ghost} below the minimum of {MIN_GHOST}"
            )));
        }
        let mut dx = [1.0; 2];
        for a in 0..dim {
            let (lo, hi) = extent[a];
            if n[a] == 0 || !(hi > lo) {
                return Err(SolverError::Config(format!(
                    "axis {a}: need n > 0 and hi > lo, got n = {}, [{lo}, {hi}]",
                    n[a]
                )));
            }
            dx[a] = (hi - lo) / n[a] as f64;
        }
        let n = if dim == 1 { [n[0], 1] } else { n };
        Ok(Self {
            dim,
            extent,
            n,
            dx,
            ghost,
        })
    }

    /// Ghost width along `axis` (zero for the unused axis of a 1D grid).
    #[inline]
    pub fn ghost_on(&self, axis: usize) -> usize {
        if axis < self.dim {
            self.ghost
        } else {
            0
        }
    }

    #[inline]
    pub fn row_len(&self) -> usize {
        self.n[0] + 2 * self.ghost
    }

    pub fn storage_len(&self) -> usize {
        self.row_len() * (self.n[1] + 2 * self.ghost_on(1))
    }

    pub fn interior_len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    /// Storage offset of cell `(i, j)`, indices relative to the first
    /// interior cell (negative values address ghosts).
    #[inline]
    pub fn index(&self, i: isize, j: isize) -> usize {
        let g = self.ghost as isize;
        let gy = self.ghost_on(1) as isize;
        ((j + gy) * self.row_len() as isize + i + g) as usize
    }

    /// Cell-centre coordinate along `axis` of cell index `i`.
    #[inline]
    pub fn centre(&self, axis: usize, i: isize) -> f64 {
        self.extent[axis].0 + (i as f64 + 0.5) * self.dx[axis]
    }

    /// Position of the left face of cell `i` along `axis`.
    #[inline]
    pub fn face(&self, axis: usize, i: isize) -> f64 {
        self.extent[axis].0 + i as f64 * self.dx[axis]
    }

    pub fn length(&self, axis: usize) -> f64 {
        self.extent[axis].1 - self.extent[axis].0
    }

    /// Cell indices feeding the reconstruction at face `k` (between cells
    /// `k - 1` and `k`).
    #[inline]
    pub fn normal_window(k: isize) -> [isize; 6] {
        [k - 3, k - 2, k - 1, k, k + 1, k + 2]
    }
}

/// Cell-averaged conserved variables, ghosts included.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField {
    pub grid: Grid,
    pub data: Vec<Cons>,
    pub time: f64,
}

impl ConservedField {
    pub fn new(grid: Grid) -> Self {
        let data = vec![[0.0; NCONS]; grid.storage_len()];
        Self {
            grid,
            data,
            time: 0.0,
        }
    }

    pub fn uniform(grid: Grid, state: ConservedState) -> Self {
        let mut f = Self::new(grid);
        f.data.fill(state.to_array());
        f
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &Cons {
        &self.data[self.grid.index(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut Cons {
        let k = self.grid.index(i, j);
        &mut self.data[k]
    }

    pub fn state(&self, i: usize, j: usize) -> ConservedState {
        ConservedState::from_array(*self.at(i as isize, j as isize))
    }

    pub fn primitive(&self, i: usize, j: usize, gas: &GasModel) -> Result<PrimitiveState, EulerError> {
        cons_to_prim(&self.state(i, j), gas)
    }

    /// Interior cells in row-major order (x fastest).
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize, &Cons)> + '_ {
        let [nx, ny] = self.grid.n;
        (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j, self.at(i as isize, j as isize))))
    }

    pub fn interior_values(&self) -> Vec<Cons> {
        self.interior().map(|(_, _, u)| *u).collect()
    }

    pub fn set_interior(&mut self, values: &[Cons]) {
        let [nx, ny] = self.grid.n;
        assert_eq!(values.len(), nx * ny);
        for j in 0..ny {
            let start = self.grid.index(0, j as isize);
            self.data[start..start + nx].copy_from_slice(&values[j * nx..(j + 1) * nx]);
        }
    }

    /// Per-component sums over interior cells, each weighted by the cell
    /// volume.
    pub fn totals(&self) -> Cons {
        let vol = self.grid.dx[0] * if self.grid.dim == 2 { self.grid.dx[1] } else { 1.0 };
        let mut out = [0.0; NCONS];
        for (_, _, u) in self.interior() {
            for k in 0..NCONS {
                out[k] += u[k];
            }
        }
        out.map(|v| v * vol)
    }

    /// First interior cell that is non-finite or has non-positive density
    /// or pressure.
    pub fn find_invalid(&self, gas: &GasModel) -> Option<([usize; 2], EulerError)> {
        for (i, j, u) in self.interior() {
            let p = pressure(u, gas);
            if !(u[0] > 0.0) || !(p > 0.0) || !u.iter().all(|v| v.is_finite()) {
                return Some(([i, j], EulerError::NonPhysicalState { rho: u[0], p }));
            }
        }
        None
    }
}
