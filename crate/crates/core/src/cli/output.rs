//! Field output: CSV profiles, legacy VTK and run manifests.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::euler::{cons_to_prim, ConservedState, GasModel, PrimitiveState};
use crate::solver::ConservedField;

#[derive(Debug, Error)]
#[error("{path}: {source}")]
pub struct OutputError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), OutputError> {
    let err = |source| OutputError {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(err)?;
    }
    fs::write(path, contents).map_err(err)
}

/// 17 significant digits: enough to round-trip any f64.
fn num(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String");
}

fn prim(field: &ConservedField, i: usize, j: usize, gas: &GasModel) -> PrimitiveState {
    // invalid cells still get written, with the raw pressure formula
    let u = field.state(i, j);
    cons_to_prim(&u, gas).unwrap_or_else(|_| raw_primitive(&u, gas))
}

fn raw_primitive(u: &ConservedState, gas: &GasModel) -> PrimitiveState {
    let a = u.to_array();
    PrimitiveState::new(a[0], a[1] / a[0], a[2] / a[0], crate::euler::pressure(&a, gas))
}

/// 1D profile `x,rho,u,p`; 2D cell table `x,y,rho,u,v,p`.
pub fn field_csv(field: &ConservedField, gas: &GasModel) -> String {
    let g = &field.grid;
    let mut out = String::new();
    if g.dim == 1 {
        out.push_str("x,rho,u,p\n");
    } else {
        out.push_str("x,y,rho,u,v,p\n");
    }
    for (i, j, _) in field.interior() {
        let w = prim(field, i, j, gas);
        num(&mut out, g.centre(0, i as isize));
        out.push(',');
        if g.dim == 2 {
            num(&mut out, g.centre(1, j as isize));
            out.push(',');
        }
        num(&mut out, w.rho);
        out.push(',');
        num(&mut out, w.vel[0]);
        out.push(',');
        if g.dim == 2 {
            num(&mut out, w.vel[1]);
            out.push(',');
        }
        num(&mut out, w.p);
        out.push('\n');
    }
    out
}

/// Legacy ASCII VTK structured points with cell data `rho`, `p` and
/// `velocity`.
pub fn field_vtk(field: &ConservedField, gas: &GasModel, title: &str) -> String {
    let g = &field.grid;
    let [nx, ny] = g.n;
    let mut out = String::new();
    out.push_str("# vtk DataFile Version 3.0\n");
    // the title line must fit on one line
    out.push_str(&title.replace('\n', " "));
    out.push_str("\nASCII\nDATASET STRUCTURED_POINTS\n");
    writeln!(out, "DIMENSIONS {} {} 1", nx + 1, ny + 1).unwrap();
    writeln!(out, "ORIGIN {:?} {:?} 0", g.extent[0].0, g.extent[1].0).unwrap();
    writeln!(out, "SPACING {:?} {:?} 1", g.dx[0], g.dx[1]).unwrap();
    writeln!(out, "CELL_DATA {}", nx * ny).unwrap();
    let prims: Vec<PrimitiveState> = field.interior().map(|(i, j, _)| prim(field, i, j, gas)).collect();
    for (name, get) in [("rho", (|w: &PrimitiveState| w.rho) as fn(&PrimitiveState) -> f64), ("p", |w| w.p)] {
        writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for w in &prims {
            num(&mut out, get(w));
            out.push('\n');
        }
    }
    out.push_str("VECTORS velocity double\n");
    for w in &prims {
        num(&mut out, w.vel[0]);
        out.push(' ');
        num(&mut out, w.vel[1]);
        out.push_str(" 0\n");
    }
    out
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<[isize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Conservation {
    pub initial_totals: [f64; 4],
    pub final_totals: [f64; 4],
    pub max_relative_drift: [f64; 4],
}

/// Written next to the outputs of every invocation.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub status: &'static str,
    pub exit_code: i32,
    pub code_version: &'static str,
    /// Resolved configuration in `key = value` form; empty when the
    /// configuration itself could not be read.
    pub config: String,
    pub wall_clock_seconds: f64,
    pub steps: usize,
    pub final_time: Option<f64>,
    pub fallback_faces: usize,
    pub conservation: Option<Conservation>,
    pub outputs: Vec<PathBuf>,
    pub failure: Option<Failure>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            status: "ok",
            exit_code: 0,
            code_version: env!("CARGO_PKG_VERSION"),
            config: String::new(),
            wall_clock_seconds: 0.0,
            steps: 0,
            final_time: None,
            fallback_faces: 0,
            conservation: None,
            outputs: Vec::new(),
            failure: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest is always serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::prim_to_cons;
    use crate::solver::Grid;

    fn field_1d() -> ConservedField {
        let gas = GasModel::air();
        let mut f = ConservedField::new(Grid::new_1d(0.0, 1.0, 4).unwrap());
        let vals: Vec<_> = (0..4)
            .map(|i| {
                let x = 0.1 + 0.3 * i as f64;
                prim_to_cons(&PrimitiveState::new_1d(1.0 + x / 3.0, -x, 0.7 + x * x), &gas).to_array()
            })
            .collect();
        f.set_interior(&vals);
        f
    }

    #[test]
    fn csv_rows_and_exact_reread() {
        let gas = GasModel::air();
        let f = field_1d();
        let csv = field_csv(&f, &gas);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "x,rho,u,p");
        for (i, line) in lines[1..].iter().enumerate() {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            let w = f.primitive(i, 0, &gas).unwrap();
            assert_eq!(v, vec![f.grid.centre(0, i as isize), w.rho, w.vel[0], w.p]);
        }
    }

    #[test]
    fn vtk_layout() {
        let gas = GasModel::air();
        let g = Grid::new_2d((0.0, 2.0), (0.0, 1.0), 3, 2).unwrap();
        let f = ConservedField::uniform(g, prim_to_cons(&PrimitiveState::new(1.5, 0.25, -0.5, 2.0), &gas));
        let vtk = field_vtk(&f, &gas, "test");
        let lines: Vec<&str> = vtk.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[2], "ASCII");
        assert_eq!(lines[4], "DIMENSIONS 4 3 1");
        assert_eq!(lines[6], "SPACING 0.6666666666666666 0.5 1");
        assert_eq!(lines[7], "CELL_DATA 6");
        assert_eq!(lines[8], "SCALARS rho double 1");
        assert_eq!(lines[10].parse::<f64>().unwrap(), 1.5);
        let vec_at = lines.iter().position(|l| *l == "VECTORS velocity double").unwrap();
        assert_eq!(lines.len(), vec_at + 7);
        let v: Vec<f64> = lines[vec_at + 1].split(' ').map(|s| s.parse().unwrap()).collect();
        assert_eq!(v, vec![0.25, -0.5, 0.0]);
    }

    #[test]
    fn manifest_json_has_fields() {
        let mut m = RunManifest::new("run");
        m.failure = Some(Failure {
            kind: "numerical".into(),
            message: "boom".into(),
            cell: Some([3, 0]),
            time: Some(0.5),
            step: Some(2),
            stage: Some(1),
        });
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["command"], "run");
        assert_eq!(v["failure"]["cell"][0], 3);
        assert!(v["code_version"].is_string());
    }
}
