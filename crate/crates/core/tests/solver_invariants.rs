use rweno::euler::{prim_to_cons, FluxKind, GasModel, PrimitiveState};
use rweno::problems::{init_problem, ProblemName, ProblemSpec};
use rweno::solver::{
    BoundaryCondition, BoundarySpec, ConservedField, Grid, ReconstructionOrder, SchemeConfig, Solver,
    VariableSpace,
};
use rweno::weno::WeightScheme;

fn all_schemes() -> Vec<SchemeConfig> {
    let mut out = Vec::new();
    for order in [ReconstructionOrder::Weno5, ReconstructionOrder::Weno6] {
        for w in [WeightScheme::linear(), WeightScheme::js(), WeightScheme::z()] {
            for flux in [FluxKind::Hllc, FluxKind::Llf] {
                for vars in [VariableSpace::Characteristic, VariableSpace::Component] {
                    out.push(SchemeConfig::new(order, w).with_flux(flux).with_variables(vars));
                }
            }
        }
    }
    out
}

fn periodic() -> BoundarySpec {
    BoundarySpec::all(BoundaryCondition::Periodic)
}

#[test]
fn free_stream_is_preserved() {
    let gas = GasModel::air();
    let state = prim_to_cons(&PrimitiveState::new(1.3, 0.7, -0.4, 2.1), &gas);
    for scheme in all_schemes() {
        let solver = Solver::new(scheme, gas, periodic());
        for grid in [
            Grid::new_1d(0.0, 1.0, 16).unwrap(),
            Grid::new_2d((0.0, 1.0), (0.0, 1.0), 8, 8).unwrap(),
        ] {
            let mut field = ConservedField::uniform(grid, state);
            for _ in 0..100 {
                solver.step(&mut field, 0.01).unwrap();
            }
            let u0 = state.to_array();
            for (_, _, u) in field.interior() {
                for m in 0..4 {
                    assert!((u[m] - u0[m]).abs() < 1e-13, "{} drifted: {u:?}", scheme.label());
                }
            }
        }
    }
}

fn smooth_1d(n: usize) -> ConservedField {
    let spec = ProblemSpec::named(ProblemName::AdvectSine);
    init_problem(&spec, spec.grid(n).unwrap()).unwrap()
}

#[test]
fn periodic_translation_commutes_with_rates() {
    let gas = GasModel::air();
    let n = 32;
    let shift = 5;
    for scheme in all_schemes() {
        let solver = Solver::new(scheme, gas, periodic());
        let mut a = smooth_1d(n);
        let mut b = a.clone();
        let vals = a.interior_values();
        let rolled: Vec<_> = (0..n).map(|i| vals[(i + shift) % n]).collect();
        b.set_interior(&rolled);
        let ra = solver.rhs(&mut a).unwrap().values;
        let rb = solver.rhs(&mut b).unwrap().values;
        for i in 0..n {
            assert_eq!(rb[i], ra[(i + shift) % n], "{} at {i}", scheme.label());
        }
    }
}

#[test]
fn y_uniform_2d_matches_1d() {
    let gas = GasModel::air();
    let spec = ProblemSpec::named(ProblemName::ShuOsher);
    let n = 64;
    let one = init_problem(&spec, spec.grid(n).unwrap()).unwrap();
    let bc = spec.bc;
    for scheme in [SchemeConfig::weno6(WeightScheme::z()), SchemeConfig::weno5(WeightScheme::js())] {
        let mut f1 = one.clone();
        let mut f2 = ConservedField::new(Grid::new_2d(spec.extent[0], (0.0, 1.0), n, 4).unwrap());
        let vals: Vec<_> = (0..4).flat_map(|_| one.interior_values()).collect();
        f2.set_interior(&vals);
        let s1 = Solver::new(scheme, gas, bc);
        let s2 = Solver::new(scheme, gas, BoundarySpec { y_lo: BoundaryCondition::Periodic, y_hi: BoundaryCondition::Periodic, ..bc });
        for _ in 0..20 {
            s1.step(&mut f1, 2e-3).unwrap();
            s2.step(&mut f2, 2e-3).unwrap();
        }
        let v1 = f1.interior_values();
        for (i, j, u) in f2.interior() {
            for m in [0, 1, 3] {
                assert!((u[m] - v1[i][m]).abs() < 1e-12, "{} ({i},{j})", scheme.label());
            }
            assert!(u[2].abs() < 1e-12);
        }
    }
}

#[test]
fn periodic_runs_conserve_totals() {
    let gas = GasModel::air();
    for scheme in [SchemeConfig::weno6(WeightScheme::js()), SchemeConfig::weno6(WeightScheme::z())] {
        let solver = Solver::new(scheme, gas, periodic());
        let mut f = smooth_1d(40);
        let before = f.totals();
        for _ in 0..50 {
            solver.step(&mut f, 0.01).unwrap();
        }
        let after = f.totals();
        for m in 0..4 {
            assert!((after[m] - before[m]).abs() <= 1e-13 * before[m].abs().max(1.0));
        }
    }
}
