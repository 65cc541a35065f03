use std::sync::Arc;

use bousslab_core::decay::{fit, NormKind};
use bousslab_core::params::{Dissipation, Preset};
use bousslab_core::solver::{Solver, SolverConfig};
use bousslab_core::{Execution, Grid};

fn bbm_run(length: f64, execution: Execution) -> bousslab_core::RunOutput {
    let grid = Arc::new(Grid::from_spacing(length, 0.1).unwrap());
    let cfg = SolverConfig {
        execution,
        ..SolverConfig::default()
    };
    Solver::new(Preset::BbmBbm.spec(Dissipation::Complete), grid, cfg)
        .unwrap()
        .run(length / 2.0)
        .unwrap()
}

#[test]
fn doubling_the_domain_leaves_the_rate_unchanged() {
    let base = bbm_run(320.0, Execution::default());
    let wide = bbm_run(640.0, Execution::default());
    for kind in [NormKind::L2, NormKind::LinfSum] {
        let r0 = fit(&base.series, kind).unwrap().r;
        let r1 = fit(&wide.series, kind).unwrap().r;
        assert!((r0 - r1).abs() < 0.005, "{kind}: {r0} vs {r1}");
    }
    assert!(!base.contaminated(), "{:?}", base.warnings);
}

#[test]
fn sequential_and_parallel_runs_agree_bitwise() {
    // N = 4096 clears the parallel threshold.
    let grid = Arc::new(Grid::new(409.6, 4096).unwrap());
    let run = |execution| {
        let cfg = SolverConfig {
            t_final: 5.0,
            execution,
            ..SolverConfig::default()
        };
        Solver::new(Preset::BonaSmith.spec(Dissipation::PartialU), grid.clone(), cfg)
            .unwrap()
            .run(204.8)
            .unwrap()
    };
    let s = run(Execution::Sequential);
    let p = run(Execution::Parallel);
    assert_eq!(s.series, p.series);
    assert_eq!(s.final_state.eta_hat, p.final_state.eta_hat);
}
