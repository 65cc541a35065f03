//! Acceptance suite. Prints one line per check and a verdict per criterion;
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use bousslab_core::decay::{fit, fit_samples, NormKind};
use bousslab_core::linprop::{e_folding_time, energy, energy_identity_residual, evolve_linear, SpectralPair};
use bousslab_core::params::{make_spec, Dissipation, Preset, SystemSpec};
use bousslab_core::solver::{initial_soliton, FieldState, RunOutput, Solver, SolverConfig};
use bousslab_core::symbol::{check_bounds, classify, DecayClass};
use bousslab_core::{Execution, Grid};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LENGTH: f64 = 320.0;
const DX: f64 = 0.1;

struct Criterion {
    id: u8,
    title: &'static str,
    checks: Vec<bool>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        println!("criterion {id}: {title}");
        Criterion {
            id,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, pass: bool, what: String) {
        println!("    [{}] {what}", if pass { "PASS" } else { "FAIL" });
        self.checks.push(pass);
    }

    fn note(&self, what: String) {
        println!("    [info] {what}");
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|&p| p)
    }
}

fn reference_grid() -> Arc<Grid> {
    Arc::new(Grid::from_spacing(LENGTH, DX).expect("grid"))
}

fn reference_run(preset: Preset, diss: Dissipation) -> RunOutput {
    let solver = Solver::new(preset.spec(diss), reference_grid(), SolverConfig::default()).expect("config");
    solver.run(LENGTH / 2.0).expect("run")
}

fn bbm_complete() -> &'static RunOutput {
    static RUN: OnceLock<RunOutput> = OnceLock::new();
    RUN.get_or_init(|| reference_run(Preset::BbmBbm, Dissipation::Complete))
}

fn bona_smith_complete() -> &'static RunOutput {
    static RUN: OnceLock<RunOutput> = OnceLock::new();
    RUN.get_or_init(|| reference_run(Preset::BonaSmith, Dissipation::Complete))
}

fn bona_smith_partial() -> &'static RunOutput {
    static RUN: OnceLock<RunOutput> = OnceLock::new();
    RUN.get_or_init(|| reference_run(Preset::BonaSmith, Dissipation::PartialU))
}

/// Reference law `C·t^{−r}`.
#[derive(Clone, Copy)]
struct Law {
    c: f64,
    r: f64,
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

/// Checks a fitted law: `r` within ±0.02 and `C` within the given band.
fn check_law(cr: &mut Criterion, run: &RunOutput, kind: NormKind, label: &str, law: Law, c_band: (f64, f64)) -> bool {
    let f = fit(&run.series, kind).expect("fit");
    let (r_lo, r_hi) = (law.r - 0.02, law.r + 0.02);
    let r_ok = within(f.r, r_lo, r_hi);
    let c_ok = within(f.c, c_band.0, c_band.1);
    cr.check(
        r_ok,
        format!("{label} r = {:.4} in [{r_lo:.4}, {r_hi:.4}] (reference {})", f.r, law.r),
    );
    cr.check(
        c_ok,
        format!(
            "{label} C = {:.4} in [{:.4}, {:.4}] (reference {})",
            f.c, c_band.0, c_band.1, law.c
        ),
    );
    r_ok && c_ok
}

fn ten_percent(c: f64) -> (f64, f64) {
    (0.9 * c, 1.1 * c)
}

fn note_fits(cr: &Criterion, run: &RunOutput) {
    for kind in NormKind::ALL {
        let f = fit(&run.series, kind).expect("fit");
        cr.note(format!("{kind}: C = {:.4}, r = {:.4}, plateau = {}", f.c, f.r, f.plateau));
    }
}

fn criterion_1() -> Criterion {
    let mut cr = Criterion::new(1, "BBM-BBM complete reproduction (L=320, dx=0.1, dt=0.05, T=50)");
    let start = Instant::now();
    let run = bbm_complete();
    cr.note(format!("run time {:.2} s", start.elapsed().as_secs_f64()));
    note_fits(&cr, run);
    check_law(&mut cr, run, NormKind::L2, "L2", Law { c: 1.4232, r: 0.2470 }, (1.28, 1.57));
    let linf = Law { c: 1.4989, r: 0.4963 };
    check_law(&mut cr, run, NormKind::LinfSum, "Linf", linf, ten_percent(linf.c));
    cr
}

fn criterion_2() -> Criterion {
    let mut cr = Criterion::new(2, "Bona-Smith complete reproduction");
    let run = bona_smith_complete();
    note_fits(&cr, run);
    let l2 = Law { c: 1.4015, r: 0.2477 };
    let mut probe = Criterion {
        id: 0,
        title: "",
        checks: Vec::new(),
    };
    println!("    (eta, u) pair:");
    let uv = check_law(&mut probe, run, NormKind::L2, "L2", l2, ten_percent(l2.c));
    println!("    (eta, H u) pair:");
    let etaw = check_law(&mut probe, run, NormKind::L2EtaW, "L2 weighted", l2, ten_percent(l2.c));
    cr.check(uv || etaw, "L2 law matched by either pair norm".to_string());
    let linf = Law { c: 1.4466, r: 0.4998 };
    check_law(&mut cr, run, NormKind::LinfSum, "Linf", linf, ten_percent(linf.c));
    cr
}

fn criterion_3() -> Criterion {
    let mut cr = Criterion::new(3, "Bona-Smith partial (velocity) dissipation reproduction");
    let run = bona_smith_partial();
    note_fits(&cr, run);
    let l2 = Law { c: 0.6676, r: 0.2519 };
    check_law(&mut cr, run, NormKind::L2, "L2", l2, ten_percent(l2.c));
    let linf = Law { c: 0.6595, r: 0.5105 };
    check_law(&mut cr, run, NormKind::LinfSum, "Linf", linf, ten_percent(linf.c));
    cr
}

fn criterion_4() -> Criterion {
    let mut cr = Criterion::new(4, "classification table");
    let both = [Dissipation::Complete, Dissipation::PartialU];
    let mut table: Vec<(Preset, Dissipation, DecayClass)> = Vec::new();
    for p in [
        Preset::ClassicalBoussinesq,
        Preset::BonaSmith,
        Preset::KdvBbm,
        Preset::BbmKdv,
        Preset::WeaklyDispersive,
    ] {
        for d in both {
            table.push((p, d, DecayClass::BBMBurgers));
        }
    }
    table.push((Preset::KdvKdv, Dissipation::Complete, DecayClass::KdVBurgers));
    table.push((Preset::BbmBbm, Dissipation::PartialU, DecayClass::SlowDecay));

    for (p, d, want) in table {
        match classify(&p.spec(d)) {
            Ok(c) => cr.check(
                c.klass == want,
                format!(
                    "{p} {d}: {} (expected {want}), delta_m = {:.3}, delta_M = {:.3}",
                    c.klass, c.delta_m, c.delta_big_m
                ),
            ),
            Err(e) => cr.check(false, format!("{p} {d}: {e}")),
        }
    }
    cr
}

fn random_spec(rng: &mut ChaCha8Rng) -> SystemSpec {
    let diss = Dissipation::ALL[rng.random_range(0..3)];
    match rng.random_range(0..3) {
        0 => Preset::ALL[rng.random_range(0..Preset::ALL.len())].spec(diss),
        1 => loop {
            let b: f64 = rng.random_range(0.0..1.0);
            let d: f64 = rng.random_range(0.0..1.0);
            let c: f64 = rng.random_range(-d..=0.0);
            let a = 1.0 / 3.0 - b - c - d;
            if let Ok(s) = make_spec(a, b, c, d, diss) {
                break s;
            }
        },
        _ => loop {
            let a: f64 = rng.random_range(0.001..1.0 / 6.0);
            let rest = 1.0 / 3.0 - 2.0 * a;
            let b = rng.random_range(0.0..=rest);
            let d = 1.0 / 3.0 - 2.0 * a - b;
            if let Ok(s) = make_spec(a, b, a, d, diss) {
                break s;
            }
        },
    }
}

fn criterion_5() -> Criterion {
    let mut cr = Criterion::new(5, "semigroup bound domination and eigenvalue sandwich");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples: Vec<(SystemSpec, f64, f64)> = (0..10_000)
        .map(|_| {
            let s = random_spec(&mut rng);
            (s, rng.random_range(-50.0..=50.0), rng.random_range(0.0..=100.0))
        })
        .collect();
    let start = Instant::now();
    let out = check_bounds(Execution::default(), &samples);
    let elapsed = start.elapsed().as_secs_f64();
    cr.check(
        out.max_excess <= 1e-9,
        format!("max(exact - bound) = {:.3e} over {} samples", out.max_excess, out.samples),
    );
    cr.check(
        out.nonperturbative == 0 || out.max_sandwich_violation <= 1e-10,
        format!(
            "sandwich violation {:.3e} over {} samples with real eigenvalues",
            out.max_sandwich_violation, out.nonperturbative
        ),
    );
    cr.check(elapsed < 1.0, format!("batch time {elapsed:.3} s < 1 s"));
    cr
}

/// Max error at `t = 1` of the linearized solver against the exact
/// semigroup for one mode.
fn linear_mode_error(spec: &SystemSpec, grid: &Arc<Grid>, k: usize, y0: [Complex64; 2], dt: f64) -> f64 {
    let n = grid.len();
    let cfg = SolverConfig {
        dt,
        t_final: 1.0,
        sample_every: 0.5,
        asselin: 0.0,
        nonlinear: false,
        ..SolverConfig::default()
    };
    let solver = Solver::new(*spec, grid.clone(), cfg).expect("config");
    let zero = Complex64::new(0.0, 0.0);
    let mut eh = vec![zero; n];
    let mut uh = vec![zero; n];
    eh[k] = y0[0];
    eh[n - k] = y0[0].conj();
    uh[k] = y0[1];
    uh[n - k] = y0[1].conj();
    let state = FieldState::from_spectral(grid.clone(), 0.0, eh.clone(), uh.clone());
    let out = solver.run_from(state).expect("run");
    let exact = evolve_linear(spec, &SpectralPair::from_eta_u(spec, grid.clone(), eh, &uh), 1.0);
    let u_exact = exact.u_hat(spec);
    let fs = &out.final_state;
    (0..n)
        .map(|j| (fs.eta_hat[j] - exact.eta_hat[j]).norm().max((fs.u_hat[j] - u_exact[j]).norm()))
        .fold(0.0, f64::max)
}

fn criterion_6() -> Criterion {
    let mut cr = Criterion::new(6, "linearized solver against the exact semigroup, order under dt halving");
    // ξ_k = k/10, so k in 1..=30 covers ξ in [0.1, 3].
    let grid = Arc::new(Grid::new(20.0 * std::f64::consts::PI, 64).expect("grid"));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (dt, dt_half) = (0.02, 0.01);
    for p in Preset::ALL {
        for d in [Dissipation::Complete, Dissipation::PartialU] {
            let spec = p.spec(d);
            let mut ratios = Vec::new();
            let mut k_max: f64 = 0.0;
            for _ in 0..5 {
                let k = rng.random_range(1..=30usize);
                let y0 = [
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                ];
                let e1 = linear_mode_error(&spec, &grid, k, y0, dt);
                let e2 = linear_mode_error(&spec, &grid, k, y0, dt_half);
                ratios.push(e1 / e2);
                k_max = k_max.max(e1 / (dt * dt));
            }
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(0.0, f64::max);
            cr.check(
                ratios.iter().all(|r| within(*r, 3.5, 4.5)),
                format!("{p} {d}: error ratio in [{lo:.3}, {hi:.3}], K <= {k_max:.3e}"),
            );
        }
    }
    cr
}

fn criterion_7() -> Criterion {
    let mut cr = Criterion::new(7, "conservation and structure");
    let run = bbm_complete();
    cr.check(
        run.max_mass_drift <= 1e-12,
        format!("mass drift of eta and u = {:.3e} over the criterion-1 run", run.max_mass_drift),
    );
    cr.check(
        run.max_imag < 1e-12,
        format!("largest imaginary residual = {:.3e}", run.max_imag),
    );
    cr.check(
        run.max_symmetry_defect < 1e-12,
        format!("largest conjugate-symmetry defect = {:.3e}", run.max_symmetry_defect),
    );
    let l2: Vec<(f64, f64)> = run.series.values(NormKind::L2);
    let monotone = l2.windows(2).filter(|w| w[0].0 >= 1.0).all(|w| w[1].1 <= w[0].1);
    cr.check(monotone, "L2 norm non-increasing for t >= 1".to_string());

    let spec = Preset::BbmBbm.spec(Dissipation::Complete);
    let s = initial_soliton(reference_grid(), LENGTH / 2.0);
    let y = SpectralPair::from_eta_u(&spec, s.grid.clone(), s.eta_hat.clone(), &s.u_hat);
    let e0 = energy(&y);
    let r1 = energy_identity_residual(&spec, &y, 1e-3);
    let r2 = energy_identity_residual(&spec, &y, 5e-4);
    cr.check(
        r1 < 1e-4 * e0,
        format!("energy identity residual {r1:.3e} < 1e-4 E(0) = {:.3e}", 1e-4 * e0),
    );
    cr.check(
        within(r1 / r2, 3.5, 4.5),
        format!("residual ratio under probe halving = {:.3}", r1 / r2),
    );
    cr
}

fn criterion_8() -> Criterion {
    let mut cr = Criterion::new(8, "slow-decay scaling and decay-rate windows");
    let spec = Preset::BbmBbm.spec(Dissipation::PartialU);
    let y0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let scaled: Vec<(f64, f64)> = [5.0, 10.0, 20.0]
        .iter()
        .map(|&xi: &f64| (xi, e_folding_time(&spec, xi, y0).expect("damped") / (xi * xi)))
        .collect();
    let reference = scaled[1].1;
    for &(xi, s) in &scaled {
        cr.check(
            (s / reference - 1.0).abs() <= 0.2,
            format!("xi0 = {xi}: tau/xi0^2 = {s:.4} ({:+.1}% from xi0 = 10)", 100.0 * (s / reference - 1.0)),
        );
    }

    let lin_spec = Preset::BbmBbm.spec(Dissipation::Complete);
    let s = initial_soliton(reference_grid(), LENGTH / 2.0);
    let y = SpectralPair::from_eta_u(&lin_spec, s.grid.clone(), s.eta_hat.clone(), &s.u_hat);
    let samples: Vec<(f64, f64)> = (10..=50)
        .map(|t| {
            let t = t as f64;
            (t, energy(&evolve_linear(&lin_spec, &y, t)).sqrt())
        })
        .collect();
    let f = fit_samples(&samples).expect("fit");
    cr.check(
        within(f.r, 0.20, 0.30),
        format!("linear BBM-BBM complete sqrt(E) rate {:.4} in [0.20, 0.30]", f.r),
    );

    for (label, run) in [
        ("bbm-bbm complete", bbm_complete()),
        ("bona-smith complete", bona_smith_complete()),
        ("bona-smith partial-u", bona_smith_partial()),
    ] {
        let f = fit(&run.series, NormKind::LinfSum).expect("fit");
        cr.check(
            within(f.r, 0.45, 0.55),
            format!("{label} Linf rate {:.4} in [0.45, 0.55]", f.r),
        );
    }
    cr
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results: Vec<Criterion> = [
        criterion_1 as fn() -> Criterion,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ]
    .iter()
    .map(|f| f())
    .collect();

    println!();
    println!("acceptance summary ({:.1} s)", start.elapsed().as_secs_f64());
    let mut failed = 0;
    for cr in &results {
        let verdict = if cr.passed() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {}", cr.id, cr.title);
        failed += usize::from(!cr.passed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", results.len());
        ExitCode::FAILURE
    }
}
