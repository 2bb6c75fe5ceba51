//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

use std::process::Command;
use std::sync::OnceLock;

use mzi_decohere::par::map_indexed;
use mzi_decohere::sweep::{rate_check_rows, run_fig1, run_fig2, Mode, SweepSpec};
use mzi_decohere::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!(
        "[{}] criterion {id:>2}: {name} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {name} ({detail})");
}

fn random_state(rng: &mut ChaCha8Rng) -> DensityMatrix2 {
    loop {
        let b: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        if b.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return density_from_bloch(b[0], b[1], b[2]).unwrap();
        }
    }
}

#[test]
fn c01_zero_temperature_limit() {
    let mut worst = 0.0f64;
    for alpha in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let p = predictability_thermal(AlphaParams::new(alpha).unwrap(), 0.0).unwrap();
        worst = worst.max(((p - alpha.tanh()) / alpha.tanh()).abs());
    }
    report(
        1,
        "P(alpha, 0) = tanh(alpha)",
        worst <= 1e-12,
        format!("max rel err {worst:e}"),
    );
}

#[test]
fn c02_eraser_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut nonzero = 0;
    for _ in 0..50 {
        let alpha = AlphaParams::new(rng.gen_range(0.0..10.0)).unwrap();
        let theta = rng.gen_range(0.0..20.0);
        if predictability_eraser(alpha, theta, theta).unwrap() != 0.0 {
            nonzero += 1;
        }
    }
    report(
        2,
        "P'(alpha, theta, theta) = 0 exactly",
        nonzero == 0,
        format!("{nonzero}/50 nonzero"),
    );
}

#[test]
fn c03_complementarity_saturation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let amps = loop {
            let a = Complex::from_polar(rng.gen_range(0.0..=0.5), rng.gen_range(-10.0..10.0));
            let b = Complex::from_polar(rng.gen_range(0.0..=0.5), rng.gen_range(-10.0..10.0));
            if let Ok(amps) = PathAmplitudes::new(a, b) {
                break amps;
            }
        };
        let (p, v) = (predictability(&amps).unwrap(), visibility(&amps).unwrap());
        worst = worst.max((p * p + v * v - 1.0).abs());
    }
    report(
        3,
        "P^2 + V^2 = 1 for pure two-path states",
        worst <= 1e-12,
        format!("max |P^2+V^2-1| {worst:e}"),
    );
}

#[test]
fn c04_amplitude_and_closed_form_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut worst_ratio = 0.0;
    for _ in 0..100 {
        let bath = BathParams::new(rng.gen_range(0.0..10.0), rng.gen_range(1e-3..0.1)).unwrap();
        let gamma_dec = decoherence_rate(bath.gamma(), bath.n_bar()).unwrap();
        let particle =
            ParticleParams::new(rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0)).unwrap();
        let detector = DetectorSegment::new(rng.gen_range(0.1..10.0), gamma_dec).unwrap();
        let arm = rng.gen_range(1.0..20.0);
        let cfg = InterferometerConfig::new(arm, arm, particle, detector).unwrap();

        let via_amplitudes = predictability(&path_amplitudes(&cfg).unwrap()).unwrap();
        let l = attenuation_length(&particle, gamma_dec).unwrap();
        let closed = (particle.mass() * detector.length() * gamma_dec
            / (4.0 * particle.hbar() * particle.wave_number()))
        .tanh();
        let diff = (via_amplitudes - closed).abs();
        if diff > worst {
            worst = diff;
            worst_ratio = via_amplitudes.atanh() / (detector.length() / (4.0 * l));
        }
    }
    report(
        4,
        "predictability(path_amplitudes) = tanh(m L Gamma / 4 hbar k)",
        worst <= 1e-12,
        format!(
            "max abs diff {worst:e}; amplitude-route tanh argument / (L/4l) = {worst_ratio:.6}"
        ),
    );
}

/// Per-trajectory summary for criteria 5 and 9.
#[derive(Debug, Clone, Copy)]
struct RunStats {
    max_component_err: f64,
    max_trace_err: f64,
    min_det: f64,
    max_coherence_rise: f64,
    hermitian: bool,
    steps: usize,
}

fn master_equation_runs() -> &'static Vec<RunStats> {
    static RUNS: OnceLock<Vec<RunStats>> = OnceLock::new();
    RUNS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params: Vec<(DensityMatrix2, BathParams)> = (0..100)
            .map(|_| {
                let rho0 = random_state(&mut rng);
                let bath =
                    BathParams::new(rng.gen_range(0.0..10.0), rng.gen_range(1e-3..0.1)).unwrap();
                (rho0, bath)
            })
            .collect();
        map_indexed(params.len(), Execution::default(), |i| {
            let (rho0, bath) = params[i];
            let t_final = 20.0 / bath.relaxation_rate();
            let dt = 1e-3 / bath.max_rate();
            let compare_every = ((t_final / dt) as usize / 2000).max(1);
            let mut stats = RunStats {
                max_component_err: 0.0,
                max_trace_err: 0.0,
                min_det: f64::INFINITY,
                max_coherence_rise: 0.0,
                hermitian: true,
                steps: 0,
            };
            let mut previous = rho0.rho12().norm();
            integrate_observed(&rho0, &bath, t_final, dt, |step, t, s, last| {
                stats.steps = step;
                stats.max_trace_err = stats.max_trace_err.max((s.trace() - 1.0).abs());
                stats.min_det = stats.min_det.min(s.determinant());
                stats.hermitian &=
                    s.rho21() == s.rho12().conj() && s.to_matrix() == s.to_matrix().adjoint();
                let c = s.rho12().norm();
                stats.max_coherence_rise = stats.max_coherence_rise.max(c - previous);
                previous = c;
                if step % compare_every == 0 || last {
                    let exact = analytic_solution(&rho0, &bath, t).unwrap();
                    stats.max_component_err = stats.max_component_err.max(s.max_abs_diff(&exact));
                }
            })
            .unwrap();
            stats
        })
    })
}

/// Least-squares slope of log(error) against log(dt).
fn convergence_order() -> f64 {
    let bath = BathParams::new(1.0, 0.05).unwrap();
    let rho0 = density_from_bloch(0.6, -0.3, 0.5).unwrap();
    let points: Vec<(f64, f64)> = [0.2, 0.1, 0.05, 0.025]
        .iter()
        .map(|&dt| {
            let r = integrate(&rho0, &bath, 20.0, dt).unwrap();
            let err = r
                .times
                .iter()
                .zip(&r.states)
                .map(|(&t, s)| s.max_abs_diff(&analytic_solution(&rho0, &bath, t).unwrap()))
                .fold(0.0, f64::max);
            (dt.ln(), err.ln())
        })
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn c05_master_equation_oracle() {
    let runs = master_equation_runs();
    let worst = runs.iter().map(|r| r.max_component_err).fold(0.0, f64::max);
    let steps: usize = runs.iter().map(|r| r.steps).sum();
    let order = convergence_order();
    report(
        5,
        "RK4 vs closed form within 1e-7; convergence order in [3.7, 4.3]",
        worst <= 1e-7 && (3.7..=4.3).contains(&order),
        format!("100 runs, {steps} steps, max err {worst:e}, order {order:.3}"),
    );
}

#[test]
fn c06_rate_extraction() {
    let thetas = [0.0, 0.1, 0.5, 1.0, 5.0, 10.0];
    let rows = rate_check_rows(&thetas, 0.01, 0.01, Execution::default()).unwrap();
    let mut worst = 0.0f64;
    for r in &rows {
        let expected = 0.5 * r.gamma * (2.0 * planck_occupation(r.theta).unwrap() + 1.0);
        worst = worst.max(((r.fitted - expected) / expected).abs());
    }
    report(
        6,
        "fitted decoherence rate = (gamma/2)(2 n_bar + 1)",
        worst < 1e-3,
        format!("max rel err {worst:e}"),
    );
}

#[test]
fn c07_fig1_shape() {
    let spec = SweepSpec::defaults(Mode::Fig1);
    assert_eq!(
        (spec.alpha, spec.theta_min, spec.theta_max, spec.theta_steps),
        (1.0, 0.0, 10.0, 200)
    );
    let table = run_fig1(&spec, Execution::default()).unwrap().table;
    let p: Vec<f64> = table
        .column("P")
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let monotone = p.windows(2).all(|w| w[1] >= w[0]);
    let (first, last) = (p[0], *p.last().unwrap());
    let ok = p.len() == 200
        && monotone
        && (first - 1.0f64.tanh()).abs() <= 1e-4
        && (first - 0.7616).abs() <= 1e-4
        && last > 0.999;
    report(
        7,
        "fig1: monotone, P(0) = tanh 1, P(10) > 0.999",
        ok,
        format!("P(0) = {first:.10}, P(10) = {last:.10}, monotone = {monotone}"),
    );
}

#[test]
fn c08_fig2_shape() {
    let spec = SweepSpec::defaults(Mode::Fig2);
    assert_eq!(
        (spec.theta_min, spec.theta_max, spec.theta_steps),
        (0.04, 2.0, 50)
    );
    assert_eq!((spec.y_min, spec.y_max, spec.y_steps), (-0.5, 0.5, 50));
    let main = run_fig2(&spec, Execution::default()).unwrap().table;
    // dense band around equilibrium on the same theta1 axis
    let band = SweepSpec {
        y_min: -0.01,
        y_max: 0.01,
        y_steps: 21,
        ..spec
    };
    let band = run_fig2(&band, Execution::default()).unwrap().table;

    let mut zero_line = (0, 0);
    let mut cold_max = 0.0f64;
    let mut near_max = 0.0f64;
    let mut near_rows = 0;
    let mut near_missing = 0;
    for row in main.rows.iter().chain(&band.rows) {
        let (theta1, y, full) = (row[0].unwrap(), row[1].unwrap(), row[2].unwrap());
        if y == 0.0 {
            zero_line.0 += 1;
            if full != 0.0 {
                zero_line.1 += 1;
            }
        }
        if theta1 <= 0.05 {
            cold_max = cold_max.max(full);
        }
        if y.abs() <= 0.01 {
            near_rows += 1;
            match row[3] {
                Some(approx) => near_max = near_max.max((full - approx).abs()),
                None => near_missing += 1,
            }
        }
    }
    let ok = zero_line.0 > 0
        && zero_line.1 == 0
        && cold_max < 1e-6
        && near_missing == 0
        && near_max < 1e-3;
    report(
        8,
        "fig2: P'=0 on y=0, plain region below theta1=0.05, full vs expansion within 1e-3 for |y|<=0.01",
        ok,
        format!(
            "{} rows on y=0 ({} nonzero), max P' at theta1<=0.05 {cold_max:e}, {near_rows} rows |y|<=0.01 max diff {near_max:e}",
            zero_line.0, zero_line.1
        ),
    );
}

#[test]
fn c09_physical_invariants() {
    let runs = master_equation_runs();
    let trace = runs.iter().map(|r| r.max_trace_err).fold(0.0, f64::max);
    let det = runs.iter().map(|r| r.min_det).fold(f64::INFINITY, f64::min);
    let rise = runs
        .iter()
        .map(|r| r.max_coherence_rise)
        .fold(0.0, f64::max);
    let hermitian = runs.iter().all(|r| r.hermitian);
    let ok = trace < 1e-9 && det >= -1e-10 && rise <= 1e-12 && hermitian;
    report(
        9,
        "trace, Hermiticity, positivity, monotone |rho12| on every step",
        ok,
        format!("max |tr-1| {trace:e}, min det {det:e}, max |rho12| rise {rise:e}, hermitian {hermitian}"),
    );
}

#[test]
fn c10_determinism() {
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_mzi-decohere"))
            .args(args)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let cases: [&[&str]; 4] = [
        &["fig1"],
        &["fig2"],
        &[
            "evolve",
            "--initial",
            "plus",
            "--theta",
            "1",
            "--with-analytic",
        ],
        &["rate-check"],
    ];
    let mut identical = 0;
    for args in cases {
        if run(args) == run(args) {
            identical += 1;
        }
    }
    report(
        10,
        "repeated CLI runs are byte-identical",
        identical == cases.len(),
        format!("{identical}/{} modes", cases.len()),
    );
}
