//! Fixed-step RK4 integration of the master equation and decoherence-rate fitting.

use crate::algebra::Complex;
use crate::density::DensityMatrix2;
use crate::error::{Error, Result};
use crate::lindblad::{BathParams, Generator, StateVec};

/// Coherences at or below this modulus are ignored by [`fit_decoherence_rate`].
pub const COHERENCE_FLOOR: f64 = 1e-12;
/// Minimum usable samples for a fit.
pub const MIN_FIT_SAMPLES: usize = 10;

/// Sampled trajectory. `times` is strictly increasing and starts at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix2>,
    /// Nominal step size used.
    pub dt: f64,
    /// Step size recommended for the bath, `0.01 / max(ω_A, γ(2n̄+1))`.
    pub recommended_dt: f64,
}

impl EvolutionResult {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dt_exceeds_recommendation(&self) -> bool {
        self.dt > self.recommended_dt
    }

    pub fn final_state(&self) -> &DensityMatrix2 {
        self.states
            .last()
            .expect("trajectory holds at least the initial state")
    }

    /// Largest `|tr ρ − 1|` over the stored states.
    pub fn max_trace_error(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.trace() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Integrates from `rho0` to `t_final`, storing every step.
pub fn integrate(
    rho0: &DensityMatrix2,
    bath: &BathParams,
    t_final: f64,
    dt: f64,
) -> Result<EvolutionResult> {
    integrate_sampled(rho0, bath, t_final, dt, 1)
}

/// Integrates from `rho0` to `t_final`, storing the initial state, every
/// `stride`-th step and the final state. Every step is checked against the
/// density-matrix invariants whether stored or not.
///
/// The trace is never renormalized.
pub fn integrate_sampled(
    rho0: &DensityMatrix2,
    bath: &BathParams,
    t_final: f64,
    dt: f64,
    stride: usize,
) -> Result<EvolutionResult> {
    let stride = stride.max(1);
    let mut times = Vec::new();
    let mut states = Vec::new();
    integrate_observed(rho0, bath, t_final, dt, |step, t, state, last| {
        if step % stride == 0 || last {
            times.push(t);
            states.push(*state);
        }
    })?;
    Ok(EvolutionResult {
        times,
        states,
        dt,
        recommended_dt: bath.recommended_dt(),
    })
}

/// Runs the integrator and hands every validated state to `observer` as
/// `(step, t, state, is_last)`, starting with step 0 at `t = 0`.
///
/// Steps are `dt` apart except the last, which is shortened to land on
/// `t_final`.
pub fn integrate_observed<F>(
    rho0: &DensityMatrix2,
    bath: &BathParams,
    t_final: f64,
    dt: f64,
    mut observer: F,
) -> Result<()>
where
    F: FnMut(usize, f64, &DensityMatrix2, bool),
{
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::StepSize(dt));
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::domain(format!("t_final must be > 0, got {t_final}")));
    }
    if dt > t_final {
        return Err(Error::StepSize(dt));
    }

    let mut steps = (t_final / dt).ceil() as usize;
    if t_final - (steps - 1) as f64 * dt <= 1e-9 * dt {
        steps -= 1;
    }
    let time_at = |k: usize| if k == steps { t_final } else { k as f64 * dt };

    let generator = Generator::new(bath);
    let mut x: StateVec = [rho0.rho11(), rho0.rho22(), rho0.rho12().re, rho0.rho12().im];
    observer(0, 0.0, rho0, false);
    for k in 1..=steps {
        let h = time_at(k) - time_at(k - 1);
        x = rk4_step(&generator, &x, h);
        let t = time_at(k);
        let state = DensityMatrix2::at_time(x[0], x[1], Complex::new(x[2], x[3]), t)?;
        observer(k, t, &state, k == steps);
    }
    Ok(())
}

#[inline]
fn rk4_step(g: &Generator, x: &StateVec, h: f64) -> StateVec {
    let axpy = |a: &StateVec, s: f64, b: &StateVec| -> StateVec {
        [
            a[0] + s * b[0],
            a[1] + s * b[1],
            a[2] + s * b[2],
            a[3] + s * b[3],
        ]
    };
    let k1 = g.apply(x);
    let k2 = g.apply(&axpy(x, 0.5 * h, &k1));
    let k3 = g.apply(&axpy(x, 0.5 * h, &k2));
    let k4 = g.apply(&axpy(x, h, &k3));
    let mut out = *x;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Least-squares slope of `ln|ρ12|` against time, negated.
pub fn fit_decoherence_rate(result: &EvolutionResult) -> Result<f64> {
    let points: Vec<(f64, f64)> = result
        .times
        .iter()
        .zip(&result.states)
        .filter_map(|(&t, s)| {
            let c = s.rho12().norm();
            (c > COHERENCE_FLOOR).then(|| (t, c.ln()))
        })
        .collect();
    if points.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "{} samples with |rho12| > {COHERENCE_FLOOR:e}, need {MIN_FIT_SAMPLES}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let t_mean = points.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(t, y)| {
        let dt = t - t_mean;
        (sxy + dt * (y - y_mean), sxx + dt * dt)
    });
    if sxx == 0.0 {
        return Err(Error::Fit("all samples at the same time".into()));
    }
    Ok(-sxy / sxx)
}
