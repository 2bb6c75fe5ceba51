//! Parameter sweeps behind the command-line modes, producing CSV tables.
//!
//! * `fig1`: predictability against reduced temperature.
//! * `fig2`: two-detector predictability over `(θ₁, y = Θ/T₁)`, full and
//!   near-equilibrium forms side by side.
//! * `evolve`: one master-equation trajectory with diagnostics.
//! * `rate-check`: analytic decoherence rate against the rate fitted to an
//!   integrated trajectory, over a temperature grid.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::density::DensityMatrix2;
use crate::error::{Error, Result};
use crate::integrate::{fit_decoherence_rate, integrate_sampled};
use crate::interferometer::{
    near_equilibrium_warning, predictability_eraser, predictability_near_equilibrium,
    predictability_thermal, AlphaParams,
};
use crate::lindblad::{analytic_solution, decoherence_rate, BathParams};
use crate::par::{map_indexed, Execution};

/// Number of samples kept per rate-check trajectory (approximately).
const RATE_CHECK_SAMPLES: usize = 200;
/// Rate-check trajectories run for this many coherence lifetimes.
const RATE_CHECK_LIFETIMES: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fig1,
    Fig2,
    Evolve,
    RateCheck,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Mode::Fig1),
            "fig2" => Ok(Mode::Fig2),
            "evolve" => Ok(Mode::Evolve),
            "rate-check" => Ok(Mode::RateCheck),
            _ => Err(Error::Config(format!(
                "unknown mode '{s}' (fig1, fig2, evolve, rate-check)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fig1 => "fig1",
            Mode::Fig2 => "fig2",
            Mode::Evolve => "evolve",
            Mode::RateCheck => "rate-check",
        })
    }
}

/// Initial state for `evolve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    Excited,
    Ground,
    /// Thermal stationary state of the bath.
    Steady,
    /// Equal superposition, Bloch vector (1, 0, 0).
    Plus,
    Mixed,
}

impl InitialState {
    pub fn state(&self, bath: &BathParams) -> DensityMatrix2 {
        match self {
            InitialState::Excited => DensityMatrix2::excited(),
            InitialState::Ground => DensityMatrix2::ground(),
            InitialState::Steady => bath.steady_state(),
            InitialState::Plus => {
                DensityMatrix2::from_bloch(1.0, 0.0, 0.0).expect("unit Bloch vector")
            }
            InitialState::Mixed => DensityMatrix2::maximally_mixed(),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "excited" => Ok(InitialState::Excited),
            "ground" => Ok(InitialState::Ground),
            "steady" => Ok(InitialState::Steady),
            "plus" => Ok(InitialState::Plus),
            "mixed" => Ok(InitialState::Mixed),
            _ => Err(Error::Config(format!(
                "unknown initial state '{s}' (excited, ground, steady, plus, mixed)"
            ))),
        }
    }
}

/// Everything a sweep needs. Fields not used by a mode are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    pub alpha: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_steps: usize,
    pub log_theta: bool,
    pub y_min: f64,
    pub y_max: f64,
    pub y_steps: usize,
    pub gamma: f64,
    /// Bath temperature for `evolve`.
    pub theta: f64,
    pub dt: f64,
    pub t_final: f64,
    pub with_analytic: bool,
    pub initial: InitialState,
    /// `evolve` writes every `every`-th step.
    pub every: usize,
}

impl SweepSpec {
    /// Built-in defaults for a mode.
    pub fn defaults(mode: Mode) -> Self {
        let base = SweepSpec {
            mode,
            alpha: 1.0,
            theta_min: 0.0,
            theta_max: 10.0,
            theta_steps: 200,
            log_theta: false,
            y_min: -0.5,
            y_max: 0.5,
            y_steps: 50,
            gamma: 0.01,
            theta: 0.0,
            dt: 0.01,
            t_final: 100.0,
            with_analytic: false,
            initial: InitialState::Excited,
            every: 1,
        };
        match mode {
            Mode::Fig1 | Mode::Evolve => base,
            Mode::Fig2 => SweepSpec {
                theta_min: 0.04,
                theta_max: 2.0,
                theta_steps: 50,
                ..base
            },
            Mode::RateCheck => SweepSpec {
                theta_min: 0.0,
                theta_max: 10.0,
                theta_steps: 6,
                ..base
            },
        }
    }

    /// Sets one field from its textual key (flag name without dashes, `-` or `_`).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Config(format!("invalid value '{v}' for '{key}'")))
        }
        fn flag(key: &str, v: &str) -> Result<bool> {
            match v {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(Error::Config(format!("invalid boolean '{v}' for '{key}'"))),
            }
        }
        let v = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "alpha" => self.alpha = num(key, v)?,
            "theta-min" => self.theta_min = num(key, v)?,
            "theta-max" => self.theta_max = num(key, v)?,
            "theta-steps" => self.theta_steps = num(key, v)?,
            "log-theta" => self.log_theta = flag(key, v)?,
            "y-min" => self.y_min = num(key, v)?,
            "y-max" => self.y_max = num(key, v)?,
            "y-steps" => self.y_steps = num(key, v)?,
            "gamma" => self.gamma = num(key, v)?,
            "theta" => self.theta = num(key, v)?,
            "dt" => self.dt = num(key, v)?,
            "t-final" => self.t_final = num(key, v)?,
            "with-analytic" => self.with_analytic = flag(key, v)?,
            "initial" => self.initial = v.parse()?,
            "every" => self.every = num(key, v)?,
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let finite = [
            self.alpha,
            self.theta_min,
            self.theta_max,
            self.y_min,
            self.y_max,
            self.gamma,
            self.theta,
            self.dt,
            self.t_final,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return bad("all numeric parameters must be finite".into());
        }
        let theta_grid = || {
            if self.theta_min < 0.0 {
                return bad(format!("theta-min must be >= 0, got {}", self.theta_min));
            }
            if self.theta_min >= self.theta_max {
                return bad(format!(
                    "theta-min ({}) must be < theta-max ({})",
                    self.theta_min, self.theta_max
                ));
            }
            if self.theta_steps < 2 {
                return bad(format!(
                    "theta-steps must be >= 2, got {}",
                    self.theta_steps
                ));
            }
            if self.log_theta && self.theta_min <= 0.0 {
                return bad("log-theta needs theta-min > 0".into());
            }
            Ok(())
        };
        match self.mode {
            Mode::Fig1 => {
                if self.alpha < 0.0 {
                    return bad(format!("alpha must be >= 0, got {}", self.alpha));
                }
                theta_grid()
            }
            Mode::Fig2 => {
                if self.alpha < 0.0 {
                    return bad(format!("alpha must be >= 0, got {}", self.alpha));
                }
                theta_grid()?;
                if self.y_min >= self.y_max {
                    return bad(format!(
                        "y-min ({}) must be < y-max ({})",
                        self.y_min, self.y_max
                    ));
                }
                if self.y_min < -1.0 {
                    return bad(format!("y-min must be >= -1 (T2 >= 0), got {}", self.y_min));
                }
                if self.y_steps < 2 {
                    return bad(format!("y-steps must be >= 2, got {}", self.y_steps));
                }
                Ok(())
            }
            Mode::Evolve => {
                if self.gamma <= 0.0 {
                    return bad(format!("gamma must be > 0, got {}", self.gamma));
                }
                if self.theta < 0.0 {
                    return bad(format!("theta must be >= 0, got {}", self.theta));
                }
                if self.t_final <= 0.0 || self.dt <= 0.0 || self.dt > self.t_final {
                    return bad(format!(
                        "need 0 < dt <= t-final, got dt = {}, t-final = {}",
                        self.dt, self.t_final
                    ));
                }
                if self.every == 0 {
                    return bad("every must be >= 1".into());
                }
                Ok(())
            }
            Mode::RateCheck => {
                if self.gamma <= 0.0 {
                    return bad(format!("gamma must be > 0, got {}", self.gamma));
                }
                if self.dt <= 0.0 {
                    return bad(format!("dt must be > 0, got {}", self.dt));
                }
                theta_grid()
            }
        }
    }

    /// Temperature axis, linear or logarithmic, endpoints exact.
    pub fn theta_grid(&self) -> Vec<f64> {
        if self.log_theta {
            let (a, b) = (self.theta_min.ln(), self.theta_max.ln());
            let mut g = linspace(a, b, self.theta_steps);
            g.iter_mut().for_each(|v| *v = v.exp());
            g[0] = self.theta_min;
            *g.last_mut().unwrap() = self.theta_max;
            g
        } else {
            linspace(self.theta_min, self.theta_max, self.theta_steps)
        }
    }

    /// `y` axis for `fig2`. When the range straddles zero, `y = 0` is always
    /// part of the axis (inserted if the linear grid misses it).
    pub fn y_grid(&self) -> Vec<f64> {
        let span = self.y_max - self.y_min;
        let mut g = linspace(self.y_min, self.y_max, self.y_steps);
        for v in g.iter_mut() {
            if v.abs() < 1e-12 * span {
                *v = 0.0;
            }
        }
        if self.y_min < 0.0 && self.y_max > 0.0 && !g.contains(&0.0) {
            let at = g.partition_point(|&v| v < 0.0);
            g.insert(at, 0.0);
        }
        g
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * (i as f64 / last)
            }
        })
        .collect()
}

/// Header plus rows of optional values; `None` is written as an empty field.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Comma-separated, 17 significant digits, LF line endings.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.header.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                if let Some(v) = v {
                    // avoid emitting "-0"
                    let v = if *v == 0.0 { 0.0 } else { *v };
                    line.push_str(&format!("{v:.16e}"));
                }
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// A table plus non-fatal diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub table: Table,
    pub warnings: Vec<String>,
}

pub fn run(spec: &SweepSpec, exec: Execution) -> Result<SweepOutput> {
    spec.validate()?;
    match spec.mode {
        Mode::Fig1 => run_fig1(spec, exec),
        Mode::Fig2 => run_fig2(spec, exec),
        Mode::Evolve => run_evolve(spec),
        Mode::RateCheck => run_rate_check(spec, exec),
    }
}

fn expect_mode(spec: &SweepSpec, mode: Mode) -> Result<()> {
    if spec.mode != mode {
        return Err(Error::Config(format!(
            "spec is for mode {}, expected {mode}",
            spec.mode
        )));
    }
    spec.validate()
}

fn alpha_of(spec: &SweepSpec) -> Result<AlphaParams> {
    AlphaParams::new(spec.alpha).map_err(|e| Error::Config(e.to_string()))
}

/// Columns `theta, P`.
pub fn run_fig1(spec: &SweepSpec, exec: Execution) -> Result<SweepOutput> {
    expect_mode(spec, Mode::Fig1)?;
    let alpha = alpha_of(spec)?;
    let grid = spec.theta_grid();
    let rows = map_indexed(grid.len(), exec, |i| {
        let theta = grid[i];
        predictability_thermal(alpha, theta).map(|p| vec![Some(theta), Some(p)])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput {
        table: Table {
            header: vec!["theta", "P"],
            rows,
        },
        warnings: vec![],
    })
}

/// Columns `theta1, y, P_full, P_approx`; `P_approx` is empty where the
/// near-equilibrium expansion is undefined.
pub fn run_fig2(spec: &SweepSpec, exec: Execution) -> Result<SweepOutput> {
    expect_mode(spec, Mode::Fig2)?;
    let alpha = alpha_of(spec)?;
    let thetas = spec.theta_grid();
    let ys = spec.y_grid();
    let rows = map_indexed(thetas.len() * ys.len(), exec, |i| {
        let (theta1, y) = (thetas[i / ys.len()], ys[i % ys.len()]);
        let full = predictability_eraser(alpha, theta1, theta1 * (1.0 + y))?;
        let approx = predictability_near_equilibrium(alpha, theta1, y).ok();
        Ok(vec![Some(theta1), Some(y), Some(full), approx])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    if ys.iter().any(|&y| near_equilibrium_warning(y)) {
        warnings.push(
            "P_approx evaluated beyond |y| = 0.1 where the near-equilibrium expansion is rough"
                .into(),
        );
    }
    let missing = rows.iter().filter(|r| r[3].is_none()).count();
    if missing > 0 {
        warnings.push(format!(
            "{missing} rows outside the near-equilibrium expansion domain; P_approx left empty"
        ));
    }
    Ok(SweepOutput {
        table: Table {
            header: vec!["theta1", "y", "P_full", "P_approx"],
            rows,
        },
        warnings,
    })
}

/// Columns `t, rho11, rho22, re_rho12, im_rho12, trace_err, det`, plus the
/// closed-form solution when `with_analytic` is set.
pub fn run_evolve(spec: &SweepSpec) -> Result<SweepOutput> {
    expect_mode(spec, Mode::Evolve)?;
    let bath = BathParams::new(spec.theta, spec.gamma)?;
    let rho0 = spec.initial.state(&bath);
    let result = integrate_sampled(&rho0, &bath, spec.t_final, spec.dt, spec.every)?;

    let mut header = vec![
        "t",
        "rho11",
        "rho22",
        "re_rho12",
        "im_rho12",
        "trace_err",
        "det",
    ];
    if spec.with_analytic {
        header.extend([
            "rho11_exact",
            "rho22_exact",
            "re_rho12_exact",
            "im_rho12_exact",
        ]);
    }
    let mut rows = Vec::with_capacity(result.len());
    for (&t, s) in result.times.iter().zip(&result.states) {
        let mut row = vec![
            Some(t),
            Some(s.rho11()),
            Some(s.rho22()),
            Some(s.rho12().re),
            Some(s.rho12().im),
            Some((s.trace() - 1.0).abs()),
            Some(s.determinant()),
        ];
        if spec.with_analytic {
            let e = analytic_solution(&rho0, &bath, t)?;
            row.extend([
                Some(e.rho11()),
                Some(e.rho22()),
                Some(e.rho12().re),
                Some(e.rho12().im),
            ]);
        }
        rows.push(row);
    }

    let mut warnings = Vec::new();
    if result.dt_exceeds_recommendation() {
        warnings.push(format!(
            "dt = {} exceeds the recommended {:e} for this bath",
            spec.dt, result.recommended_dt
        ));
    }
    if bath.weak_coupling_violated() {
        warnings.push(format!(
            "gamma = {} is not small compared to omega_a",
            spec.gamma
        ));
    }
    Ok(SweepOutput {
        table: Table { header, rows },
        warnings,
    })
}

/// One row of the decoherence-rate cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCheckRow {
    pub theta: f64,
    pub gamma: f64,
    pub n_bar: f64,
    pub analytic: f64,
    pub fitted: f64,
    pub rel_err: f64,
}

/// Integrates an equal superposition at each temperature for five coherence
/// lifetimes and fits the decay of `|ρ12|`. The step size is `dt` capped at
/// the bath's recommended value.
pub fn rate_check_rows(
    thetas: &[f64],
    gamma: f64,
    dt: f64,
    exec: Execution,
) -> Result<Vec<RateCheckRow>> {
    map_indexed(thetas.len(), exec, |i| {
        let theta = thetas[i];
        let bath = BathParams::new(theta, gamma)?;
        let analytic = decoherence_rate(gamma, bath.n_bar())?;
        let t_final = RATE_CHECK_LIFETIMES / analytic;
        let step = dt.min(bath.recommended_dt()).min(t_final);
        let stride = ((t_final / step) as usize / RATE_CHECK_SAMPLES).max(1);
        let rho0 = InitialState::Plus.state(&bath);
        let trajectory = integrate_sampled(&rho0, &bath, t_final, step, stride)?;
        let fitted = fit_decoherence_rate(&trajectory)?;
        Ok(RateCheckRow {
            theta,
            gamma,
            n_bar: bath.n_bar(),
            analytic,
            fitted,
            rel_err: ((fitted - analytic) / analytic).abs(),
        })
    })
    .into_iter()
    .collect()
}

/// Columns `gamma, n_bar, gamma_dec_analytic, gamma_dec_fitted, rel_err`.
pub fn run_rate_check(spec: &SweepSpec, exec: Execution) -> Result<SweepOutput> {
    expect_mode(spec, Mode::RateCheck)?;
    let rows = rate_check_rows(&spec.theta_grid(), spec.gamma, spec.dt, exec)?
        .into_iter()
        .map(|r| {
            vec![
                Some(r.gamma),
                Some(r.n_bar),
                Some(r.analytic),
                Some(r.fitted),
                Some(r.rel_err),
            ]
        })
        .collect();
    let header = vec![
        "gamma",
        "n_bar",
        "gamma_dec_analytic",
        "gamma_dec_fitted",
        "rel_err",
    ];
    Ok(SweepOutput {
        table: Table { header, rows },
        warnings: vec![],
    })
}
