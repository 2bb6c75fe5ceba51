use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use mzi_decohere::config::{apply_config, load_config};
use mzi_decohere::sweep::{self, InitialState, Mode, SweepSpec};
use mzi_decohere::{Error, Execution};

/// Thermal decoherence and path predictability sweeps, written as CSV.
///
/// Modes: fig1 (P vs theta), fig2 (two-detector P over theta1 and y = dT/T1),
/// evolve (one master-equation trajectory), rate-check (fitted vs analytic
/// decoherence rate). Flags override config-file keys, which override the
/// built-in defaults.
#[derive(Debug, Parser)]
#[command(name = "mzi-decohere", version)]
struct Cli {
    /// fig1 | fig2 | evolve | rate-check
    #[arg(value_parser = parse_mode)]
    mode: Mode,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    #[arg(long)]
    theta_steps: Option<usize>,
    #[arg(long)]
    y_min: Option<f64>,
    #[arg(long)]
    y_max: Option<f64>,
    #[arg(long)]
    y_steps: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Bath reduced temperature for evolve
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    /// Log-spaced temperature grid
    #[arg(long)]
    log_theta: bool,
    /// Add closed-form columns to evolve output
    #[arg(long)]
    with_analytic: bool,
    /// Initial state for evolve: excited | ground | steady | plus | mixed
    #[arg(long, value_parser = parse_initial)]
    initial: Option<InitialState>,
    /// Write every N-th integration step (evolve)
    #[arg(long)]
    every: Option<usize>,
    /// Evaluate grid points on one thread
    #[arg(long)]
    sequential: bool,
    /// Flat key = value file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_initial(s: &str) -> Result<InitialState, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Cli {
    fn spec(&self) -> Result<SweepSpec, Error> {
        let mut spec = SweepSpec::defaults(self.mode);
        if let Some(path) = &self.config {
            apply_config(&mut spec, &load_config(path)?)?;
        }
        macro_rules! overlay {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { spec.$field = v; } )* };
        }
        overlay!(
            alpha,
            theta_min,
            theta_max,
            theta_steps,
            y_min,
            y_max,
            y_steps,
            gamma,
            theta,
            dt,
            t_final,
            initial,
            every
        );
        spec.log_theta |= self.log_theta;
        spec.with_analytic |= self.with_analytic;
        spec.validate()?;
        Ok(spec)
    }
}

fn fail(err: &Error) -> ExitCode {
    let msg = err.to_string().replace('\n', " ");
    eprintln!("mzi-decohere: error kind={} message={msg:?}", err.kind());
    ExitCode::from(err.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<(), Error> {
    let spec = cli.spec()?;
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let output = sweep::run(&spec, exec)?;
    for w in &output.warnings {
        eprintln!("mzi-decohere: warning: {w}");
    }
    let io_err = |e: io::Error| Error::Config(format!("cannot write output: {e}"));
    match &cli.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            output.table.write_csv(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            output.table.write_csv(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .to_string();
            return fail(&Error::Config(
                first.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
