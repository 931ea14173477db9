//! Command-line front end for the `feelab` library.
//!
//! [`run`] parses arguments, merges them with an optional JSON config file,
//! validates everything before computing, runs one experiment and writes
//! its series and summary.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use feelab::{ConstantFee, EngineConfig, EngineMode, Fee, FeeRule, PoolState, SplitMode};

use args::{parse_range, AlphaGrid, Cli, Command, EngineChoice, Format};
use commands::Report;
use config::FileConfig;
use error::{on_flag, CliError};

/// Environment variable selecting the default output format.
pub const FORMAT_ENV: &str = "FEELAB_FORMAT";

pub const DEFAULT_SPLIT_COUNTS: [usize; 10] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Fully resolved global settings.
#[derive(Debug)]
pub struct Settings {
    pub pool: PoolState,
    pub dx: f64,
    pub fee: Fee,
    pub engine: EngineChoice,
    pub split: SplitMode,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Settings {
    pub fn engine_config(&self) -> Result<EngineConfig<Fee>, CliError> {
        let mode = match self.engine {
            EngineChoice::Continuous => EngineMode::Continuous,
            EngineChoice::Discrete => EngineMode::Discrete,
            EngineChoice::Auto if self.fee.is_path_independent() => EngineMode::Continuous,
            EngineChoice::Auto => EngineMode::Discrete,
        };
        EngineConfig::new(mode, self.fee, self.split).map_err(|_| {
            CliError::flag(
                "--engine",
                format!("fee {} is path dependent; use --engine discrete", self.fee),
            )
        })
    }
}

fn format_from_env() -> Result<Option<Format>, CliError> {
    use clap::ValueEnum;
    match std::env::var(FORMAT_ENV) {
        Ok(v) if !v.is_empty() => Format::from_str(&v, true)
            .map(Some)
            .map_err(|_| CliError::flag(FORMAT_ENV, format!("unknown format `{v}`"))),
        _ => Ok(None),
    }
}

fn resolve(cli: &args::GlobalArgs, file: &FileConfig) -> Result<Settings, CliError> {
    let x0 = cli.x0.or(file.x0).unwrap_or(100.0);
    let y0 = cli.y0.or(file.y0).unwrap_or(100.0);
    for (flag, v) in [("--x0", x0), ("--y0", y0)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::flag(
                flag,
                format!("reserves must be positive, got {v}"),
            ));
        }
    }
    let pool = PoolState::new(x0, y0).map_err(on_flag("--x0/--y0"))?;
    let dx = cli.dx.or(file.dx).unwrap_or(10.0);
    if !(dx.is_finite() && dx >= 0.0) {
        return Err(CliError::flag(
            "--dx",
            format!("trade size must be non-negative, got {dx}"),
        ));
    }
    let fee = match (cli.fee, &file.fee) {
        (Some(fee), _) => fee,
        (None, Some(s)) => s
            .parse()
            .map_err(|e| CliError::flag("--fee", format!("{e}")))?,
        (None, None) => ConstantFee::new(0.003).map_err(on_flag("--fee"))?.into(),
    };
    let split = match (cli.split, &file.split) {
        (Some(split), _) => split,
        (None, Some(s)) => s.parse().map_err(on_flag("--split"))?,
        (None, None) => SplitMode::default(),
    };
    let format = match cli.format.or(file.format) {
        Some(f) => f,
        None => format_from_env()?.unwrap_or(Format::Table),
    };
    Ok(Settings {
        pool,
        dx,
        fee,
        engine: cli.engine.or(file.engine).unwrap_or(EngineChoice::Auto),
        split,
        format,
        out: cli.out.clone().or_else(|| file.out.clone()),
    })
}

fn alphas(grid: &AlphaGrid, file: &FileConfig) -> Result<Vec<f64>, CliError> {
    if let Some(list) = grid.alphas.clone().or_else(|| file.alphas.clone()) {
        if let Some(bad) = list.iter().find(|&&a| !(a > 0.0 && a.is_finite())) {
            return Err(CliError::flag(
                "--alphas",
                format!("sizes must be positive, got {bad}"),
            ));
        }
        return Ok(list);
    }
    let max = grid.alpha_max.or(file.alpha_max).unwrap_or(0.5);
    let points = grid.points.or(file.points).unwrap_or(50);
    if !(max > 0.0 && max.is_finite()) {
        return Err(CliError::flag(
            "--alpha-max",
            format!("must be positive, got {max}"),
        ));
    }
    if points == 0 {
        return Err(CliError::flag("--points", "need at least one point"));
    }
    Ok((1..=points)
        .map(|i| max * i as f64 / points as f64)
        .collect())
}

fn range(
    cli: Option<(f64, f64)>,
    file: &Option<String>,
    flag: &'static str,
) -> Result<(f64, f64), CliError> {
    match (cli, file) {
        (Some(r), _) => Ok(r),
        (None, Some(s)) => parse_range(s).map_err(|m| CliError::flag(flag, m)),
        (None, None) => Ok((50.0, 200.0)),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.global.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let settings = resolve(&cli.global, &file)?;
    let pool = &settings.pool;
    let report = match cli.command {
        Command::Swap { splits } => {
            let config = settings.engine_config()?;
            commands::swap(
                pool,
                &config,
                settings.dx,
                splits.or(file.splits).unwrap_or(1),
            )?
        }
        Command::SplitTest { n } => {
            let config = settings.engine_config()?;
            let n = n
                .or_else(|| file.n.clone())
                .unwrap_or(DEFAULT_SPLIT_COUNTS.to_vec());
            commands::split_test(pool, &config, settings.dx, &n)?
        }
        Command::PriceCurve(grid) => {
            let config = settings.engine_config()?;
            commands::price_curve_report(pool, &config, &alphas(&grid, &file)?)?
        }
        Command::IlCurve(grid) => {
            let config = settings.engine_config()?;
            commands::il_curve_report(pool, &config, &alphas(&grid, &file)?)?
        }
        Command::FeeField {
            x_range,
            y_range,
            resolution,
        } => commands::fee_field(
            &settings.fee,
            range(x_range, &file.x_range, "--x-range")?,
            range(y_range, &file.y_range, "--y-range")?,
            resolution.or(file.resolution).unwrap_or(61),
        )?,
        Command::ZeroilCurve {
            k0,
            t,
            t_max,
            points,
        } => {
            let k0 = match (k0, file.k0.clone().map(|k| k.into_vec())) {
                (Some(k), _) => k,
                (None, Some(list)) if list.len() == 1 => list[0],
                (None, Some(_)) => return Err(CliError::flag("--k0", "expected one value")),
                (None, None) => pool.invariant(),
            };
            let t = match t.or_else(|| file.t.clone()) {
                Some(t) => t,
                None => {
                    let t_max = t_max.or(file.t_max).unwrap_or(1.00001);
                    let points = points.or(file.points).unwrap_or(101);
                    if !(t_max >= 1.0 && t_max.is_finite()) {
                        return Err(CliError::flag(
                            "--t-max",
                            format!("must be >= 1, got {t_max}"),
                        ));
                    }
                    if points < 2 {
                        return Err(CliError::flag("--points", "need at least two points"));
                    }
                    let step = (t_max - 1.0) / (points - 1) as f64;
                    (0..points)
                        .map(|i| {
                            if i + 1 == points {
                                t_max
                            } else {
                                1.0 + step * i as f64
                            }
                        })
                        .collect()
                }
            };
            commands::zeroil_curve(k0, &t, &settings.fee)?
        }
        Command::NoUniversal { kstar, k0 } => {
            let k0 = k0
                .or_else(|| file.k0.clone().map(|k| k.into_vec()))
                .unwrap_or(vec![10000.0, 9000.0]);
            commands::no_universal(kstar.or(file.kstar).unwrap_or(10100.0), &k0)?
        }
    };
    emit(&report, &settings)
}

fn emit(report: &Report, settings: &Settings) -> Result<(), CliError> {
    let series = output::render(&report.table, settings.format)?;
    let summary: String = report.summary.iter().map(|l| format!("{l}\n")).collect();
    let stdout = std::io::stdout();
    let stdout_path = || PathBuf::from("<stdout>");
    let io = |path: PathBuf| move |source| CliError::Io { path, source };
    match &settings.out {
        Some(path) => {
            std::fs::write(path, series).map_err(io(path.clone()))?;
            stdout
                .lock()
                .write_all(summary.as_bytes())
                .map_err(io(stdout_path()))?;
        }
        None if settings.format == Format::Table => {
            let mut lock = stdout.lock();
            lock.write_all(series.as_bytes())
                .map_err(io(stdout_path()))?;
            lock.write_all(summary.as_bytes())
                .map_err(io(stdout_path()))?;
        }
        None => {
            // Keep stdout machine-readable.
            stdout
                .lock()
                .write_all(series.as_bytes())
                .map_err(io(stdout_path()))?;
            eprint!("{summary}");
        }
    }
    Ok(())
}
