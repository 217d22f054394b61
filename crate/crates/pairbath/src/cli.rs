//! Command-line interface.
//!
//! Four subcommands cover the library surface: `steady-state` (one
//! observable row at a bath point), `evolve` (a master-equation trajectory),
//! `sweep` (one row per grid point along a chosen axis), and `figure` (the
//! named presets). A `--config` file supplies `key=value` defaults using the
//! long-flag spellings; explicit flags override it. Output goes to stdout or
//! `--output`, and is byte-identical across runs of the same configuration.
//!
//! Exit codes: 0 on success, 1 for configuration and numerical errors, 2 for
//! command-line parse errors. Errors print as a single `error: …` line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::sweep::{
    figure_preset, run_evolve, run_sweep, write_steady_state_csv, write_sweep_csv, DissipationKind,
    FixedParams, Grid, SweepConfig, SweepMode, DEFAULT_GRID_STEPS,
};

#[derive(Parser)]
#[command(
    name = "pairbath",
    version,
    about = "Steady-state thermodynamics of a qubit pair under collective or independent dissipation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary observables at one bath parameter point.
    SteadyState(CommonArgs),
    /// Integrate the master equation and write the trajectory.
    Evolve(CommonArgs),
    /// Sweep one axis and write one observable row per grid point.
    Sweep(SweepArgs),
    /// Emit a predefined figure dataset.
    Figure(FigureArgs),
}

/// Axis choices for `sweep`.
#[derive(Clone, Copy, Debug, ValueEnum)]
enum Axis {
    /// Initial inverse temperature ωβ₀ (bath held fixed).
    #[value(name = "beta0")]
    Beta0,
    /// Bath inverse temperature ωβ_B (initial condition held fixed).
    #[value(name = "betaB")]
    BetaB,
    /// Bright weight r (bath held fixed).
    #[value(name = "r")]
    R,
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Bath inverse temperature ωβ_B (accepts inf and -inf).
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    omega_beta_bath: Option<f64>,

    /// Initial-preparation inverse temperature ωβ₀ (accepts inf and -inf).
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    omega_beta_init: Option<f64>,

    /// Bright weight r in [0, 1], as an alternative to --omega-beta-init.
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    r: Option<f64>,

    /// Initial collective populations p0,p+,p-,p1 (evolve only).
    #[arg(long, value_parser = parse_populations)]
    populations: Option<[f64; 4]>,

    /// Emission scale γ > 0.
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    gamma: Option<f64>,

    /// Level-splitting renormalization Ω_L.
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    lamb_shift: Option<f64>,

    /// Exchange splitting Ω_I (collective dynamics only).
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    interaction: Option<f64>,

    /// Evolution horizon in units of 1/γ (evolve only).
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    t_max: Option<f64>,

    /// Integrator step; defaults to 0.005/γ (evolve only).
    #[arg(long, value_parser = parse_ext_real, allow_hyphen_values = true)]
    dt: Option<f64>,

    /// Dissipation model: collective or independent.
    #[arg(long, value_parser = parse_dissipation)]
    dissipation: Option<DissipationKind>,

    /// Grid as min:max, min:max:steps, or a comma-separated list (sweep only).
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: Option<Grid>,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// key=value defaults file; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Axis to sweep.
    #[arg(value_enum)]
    axis: Axis,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Preset name (fig1a, fig1b, fig2–fig6, fig7a–fig7c, loctemp, entropr).
    name: String,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Value parsers
// ---------------------------------------------------------------------------

fn parse_ext_real(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_nan() {
        return Err("NaN is not a valid parameter value".into());
    }
    Ok(v)
}

fn parse_populations(s: &str) -> std::result::Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated populations p0,p+,p-,p1, got {} value(s)",
            parts.len()
        ));
    }
    let mut p = [0.0; 4];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = parse_ext_real(part)?;
    }
    Ok(p)
}

fn parse_dissipation(s: &str) -> std::result::Result<DissipationKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [min, max] => Ok(Grid::Linear {
                min: parse_ext_real(min)?,
                max: parse_ext_real(max)?,
                steps: DEFAULT_GRID_STEPS,
            }),
            [min, max, steps] => Ok(Grid::Linear {
                min: parse_ext_real(min)?,
                max: parse_ext_real(max)?,
                steps: steps
                    .trim()
                    .parse()
                    .map_err(|_| format!("'{steps}' is not a step count"))?,
            }),
            _ => Err(format!(
                "grid '{s}' must be min:max, min:max:steps, or a comma-separated list"
            )),
        }
    } else {
        let points = s
            .split(',')
            .map(parse_ext_real)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Grid::Explicit(points))
    }
}

// ---------------------------------------------------------------------------
// Config-file defaults
// ---------------------------------------------------------------------------

/// Fully resolved options: config-file defaults overlaid by explicit flags.
#[derive(Clone, Debug, Default)]
struct Options {
    omega_beta_bath: Option<f64>,
    omega_beta_init: Option<f64>,
    r: Option<f64>,
    populations: Option<[f64; 4]>,
    gamma: Option<f64>,
    lamb_shift: Option<f64>,
    interaction: Option<f64>,
    t_max: Option<f64>,
    dt: Option<f64>,
    dissipation: Option<DissipationKind>,
    grid: Option<Grid>,
    output: Option<PathBuf>,
}

/// Parses a `key=value` defaults file. Keys use the long-flag spellings;
/// blank lines and `#` comments are ignored; unknown keys are errors.
fn parse_config_file(path: &Path) -> Result<Options> {
    let text = std::fs::read_to_string(path)?;
    let mut opts = Options::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Error::Config(format!("{}:{}: {msg}", path.display(), idx + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| at(format!("expected key=value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "omega-beta-bath" => opts.omega_beta_bath = Some(parse_ext_real(value).map_err(at)?),
            "omega-beta-init" => opts.omega_beta_init = Some(parse_ext_real(value).map_err(at)?),
            "r" => opts.r = Some(parse_ext_real(value).map_err(at)?),
            "populations" => opts.populations = Some(parse_populations(value).map_err(at)?),
            "gamma" => opts.gamma = Some(parse_ext_real(value).map_err(at)?),
            "lamb-shift" => opts.lamb_shift = Some(parse_ext_real(value).map_err(at)?),
            "interaction" => opts.interaction = Some(parse_ext_real(value).map_err(at)?),
            "t-max" => opts.t_max = Some(parse_ext_real(value).map_err(at)?),
            "dt" => opts.dt = Some(parse_ext_real(value).map_err(at)?),
            "dissipation" => opts.dissipation = Some(parse_dissipation(value).map_err(at)?),
            "grid" => opts.grid = Some(parse_grid(value).map_err(at)?),
            "output" => opts.output = Some(PathBuf::from(value)),
            other => return Err(at(format!("unknown key '{other}'"))),
        }
    }
    Ok(opts)
}

/// Applies the precedence: config-file value, then explicit flag on top.
fn resolve_options(args: &CommonArgs) -> Result<Options> {
    let mut opts = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => Options::default(),
    };
    if args.omega_beta_bath.is_some() {
        opts.omega_beta_bath = args.omega_beta_bath;
    }
    if args.omega_beta_init.is_some() {
        opts.omega_beta_init = args.omega_beta_init;
    }
    if args.r.is_some() {
        opts.r = args.r;
    }
    if args.populations.is_some() {
        opts.populations = args.populations;
    }
    if args.gamma.is_some() {
        opts.gamma = args.gamma;
    }
    if args.lamb_shift.is_some() {
        opts.lamb_shift = args.lamb_shift;
    }
    if args.interaction.is_some() {
        opts.interaction = args.interaction;
    }
    if args.t_max.is_some() {
        opts.t_max = args.t_max;
    }
    if args.dt.is_some() {
        opts.dt = args.dt;
    }
    if args.dissipation.is_some() {
        opts.dissipation = args.dissipation;
    }
    if args.grid.is_some() {
        opts.grid = args.grid.clone();
    }
    if args.output.is_some() {
        opts.output = args.output.clone();
    }
    Ok(opts)
}

fn fixed_params(opts: &Options) -> FixedParams {
    FixedParams {
        omega_beta_bath: opts.omega_beta_bath,
        omega_beta0: opts.omega_beta_init,
        r: opts.r,
        populations: opts.populations,
        gamma: opts.gamma.unwrap_or(1.0),
        lamb_shift: opts.lamb_shift.unwrap_or(0.0),
        interaction: opts.interaction.unwrap_or(0.0),
        t_max: opts.t_max,
        dt: opts.dt,
        dissipation: opts.dissipation.unwrap_or_default(),
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SteadyState(args) => {
            let opts = resolve_options(&args)?;
            let fixed = fixed_params(&opts);
            let mut w = open_output(&opts.output)?;
            write_steady_state_csv(&fixed, &mut w)?;
            w.flush()?;
        }
        Command::Evolve(args) => {
            let opts = resolve_options(&args)?;
            let config = SweepConfig {
                mode: SweepMode::Evolve,
                grid: None,
                fixed: fixed_params(&opts),
                preset: None,
                entropy_reference_rows: false,
            };
            let mut w = open_output(&opts.output)?;
            run_evolve(&config, &mut w)?;
            w.flush()?;
        }
        Command::Sweep(args) => {
            let opts = resolve_options(&args.common)?;
            let mode = match args.axis {
                Axis::Beta0 => SweepMode::SweepBeta0,
                Axis::BetaB => SweepMode::SweepBetaB,
                Axis::R => SweepMode::SweepR,
            };
            let config = SweepConfig {
                mode,
                grid: opts.grid.clone(),
                fixed: fixed_params(&opts),
                preset: None,
                entropy_reference_rows: false,
            };
            let rows = run_sweep(&config)?;
            let mut w = open_output(&opts.output)?;
            write_sweep_csv(&config, &rows, &mut w)?;
            w.flush()?;
        }
        Command::Figure(args) => {
            let config = figure_preset(&args.name)?;
            let rows = run_sweep(&config)?;
            let mut w = open_output(&args.output)?;
            write_sweep_csv(&config, &rows, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Parses the command line, runs it, and returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    0
                }
                _ => {
                    let rendered = err.render().to_string();
                    let first = rendered
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or("error: invalid arguments");
                    eprintln!("{first}");
                    2
                }
            };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ext_real_parser_accepts_infinities_and_rejects_nan() {
        assert_eq!(parse_ext_real("2.5").unwrap(), 2.5);
        assert_eq!(parse_ext_real("-2").unwrap(), -2.0);
        assert_eq!(parse_ext_real("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_ext_real(" -inf ").unwrap(), f64::NEG_INFINITY);
        assert!(parse_ext_real("nan").is_err());
        assert!(parse_ext_real("two").is_err());
    }

    #[test]
    fn population_parser_requires_four_entries() {
        assert_eq!(
            parse_populations("0.1,0.2,0.3,0.4").unwrap(),
            [0.1, 0.2, 0.3, 0.4]
        );
        assert!(parse_populations("0.5,0.5").is_err());
        assert!(parse_populations("a,b,c,d").is_err());
    }

    #[test]
    fn grid_parser_handles_all_three_forms() {
        assert_eq!(
            parse_grid("-4:0:11").unwrap(),
            Grid::Linear {
                min: -4.0,
                max: 0.0,
                steps: 11
            }
        );
        assert_eq!(
            parse_grid("0:4").unwrap(),
            Grid::Linear {
                min: 0.0,
                max: 4.0,
                steps: DEFAULT_GRID_STEPS
            }
        );
        assert_eq!(
            parse_grid("-inf,0,inf").unwrap(),
            Grid::Explicit(vec![f64::NEG_INFINITY, 0.0, f64::INFINITY])
        );
        assert_eq!(parse_grid("2").unwrap(), Grid::Explicit(vec![2.0]));
        assert!(parse_grid("a:b").is_err());
        assert!(parse_grid("1:2:3:4").is_err());
    }

    #[test]
    fn cli_parses_subcommands_and_negative_values() {
        let cli = Cli::try_parse_from([
            "pairbath",
            "sweep",
            "betaB",
            "--grid",
            "-4:0:11",
            "--omega-beta-init",
            "inf",
        ])
        .unwrap();
        match cli.command {
            Command::Sweep(args) => {
                assert!(matches!(args.axis, Axis::BetaB));
                assert_eq!(args.common.omega_beta_init, Some(f64::INFINITY));
                assert_eq!(
                    args.common.grid,
                    Some(Grid::Linear {
                        min: -4.0,
                        max: 0.0,
                        steps: 11
                    })
                );
            }
            _ => panic!("expected the sweep subcommand"),
        }

        let cli = Cli::try_parse_from([
            "pairbath",
            "steady-state",
            "--omega-beta-bath",
            "-2",
            "--r",
            "1",
        ])
        .unwrap();
        match cli.command {
            Command::SteadyState(args) => {
                assert_eq!(args.omega_beta_bath, Some(-2.0));
                assert_eq!(args.r, Some(1.0));
            }
            _ => panic!("expected the steady-state subcommand"),
        }

        assert!(Cli::try_parse_from(["pairbath", "sweep", "betaC"]).is_err());
        assert!(Cli::try_parse_from(["pairbath", "evolve", "--dt", "nan"]).is_err());
    }

    #[test]
    fn config_file_defaults_are_overridden_by_flags() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# defaults for the cold-start sweep").unwrap();
        writeln!(file).unwrap();
        writeln!(file, "omega-beta-init = inf").unwrap();
        writeln!(file, "grid = 0:4:21").unwrap();
        writeln!(file, "gamma = 2").unwrap();
        file.flush().unwrap();

        let args = CommonArgs {
            config: Some(file.path().to_path_buf()),
            gamma: Some(3.0),
            ..CommonArgs::default()
        };
        let opts = resolve_options(&args).unwrap();
        assert_eq!(opts.omega_beta_init, Some(f64::INFINITY));
        assert_eq!(
            opts.grid,
            Some(Grid::Linear {
                min: 0.0,
                max: 4.0,
                steps: 21
            })
        );
        assert_eq!(opts.gamma, Some(3.0), "flag wins over the config file");

        let fixed = fixed_params(&opts);
        assert_eq!(fixed.gamma, 3.0);
        assert_eq!(fixed.lamb_shift, 0.0);
        assert_eq!(fixed.dissipation, DissipationKind::Collective);
    }

    #[test]
    fn config_file_rejects_unknown_keys_and_bad_lines() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "omega-beta-batth = 2").unwrap();
        file.flush().unwrap();
        let args = CommonArgs {
            config: Some(file.path().to_path_buf()),
            ..CommonArgs::default()
        };
        let err = resolve_options(&args).unwrap_err();
        assert!(err.to_string().contains("unknown key"));

        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "just some words").unwrap();
        file.flush().unwrap();
        let args = CommonArgs {
            config: Some(file.path().to_path_buf()),
            ..CommonArgs::default()
        };
        let err = resolve_options(&args).unwrap_err();
        assert!(err.to_string().contains("key=value"));
    }
}
