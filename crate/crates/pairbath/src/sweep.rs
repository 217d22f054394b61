//! Parameter sweeps, figure presets, and CSV serialization.
//!
//! A sweep walks one axis — the initial inverse temperature ωβ₀, the bath
//! inverse temperature ωβ_B, or the bright weight r — and evaluates every
//! stationary observable of the collective steady state at each grid point.
//! The figure presets bundle the sweeps that reproduce the reference plots.
//! Output is plain CSV with a `#`-commented preamble that echoes the full
//! configuration, so every artifact is self-describing and byte-reproducible.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::algebra::{
    bell_diagonal_state, partial_trace, thermal_state, to_bell_populations, trace_distance,
    von_neumann_entropy, BellBasis, BellPopulations, DensityMatrix, Qubit,
};
use crate::dynamics::{
    evolve, liouvillian_collective, liouvillian_independent, steady_state_analytic,
    steady_state_populations, BathSpec,
};
use crate::error::{Error, Result};
use crate::thermo::{
    apparent_temperature_from_populations, entropy_critical_r, entropy_crossing_r_star,
    partition_functions, r_from_initial_beta, ObservableReport, SteadyStateParams,
};

/// Version string stamped into every CSV preamble.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Column schema shared by all sweep and steady-state artifacts.
pub const CSV_HEADER: &str =
    "swept,r,c,E_ss,E_th,E_ratio,S_ss,S_th,S_ratio,omega_beta_loc,omega_over_apparent_T";

/// Column schema of trajectory artifacts: collective-basis populations and
/// the six collective-basis coherences (0 = ψ₀, p = ψ₊, m = ψ₋, 1 = ψ₁).
pub const TRAJECTORY_HEADER: &str = "t,p0,p_plus,p_minus,p1,re_rho_0p,im_rho_0p,re_rho_0m,im_rho_0m,re_rho_01,im_rho_01,re_rho_pm,im_rho_pm,re_rho_p1,im_rho_p1,re_rho_m1,im_rho_m1";

/// Default number of points for a `min:max` grid.
pub const DEFAULT_GRID_STEPS: usize = 201;

/// Default integrator step is 0.005/γ: half the stability guidance, so the
/// local truncation error of the population modes sits near round-off.
pub const DEFAULT_DT_GAMMA: f64 = 0.005;

/// Initial populations given on the command line may miss unit sum by at
/// most this much before normalization.
const INPUT_POPULATION_SUM_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Configuration types
// ---------------------------------------------------------------------------

/// Which dissipation model drives the dynamics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DissipationKind {
    /// Shared bath through S± = σ₁± + σ₂±; conserves the bright weight.
    #[default]
    Collective,
    /// Separate baths per atom; relaxes to the thermal state.
    Independent,
}

impl DissipationKind {
    /// Canonical lowercase name.
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Collective => "collective",
            Self::Independent => "independent",
        }
    }
}

impl FromStr for DissipationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "collective" => Ok(Self::Collective),
            "independent" => Ok(Self::Independent),
            other => Err(Error::Config(format!(
                "unknown dissipation '{other}' (expected collective or independent)"
            ))),
        }
    }
}

impl fmt::Display for DissipationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a run computes: one of the three sweep axes or a time evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Sweep the initial inverse temperature ωβ₀ at fixed bath.
    SweepBeta0,
    /// Sweep the bath inverse temperature ωβ_B at fixed initial condition.
    SweepBetaB,
    /// Sweep the bright weight r at fixed bath.
    SweepR,
    /// Integrate the master equation in time.
    Evolve,
}

impl SweepMode {
    /// Canonical mode name used in preambles and by the CLI.
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SweepBeta0 => "sweep-beta0",
            Self::SweepBetaB => "sweep-betaB",
            Self::SweepR => "sweep-r",
            Self::Evolve => "evolve",
        }
    }

    /// Name of the swept column for this mode.
    fn axis_name(&self) -> &'static str {
        match self {
            Self::SweepBeta0 => "omega_beta0",
            Self::SweepBetaB => "omega_beta_bath",
            Self::SweepR => "r",
            Self::Evolve => "t",
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The swept axis: either a uniform linear grid or an explicit point list.
#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    /// `steps` evenly spaced points from `min` to `max` inclusive.
    Linear { min: f64, max: f64, steps: usize },
    /// Explicit points, in order; ±∞ are allowed, NaN is not.
    Explicit(Vec<f64>),
}

impl Grid {
    /// Materializes the grid points. The linear rule
    /// `min + (max − min)·k/(steps − 1)` hits both endpoints exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        match self {
            Self::Linear { min, max, steps } => {
                if *steps < 2 {
                    return Err(Error::Config(format!(
                        "a linear grid needs at least 2 points, got {steps}"
                    )));
                }
                if !(min.is_finite() && max.is_finite() && min < max) {
                    return Err(Error::Config(format!(
                        "linear grid bounds must be finite with min < max, got {min}:{max}"
                    )));
                }
                let span = max - min;
                let denom = (*steps - 1) as f64;
                Ok((0..*steps)
                    .map(|k| min + span * (k as f64 / denom))
                    .collect())
            }
            Self::Explicit(points) => {
                if points.is_empty() {
                    return Err(Error::Config(
                        "an explicit grid needs at least one point".into(),
                    ));
                }
                if points.iter().any(|p| p.is_nan()) {
                    return Err(Error::Config("grid points must not be NaN".into()));
                }
                Ok(points.clone())
            }
        }
    }

    /// Compact description for the preamble: `min:max:steps` or the comma
    /// list.
    pub fn describe(&self) -> String {
        match self {
            Self::Linear { min, max, steps } => {
                format!("{}:{}:{}", fmt_g(*min), fmt_g(*max), steps)
            }
            Self::Explicit(points) => points
                .iter()
                .map(|p| fmt_g(*p))
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

/// Non-swept parameters of a run. Optional fields stay `None` unless the
/// user fixes them; which ones must be present depends on the mode.
#[derive(Clone, Debug)]
pub struct FixedParams {
    /// Bath inverse temperature ωβ_B.
    pub omega_beta_bath: Option<f64>,
    /// Initial (preparation) inverse temperature ωβ₀.
    pub omega_beta0: Option<f64>,
    /// Bright weight r, as an alternative to ωβ₀.
    pub r: Option<f64>,
    /// Explicit initial collective populations (p₀, p₊, p₋, p₁) for evolve.
    pub populations: Option<[f64; 4]>,
    /// Emission scale γ.
    pub gamma: f64,
    /// Level-splitting renormalization Ω_L.
    pub lamb_shift: f64,
    /// Exchange splitting Ω_I.
    pub interaction: f64,
    /// Evolution horizon.
    pub t_max: Option<f64>,
    /// Integrator step; defaults to [`DEFAULT_DT_GAMMA`]/γ.
    pub dt: Option<f64>,
    /// Dissipation model.
    pub dissipation: DissipationKind,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            omega_beta_bath: None,
            omega_beta0: None,
            r: None,
            populations: None,
            gamma: 1.0,
            lamb_shift: 0.0,
            interaction: 0.0,
            t_max: None,
            dt: None,
            dissipation: DissipationKind::Collective,
        }
    }
}

/// A full run description: mode, grid, fixed parameters, and provenance.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// What to compute.
    pub mode: SweepMode,
    /// Swept axis (required for sweep modes, unused for evolve).
    pub grid: Option<Grid>,
    /// Everything that is held fixed.
    pub fixed: FixedParams,
    /// Preset name when the config came from [`figure_preset`].
    pub preset: Option<String>,
    /// Append the r*, r_cr, z reference rows after an r sweep.
    pub entropy_reference_rows: bool,
}

/// One output row: the swept value and every stationary observable.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    /// Value of the swept axis.
    pub swept: f64,
    /// Bright weight at this point.
    pub r: f64,
    /// Residual coherence c = r/z − 1.
    pub c: f64,
    /// Stationary energy E^ss (units of ω).
    pub e_ss: f64,
    /// Thermal energy E^th (units of ω).
    pub e_th: f64,
    /// E^ss/E^th.
    pub e_ratio: f64,
    /// Stationary entropy S^ss (nats).
    pub s_ss: f64,
    /// Thermal entropy S^th (nats).
    pub s_th: f64,
    /// S^ss/S^th.
    pub s_ratio: f64,
    /// Inverse local temperature ωβ_Loc of a reduced qubit.
    pub omega_beta_loc: f64,
    /// Inverse apparent temperature ω/𝒯; `None` for the dark state.
    pub omega_over_apparent_t: Option<f64>,
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

fn observable_row(swept: f64, omega_beta_bath: f64, r: f64) -> Result<SweepRow> {
    let params = SteadyStateParams::new(omega_beta_bath, r)?;
    let rep = ObservableReport::for_steady_state(&params)?;
    Ok(SweepRow {
        swept,
        r,
        c: rep.coherence_c,
        e_ss: rep.energy_ss,
        e_th: rep.energy_th,
        e_ratio: rep.energy_ss / rep.energy_th,
        s_ss: rep.entropy_ss,
        s_th: rep.entropy_th,
        s_ratio: rep.entropy_ss / rep.entropy_th,
        omega_beta_loc: rep.local_beta,
        omega_over_apparent_t: rep.apparent_temp_inverse,
    })
}

/// Resolves the bright weight from exactly one of `r` and `omega_beta0`.
fn resolve_r(fixed: &FixedParams, context: &str) -> Result<f64> {
    match (fixed.r, fixed.omega_beta0) {
        (Some(r), None) => Ok(r),
        (None, Some(beta0)) => Ok(r_from_initial_beta(beta0)),
        (None, None) => Err(Error::Config(format!(
            "{context} needs the initial condition: give r or omega-beta-init"
        ))),
        (Some(_), Some(_)) => Err(Error::Config(
            "give only one of r and omega-beta-init".into(),
        )),
    }
}

/// Evaluates a sweep: one [`SweepRow`] per grid point, in grid order. Each
/// row depends only on its own swept value, never on its neighbours.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.mode == SweepMode::Evolve {
        return Err(Error::Config(
            "run_sweep handles the sweep modes; use run_evolve for evolve".into(),
        ));
    }
    if config.fixed.dissipation == DissipationKind::Independent {
        return Err(Error::Config(
            "parameter sweeps describe the collective steady state; independent dissipation \
             relaxes to the thermal state regardless of the initial condition (use steady-state)"
                .into(),
        ));
    }
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| Error::Config("a sweep needs a grid".into()))?;
    let points = grid.points()?;
    let fixed = &config.fixed;

    match config.mode {
        SweepMode::SweepBeta0 => {
            let bath = fixed
                .omega_beta_bath
                .ok_or_else(|| Error::Config("sweep-beta0 needs omega-beta-bath".into()))?;
            if fixed.r.is_some() || fixed.omega_beta0.is_some() {
                return Err(Error::Config(
                    "sweep-beta0 sweeps the initial temperature; do not also fix r or \
                     omega-beta-init"
                        .into(),
                ));
            }
            points
                .into_iter()
                .map(|beta0| observable_row(beta0, bath, r_from_initial_beta(beta0)))
                .collect()
        }
        SweepMode::SweepBetaB => {
            if fixed.omega_beta_bath.is_some() {
                return Err(Error::Config(
                    "sweep-betaB sweeps the bath temperature; do not also fix omega-beta-bath"
                        .into(),
                ));
            }
            let r = resolve_r(fixed, "sweep-betaB")?;
            points
                .into_iter()
                .map(|bath| observable_row(bath, bath, r))
                .collect()
        }
        SweepMode::SweepR => {
            let bath = fixed
                .omega_beta_bath
                .ok_or_else(|| Error::Config("sweep-r needs omega-beta-bath".into()))?;
            if fixed.r.is_some() || fixed.omega_beta0.is_some() {
                return Err(Error::Config(
                    "sweep-r sweeps the bright weight; do not also fix r or omega-beta-init".into(),
                ));
            }
            points
                .into_iter()
                .map(|r| observable_row(r, bath, r))
                .collect()
        }
        SweepMode::Evolve => unreachable!("rejected above"),
    }
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// Returns the ready-made configuration behind a named reference figure.
///
/// | name            | sweep                | fixed                          |
/// |-----------------|----------------------|--------------------------------|
/// | fig1a, fig6     | ωβ₀ ∈ [−6, 6]        | ωβ_B = 2                       |
/// | fig1b           | ωβ₀ ∈ [−6, 6]        | ωβ_B = −2                      |
/// | fig2, fig7a     | ωβ_B ∈ [0, 4]        | ωβ₀ = +∞ (cold start, r = 1)   |
/// | fig3, fig7b     | ωβ_B ∈ [0, 4]        | ωβ₀ = 0 (hot start, r = 3/4)   |
/// | fig4            | ωβ_B ∈ [−4, 0]       | ωβ₀ = 0                        |
/// | fig5            | ωβ_B ∈ [−4, 0]       | ωβ₀ = +∞                       |
/// | fig7c           | ωβ_B ∈ [0, 4]        | ωβ₀ = 3                        |
/// | loctemp         | ωβ_B ∈ [0, 4]        | ωβ₀ = +∞                       |
/// | entropr         | r ∈ [0, 1]           | ωβ_B = 2, plus reference rows  |
///
/// Every preset uses a 201-point grid. The output of a preset is identical,
/// row for row, to the equivalent manual sweep invocation.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    let lin = |min: f64, max: f64| Grid::Linear {
        min,
        max,
        steps: DEFAULT_GRID_STEPS,
    };
    let mut fixed = FixedParams::default();
    let (mode, grid) = match name {
        "fig1a" | "fig6" => {
            fixed.omega_beta_bath = Some(2.0);
            (SweepMode::SweepBeta0, lin(-6.0, 6.0))
        }
        "fig1b" => {
            fixed.omega_beta_bath = Some(-2.0);
            (SweepMode::SweepBeta0, lin(-6.0, 6.0))
        }
        "fig2" | "fig7a" | "loctemp" => {
            fixed.omega_beta0 = Some(f64::INFINITY);
            (SweepMode::SweepBetaB, lin(0.0, 4.0))
        }
        "fig3" | "fig7b" => {
            fixed.omega_beta0 = Some(0.0);
            (SweepMode::SweepBetaB, lin(0.0, 4.0))
        }
        "fig4" => {
            fixed.omega_beta0 = Some(0.0);
            (SweepMode::SweepBetaB, lin(-4.0, 0.0))
        }
        "fig5" => {
            fixed.omega_beta0 = Some(f64::INFINITY);
            (SweepMode::SweepBetaB, lin(-4.0, 0.0))
        }
        "fig7c" => {
            fixed.omega_beta0 = Some(3.0);
            (SweepMode::SweepBetaB, lin(0.0, 4.0))
        }
        "entropr" => {
            fixed.omega_beta_bath = Some(2.0);
            (SweepMode::SweepR, lin(0.0, 1.0))
        }
        other => {
            return Err(Error::Config(format!(
                "unknown figure preset '{other}'; available: fig1a, fig1b, fig2, fig3, fig4, \
                 fig5, fig6, fig7a, fig7b, fig7c, loctemp, entropr"
            )))
        }
    };
    Ok(SweepConfig {
        mode,
        grid: Some(grid),
        fixed,
        preset: Some(name.to_string()),
        entropy_reference_rows: name == "entropr",
    })
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

/// Formats a value the way every artifact does: 12 significant digits,
/// positional notation in the exponent range [−5, 12), scientific outside
/// it, trailing zeros trimmed. NaN prints as `undef`, infinities as `inf` /
/// `-inf`, and zero as `0`.
pub fn fmt_g(v: f64) -> String {
    if v.is_nan() {
        return "undef".into();
    }
    if v == f64::INFINITY {
        return "inf".into();
    }
    if v == f64::NEG_INFINITY {
        return "-inf".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..12).contains(&exp) {
        format!("{}e{exp}", trim_decimal(mantissa))
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_decimal(&format!("{v:.decimals$}"))
    }
}

/// Formats an optional value, with `None` as the `undef` sentinel.
pub fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => fmt_g(v),
        None => "undef".into(),
    }
}

fn trim_decimal(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn format_row(row: &SweepRow) -> String {
    [
        fmt_g(row.swept),
        fmt_g(row.r),
        fmt_g(row.c),
        fmt_g(row.e_ss),
        fmt_g(row.e_th),
        fmt_g(row.e_ratio),
        fmt_g(row.s_ss),
        fmt_g(row.s_th),
        fmt_g(row.s_ratio),
        fmt_g(row.omega_beta_loc),
        fmt_opt(row.omega_over_apparent_t),
    ]
    .join(",")
}

/// Writes the `version, mode, dissipation, bath, γ, Ω_L, Ω_I` preamble block
/// shared by the evolve and steady-state artifacts.
fn write_point_preamble<W: Write>(
    w: &mut W,
    mode: &str,
    fixed: &FixedParams,
    bath: f64,
) -> Result<()> {
    writeln!(w, "# pairbath v{ARTIFACT_VERSION}")?;
    writeln!(w, "# mode = {mode}")?;
    writeln!(w, "# dissipation = {}", fixed.dissipation)?;
    writeln!(w, "# omega_beta_bath = {}", fmt_g(bath))?;
    writeln!(w, "# gamma = {}", fmt_g(fixed.gamma))?;
    writeln!(w, "# lamb_shift = {}", fmt_g(fixed.lamb_shift))?;
    writeln!(w, "# interaction = {}", fmt_g(fixed.interaction))?;
    Ok(())
}

/// Writes a sweep artifact: preamble, header, one line per row, and (for an
/// r sweep configured with reference rows) the r*, r_cr, z rows after a
/// marker comment.
pub fn write_sweep_csv<W: Write>(config: &SweepConfig, rows: &[SweepRow], w: &mut W) -> Result<()> {
    let fixed = &config.fixed;
    writeln!(w, "# pairbath v{ARTIFACT_VERSION}")?;
    writeln!(w, "# mode = {}", config.mode)?;
    if let Some(preset) = &config.preset {
        writeln!(w, "# preset = {preset}")?;
    }
    writeln!(w, "# swept = {}", config.mode.axis_name())?;
    if let Some(grid) = &config.grid {
        writeln!(w, "# grid = {}", grid.describe())?;
    }
    match config.mode {
        SweepMode::SweepBeta0 | SweepMode::SweepR => {
            if let Some(bath) = fixed.omega_beta_bath {
                writeln!(w, "# omega_beta_bath = {}", fmt_g(bath))?;
            }
        }
        SweepMode::SweepBetaB => {
            if let Some(r) = fixed.r {
                writeln!(w, "# r = {}", fmt_g(r))?;
            }
            if let Some(beta0) = fixed.omega_beta0 {
                writeln!(w, "# omega_beta0 = {}", fmt_g(beta0))?;
            }
        }
        SweepMode::Evolve => {}
    }
    writeln!(w, "# gamma = {}", fmt_g(fixed.gamma))?;
    writeln!(w, "# lamb_shift = {}", fmt_g(fixed.lamb_shift))?;
    writeln!(w, "# interaction = {}", fmt_g(fixed.interaction))?;
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", format_row(row))?;
    }

    if config.entropy_reference_rows && config.mode == SweepMode::SweepR {
        let bath = fixed
            .omega_beta_bath
            .ok_or_else(|| Error::Config("reference rows need omega-beta-bath".into()))?;
        let (r_star, _) = entropy_crossing_r_star(bath)?;
        let (r_cr, _) = entropy_critical_r(bath)?;
        let z = partition_functions(bath).2;
        let mut reference = [r_star, r_cr, z];
        reference.sort_by(|a, b| a.partial_cmp(b).expect("reference weights are finite"));
        writeln!(w, "# reference points: r_star, r_cr, z")?;
        for r in reference {
            writeln!(w, "{}", format_row(&observable_row(r, bath, r)?))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Evolve artifacts
// ---------------------------------------------------------------------------

/// Validates explicit initial populations: finite, nonnegative, and summing
/// to 1 within 1e-6; the result is normalized exactly.
fn initial_from_populations(p: &[f64; 4]) -> Result<DensityMatrix> {
    if p.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "initial populations must be finite and nonnegative, got {p:?}"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > INPUT_POPULATION_SUM_TOL {
        return Err(Error::InvalidParameter(format!(
            "initial populations sum to {sum}, more than 1e-6 away from 1"
        )));
    }
    let pops = BellPopulations::new(p[0] / sum, p[1] / sum, p[2] / sum, p[3] / sum)?;
    Ok(bell_diagonal_state(&pops))
}

/// Integrates the master equation per the config and writes the trajectory
/// artifact: preamble, per-step collective populations and coherences, and a
/// final-state observable report as trailing comments (including the trace
/// distance to the relevant fixed point — the r-matched collective steady
/// state, or the thermal state for independent dissipation).
pub fn run_evolve<W: Write>(config: &SweepConfig, w: &mut W) -> Result<()> {
    if config.mode != SweepMode::Evolve {
        return Err(Error::Config(
            "run_evolve handles evolve; use run_sweep for the sweep modes".into(),
        ));
    }
    let fixed = &config.fixed;
    let bath_beta = fixed
        .omega_beta_bath
        .ok_or_else(|| Error::Config("evolve needs omega-beta-bath".into()))?;
    let bath = BathSpec::new(fixed.gamma, bath_beta, fixed.lamb_shift, fixed.interaction)?;
    if fixed.r.is_some() {
        return Err(Error::Config(
            "evolve takes its initial state from omega-beta-init or populations, not r".into(),
        ));
    }
    let initial = match (&fixed.populations, fixed.omega_beta0) {
        (Some(p), None) => initial_from_populations(p)?,
        (None, Some(beta0)) => {
            if beta0.is_nan() {
                return Err(Error::InvalidParameter(
                    "omega-beta-init must not be NaN".into(),
                ));
            }
            thermal_state(beta0)
        }
        (None, None) => {
            return Err(Error::Config(
                "evolve needs an initial state: give omega-beta-init or populations".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "give only one of populations and omega-beta-init".into(),
            ))
        }
    };
    let t_max = fixed
        .t_max
        .ok_or_else(|| Error::Config("evolve needs t-max".into()))?;
    let dt = fixed.dt.unwrap_or(DEFAULT_DT_GAMMA / fixed.gamma);
    let liouvillian = match fixed.dissipation {
        DissipationKind::Collective => liouvillian_collective(&bath),
        DissipationKind::Independent => liouvillian_independent(&bath),
    };
    let trajectory = evolve(&initial, &liouvillian, t_max, dt)?;

    write_point_preamble(w, SweepMode::Evolve.as_str(), fixed, bath_beta)?;
    match (&fixed.populations, fixed.omega_beta0) {
        (Some(p), _) => writeln!(
            w,
            "# populations = {},{},{},{}",
            fmt_g(p[0]),
            fmt_g(p[1]),
            fmt_g(p[2]),
            fmt_g(p[3])
        )?,
        (None, Some(beta0)) => writeln!(w, "# omega_beta0 = {}", fmt_g(beta0))?,
        (None, None) => unreachable!("validated above"),
    }
    writeln!(w, "# t_max = {}", fmt_g(t_max))?;
    writeln!(w, "# dt = {}", fmt_g(dt))?;
    writeln!(w, "{TRAJECTORY_HEADER}")?;

    let basis = BellBasis::standard();
    for (t, state) in trajectory.times().iter().zip(trajectory.states()) {
        let bell = basis.to_bell_matrix(state.matrix());
        let mut cols = vec![
            fmt_g(*t),
            fmt_g(bell.get(0, 0).re),
            fmt_g(bell.get(1, 1).re),
            fmt_g(bell.get(2, 2).re),
            fmt_g(bell.get(3, 3).re),
        ];
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let z = bell.get(i, j);
            cols.push(fmt_g(z.re));
            cols.push(fmt_g(z.im));
        }
        writeln!(w, "{}", cols.join(","))?;
    }

    // Final-state report.
    let final_state = trajectory.final_state();
    let pops = to_bell_populations(final_state)?;
    let m = final_state.matrix();
    let energy = m.get(1, 1).re + m.get(2, 2).re + 2.0 * m.get(3, 3).re;
    let coherence = 2.0 * m.get(1, 2).re;
    let reduced = partial_trace(final_state, Qubit::First)?;
    let local_beta = (reduced.matrix().get(0, 0).re / reduced.matrix().get(1, 1).re).ln();
    let fixed_point = match fixed.dissipation {
        DissipationKind::Collective => steady_state_analytic(bath_beta, pops.r())?,
        DissipationKind::Independent => thermal_state(bath_beta),
    };
    writeln!(w, "# final_r = {}", fmt_g(pops.r()))?;
    writeln!(w, "# final_E = {}", fmt_g(energy))?;
    writeln!(w, "# final_S = {}", fmt_g(von_neumann_entropy(final_state)))?;
    writeln!(w, "# final_c = {}", fmt_g(coherence))?;
    writeln!(
        w,
        "# final_omega_over_apparent_T = {}",
        fmt_opt(apparent_temperature_from_populations(&pops))
    )?;
    writeln!(w, "# final_omega_beta_loc = {}", fmt_g(local_beta))?;
    writeln!(
        w,
        "# trace_distance_to_fixed_point = {}",
        fmt_g(trace_distance(final_state, &fixed_point))
    )?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Steady-state artifacts
// ---------------------------------------------------------------------------

/// Writes the single-point stationary artifact: the full observable row at
/// one bath parameter, plus the stationary populations in the preamble.
///
/// Collective dissipation needs exactly one of `r` and `omega_beta0`;
/// independent dissipation takes neither (the stationary state is thermal,
/// which coincides with the collective family at r = z).
pub fn write_steady_state_csv<W: Write>(fixed: &FixedParams, w: &mut W) -> Result<()> {
    let bath = fixed
        .omega_beta_bath
        .ok_or_else(|| Error::Config("steady-state needs omega-beta-bath".into()))?;
    let r = match fixed.dissipation {
        DissipationKind::Independent => {
            if fixed.r.is_some() || fixed.omega_beta0.is_some() {
                return Err(Error::Config(
                    "independent dissipation relaxes to the thermal state; r and \
                     omega-beta-init do not apply"
                        .into(),
                ));
            }
            partition_functions(bath).2
        }
        DissipationKind::Collective => resolve_r(fixed, "the collective steady state")?,
    };
    let row = observable_row(bath, bath, r)?;
    let pops = steady_state_populations(bath, r)?;

    write_point_preamble(w, "steady-state", fixed, bath)?;
    writeln!(w, "# r = {}", fmt_g(r))?;
    writeln!(
        w,
        "# populations = {},{},{},{}",
        fmt_g(pops.p0()),
        fmt_g(pops.pplus()),
        fmt_g(pops.pminus()),
        fmt_g(pops.p1())
    )?;
    writeln!(w, "{CSV_HEADER}")?;
    writeln!(w, "{}", format_row(&row))?;
    Ok(())
}
