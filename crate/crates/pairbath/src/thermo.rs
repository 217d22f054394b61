//! Stationary thermodynamic observables of the pair.
//!
//! Energies are reported in units of the transition energy ω and entropies
//! in nats; temperatures always appear in the dimensionless combination ωβ.
//! The central objects are the two stationary families:
//!
//! - the **thermal** state reached under independent dissipation, with
//!   energy E^th and entropy S^th fixed by the bath alone;
//! - the **collective** stationary state, which remembers the initial
//!   condition through the conserved bright weight r and generically ends
//!   colder (E^ss < E^th for r = 1) with residual cross coherence c.
//!
//! All expressions are evaluated in overflow-free forms so the extended bath
//! parameter ωβ_B ∈ [−∞, +∞] is handled without special casing by callers.

use crate::algebra::{BellPopulations, DensityMatrix};
use crate::dynamics::{steady_state_populations, BathSpec};
use crate::error::{Error, Result};

/// A sector trace below this is treated as empty when classifying the
/// apparent-temperature ratio 0/0; stationary populations of interest are
/// O(1), so this only triggers for genuinely dark sectors.
const DARK_TRACE_EPS: f64 = 1e-15;

/// Bisection stops when the bracket is this narrow; the crossing is simple,
/// so the root error matches the bracket width.
const CROSSING_BISECTION_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// The two numbers that determine the collective stationary state: the bath
/// parameter ωβ_B (extended real) and the conserved bright weight r ∈ [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyStateParams {
    omega_beta_bath: f64,
    r: f64,
}

impl SteadyStateParams {
    /// Validates ωβ_B (any extended real except NaN) and r ∈ [0, 1].
    pub fn new(omega_beta_bath: f64, r: f64) -> Result<Self> {
        if omega_beta_bath.is_nan() {
            return Err(Error::InvalidParameter(
                "bath parameter omega_beta_bath must not be NaN".into(),
            ));
        }
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "bright-sector weight r = {r} outside [0, 1]"
            )));
        }
        Ok(Self { omega_beta_bath, r })
    }

    /// Dimensionless inverse bath temperature ωβ_B.
    pub fn omega_beta_bath(&self) -> f64 {
        self.omega_beta_bath
    }

    /// Conserved bright weight r.
    pub fn r(&self) -> f64 {
        self.r
    }
}

// ---------------------------------------------------------------------------
// Partition functions and derived weights
// ---------------------------------------------------------------------------

/// Partition functions (Z, Z₊, z) at bath parameter x = ωβ_B:
///
/// - Z   = (1 + e^{−x})², the two-qubit thermal partition function;
/// - Z₊  = 1 + e^{−x} + e^{−2x}, its restriction to the bright sector;
/// - z   = Z₊/Z, the thermal bright weight.
///
/// z is an even function of x and is evaluated in a form that keeps it exact
/// for any extended-real x; Z and Z₊ themselves overflow to +∞ for
/// x ≲ −709, which propagates correctly through IEEE arithmetic.
///
/// Panics on NaN input.
pub fn partition_functions(omega_beta_bath: f64) -> (f64, f64, f64) {
    let x = omega_beta_bath;
    assert!(!x.is_nan(), "omega_beta_bath must not be NaN");
    if x == f64::INFINITY {
        return (1.0, 1.0, 1.0);
    }
    if x == f64::NEG_INFINITY {
        return (f64::INFINITY, f64::INFINITY, 1.0);
    }
    let e = (-x).exp();
    let z_two = (1.0 + e) * (1.0 + e);
    let z_bright = 1.0 + e + e * e;
    // z = (1 + e + e²)/(1 + e)² is invariant under e → 1/e, so evaluating it
    // at e^{−|x|} ≤ 1 makes the evenness exact and avoids ∞/∞ at large |x|.
    let s = (-x.abs()).exp();
    let z = (1.0 + s + s * s) / ((1.0 + s) * (1.0 + s));
    (z_two, z_bright, z)
}

/// Bright weight r of a thermal product state prepared at initial inverse
/// temperature ωβ₀: r = z(ωβ₀). This is the value collective dissipation
/// conserves from such a start; it never drops below z(0) = 3/4.
pub fn r_from_initial_beta(omega_beta0: f64) -> f64 {
    partition_functions(omega_beta0).2
}

/// Stationary cross coherence of the collective steady state.
///
/// Returns (c, ‖ρ‖_ℓ1) where c = r/z − 1 equals the sum ρ₀₁,₁₀ + ρ₁₀,₀₁ of
/// the product-basis cross coherences (also c = p₊ − p₋), and the ℓ1
/// coherence measure is |c|. c vanishes exactly when r equals the thermal
/// weight z and is negative for r < z.
pub fn coherence_sum(params: &SteadyStateParams) -> (f64, f64) {
    let (_, _, z) = partition_functions(params.omega_beta_bath());
    let c = params.r() / z - 1.0;
    (c, c.abs())
}

// ---------------------------------------------------------------------------
// Energy
// ---------------------------------------------------------------------------

/// Thermal mean energy per pair in units of ω: E^th = 2/(e^{ωβ_B} + 1).
/// The limits 0 (cold) and 2 (inverted) emerge naturally. Panics on NaN.
pub fn energy_th(omega_beta_bath: f64) -> f64 {
    assert!(!omega_beta_bath.is_nan(), "omega_beta_bath must not be NaN");
    2.0 / (omega_beta_bath.exp() + 1.0)
}

/// Mean excitation number of the bright-sector Gibbs weights,
/// ē(x) = (e^{−x} + 2e^{−2x})/Z₊ ∈ [0, 2]. Evaluated overflow-free on both
/// signs; ē(+∞) = 0, ē(−∞) = 2, ē(0) = 1, and ē(−x) = 2 − ē(x).
fn bright_energy_fraction(x: f64) -> f64 {
    if x == f64::INFINITY {
        return 0.0;
    }
    if x == f64::NEG_INFINITY {
        return 2.0;
    }
    if x >= 0.0 {
        let e = (-x).exp();
        (2.0 * e * e + e) / (1.0 + e + e * e)
    } else {
        // Multiply through by e^{2x}: (2 + e^{x})/(e^{2x} + e^{x} + 1).
        let big = x.exp();
        (2.0 + big) / (big * big + big + 1.0)
    }
}

/// Stationary energy of the collective steady state in units of ω:
///
/// E^ss = (1 − r) + r·ē(ωβ_B),
///
/// one quantum locked in the dark state plus the bright-sector thermal
/// share. Limits: E^ss(+∞) = 1 − r, E^ss(−∞) = 1 + r.
pub fn energy_ss(params: &SteadyStateParams) -> f64 {
    let r = params.r();
    (1.0 - r) + r * bright_energy_fraction(params.omega_beta_bath())
}

/// Stationary energy after a fully cold start (β₀ = +∞, r = 1): E^ss = ē(x).
/// For a cold bath this is half the thermal energy — collective decay stalls
/// at E^ss/E^th → 1/2 as ωβ_B → ∞.
pub fn energy_limit_cold_init(omega_beta_bath: f64) -> f64 {
    assert!(!omega_beta_bath.is_nan(), "omega_beta_bath must not be NaN");
    bright_energy_fraction(omega_beta_bath)
}

/// Stationary energy after an infinite-temperature start (β₀ = 0,
/// r = 3/4): E^ss = 1/4 + (3/4)ē(x). The locked quarter-quantum makes the
/// cold-bath ratio E^ss/E^th diverge like e^{ωβ_B}/8.
pub fn energy_limit_hot_init(omega_beta_bath: f64) -> f64 {
    assert!(!omega_beta_bath.is_nan(), "omega_beta_bath must not be NaN");
    0.25 + 0.75 * bright_energy_fraction(omega_beta_bath)
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// Binary (Shannon) entropy H(p) = −p ln p − (1−p) ln(1−p) in nats, with the
/// usual convention H(0) = H(1) = 0.
pub fn binary_entropy(p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "binary entropy needs p in [0, 1]");
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.ln();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).ln();
    }
    h
}

/// ln Z₊ evaluated without overflow on either sign of x.
fn ln_z_plus(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        (e + e * e).ln_1p()
    } else {
        // Z₊ = e^{−2x}(1 + e^{x} + e^{2x}).
        let big = x.exp();
        -2.0 * x + (big + big * big).ln_1p()
    }
}

/// Thermal entropy of the pair in nats,
/// S^th = 2[ln(1 + e^{−u}) + u·e^{−u}/(1 + e^{−u})] at u = |ωβ_B|
/// (the thermal spectrum is symmetric under ωβ_B → −ωβ_B). Limits: 2 ln 2 at
/// u = 0, zero at u = ∞. Panics on NaN.
pub fn entropy_th(omega_beta_bath: f64) -> f64 {
    assert!(!omega_beta_bath.is_nan(), "omega_beta_bath must not be NaN");
    let u = omega_beta_bath.abs();
    if u == f64::INFINITY {
        return 0.0;
    }
    let e = (-u).exp();
    2.0 * (e.ln_1p() + u * e / (1.0 + e))
}

/// Stationary entropy of the collective steady state in nats:
///
/// S^ss = H(r) + r·[ln Z₊ + ωβ_B·ē]  (evaluated at |ωβ_B|),
///
/// the dark/bright mixing entropy plus the bright-sector Gibbs entropy. The
/// stationary spectrum at fixed r is invariant under ωβ_B → −ωβ_B, so the
/// even evaluation is exact; at ωβ_B = ±∞ only the mixing term H(r)
/// survives. This grouping avoids the cancellation the naive −Σp ln p form
/// suffers at large |ωβ_B|.
pub fn entropy_ss(params: &SteadyStateParams) -> f64 {
    let r = params.r();
    let u = params.omega_beta_bath().abs();
    if u == f64::INFINITY {
        return binary_entropy(r);
    }
    binary_entropy(r) + r * (ln_z_plus(u) + u * bright_energy_fraction(u))
}

// ---------------------------------------------------------------------------
// Temperatures
// ---------------------------------------------------------------------------

/// Dimensionless inverse apparent temperature ω/𝒯 read off a state's
/// collective ladder: ln[(p₀ + p₊)/(p₁ + p₊)], the detailed-balance ratio an
/// attached thermometer would infer from the collective emission and
/// absorption weights.
///
/// Only the population part of the state enters. Returns `Ok(None)` when
/// both sector traces vanish (the dark state has no ladder to read a
/// temperature from); a single vanishing trace gives ±∞. Errors on a
/// non-pair state.
pub fn apparent_temperature(rho: &DensityMatrix) -> Result<Option<f64>> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(
            "apparent temperature needs the 4×4 pair state".into(),
        ));
    }
    let pops = crate::algebra::to_bell_populations(rho)?;
    Ok(apparent_temperature_from_populations(&pops))
}

/// [`apparent_temperature`] computed directly from collective populations.
pub fn apparent_temperature_from_populations(pops: &BellPopulations) -> Option<f64> {
    let up = pops.p0() + pops.pplus();
    let down = pops.p1() + pops.pplus();
    match (up < DARK_TRACE_EPS, down < DARK_TRACE_EPS) {
        (true, true) => None,
        (false, true) => Some(f64::INFINITY),
        (true, false) => Some(f64::NEG_INFINITY),
        (false, false) => Some((up / down).ln()),
    }
}

/// Instantaneous heat flow from the bath into the pair under collective
/// dissipation, in units of ω per unit time:
///
/// dE/dt = 4[G↑(p₀ + p₊) − G↓(p₁ + p₊)].
///
/// Vanishes on the stationary populations and is negative while a hotter-
/// than-stationary bright sector relaxes.
pub fn heat_flow_rate(pops: &BellPopulations, bath: &BathSpec) -> f64 {
    let (gd, gu) = bath.rates();
    4.0 * (gu * (pops.p0() + pops.pplus()) - gd * (pops.p1() + pops.pplus()))
}

/// Dimensionless inverse local temperature ωβ_Loc of either reduced qubit of
/// the collective steady state: ln(p_g/p_e) with p_e = p₁ + (p₊ + p₋)/2 the
/// reduced excited-state weight. The two qubits are interchangeable by
/// symmetry. ±∞ appear naturally when one reduced level empties; for a cold
/// start (r = 1) the ratio ωβ_Loc/ωβ_B approaches 4/3 from below as
/// ωβ_B → 0.
pub fn local_inverse_temperature(params: &SteadyStateParams) -> f64 {
    let pops = steady_state_populations(params.omega_beta_bath(), params.r())
        .expect("validated parameters");
    let pe = pops.p1() + 0.5 * (pops.pplus() + pops.pminus());
    let pg = pops.p0() + 0.5 * (pops.pplus() + pops.pminus());
    (pg / pe).ln()
}

// ---------------------------------------------------------------------------
// Entropy crossing
// ---------------------------------------------------------------------------

/// The bright weight r_cr at which the stationary entropy S^ss(r) peaks,
/// together with the mean bright excitation ω̃* = ē(ωβ_B) (in units of ω)
/// that controls it:
///
/// r_cr = Z₊/(Z₊ + e^{−ω̃*·ωβ_B}),
///
/// evaluated at |ωβ_B| (S^ss is even in ωβ_B at fixed r, so r_cr is too,
/// while ω̃* itself is reported at the signed argument). Above r_cr the
/// stationary entropy falls with r. Errors at ωβ_B = 0 (S^ss is then
/// monotone in r with no interior peak) and at ±∞ or NaN.
pub fn entropy_critical_r(omega_beta_bath: f64) -> Result<(f64, f64)> {
    let x = omega_beta_bath;
    if !x.is_finite() || x == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "the entropy peak needs a finite nonzero bath parameter, got {x}"
        )));
    }
    let omega_star = bright_energy_fraction(x);
    let u = x.abs();
    let e = (-u).exp();
    let z_plus = 1.0 + e + e * e;
    let omega_star_even = (e + 2.0 * e * e) / z_plus;
    let r_cr = z_plus / (z_plus + (-omega_star_even * u).exp());
    Ok((r_cr, omega_star))
}

/// The nontrivial bright weight r* ∈ (0, r_cr) where the stationary entropy
/// equals the thermal one, S^ss(r*) = S^th, returned with the corresponding
/// coherence c* = r*/z − 1 < 0.
///
/// Between r* and 1 the collective steady state is *less* entropic than the
/// thermal state; below r* the locked dark weight makes it more entropic.
/// Found by bisection on [0, r_cr] to width 1e-12. Same domain as
/// [`entropy_critical_r`].
pub fn entropy_crossing_r_star(omega_beta_bath: f64) -> Result<(f64, f64)> {
    let x = omega_beta_bath;
    let (r_cr, _) = entropy_critical_r(x)?;
    let s_th = entropy_th(x);
    let gap = |r: f64| entropy_ss(&SteadyStateParams::new(x, r).expect("r in [0, 1]")) - s_th;

    let mut lo = 1e-15;
    let mut hi = r_cr;
    if !(gap(lo) < 0.0 && gap(hi) > 0.0) {
        return Err(Error::Numerical(format!(
            "entropy crossing not bracketed on [0, {r_cr}] at ωβ_B = {x}"
        )));
    }
    while hi - lo > CROSSING_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if gap(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let r_star = 0.5 * (lo + hi);
    let (_, _, z) = partition_functions(x);
    Ok((r_star, r_star / z - 1.0))
}

// ---------------------------------------------------------------------------
// Bundled report
// ---------------------------------------------------------------------------

/// All scalar observables of one collective stationary state, bundled for
/// reporting.
#[derive(Clone, Copy, Debug)]
pub struct ObservableReport {
    /// Stationary energy E^ss in units of ω.
    pub energy_ss: f64,
    /// Thermal energy E^th of the same bath, in units of ω.
    pub energy_th: f64,
    /// Stationary entropy S^ss in nats.
    pub entropy_ss: f64,
    /// Thermal entropy S^th in nats.
    pub entropy_th: f64,
    /// Residual cross coherence c = r/z − 1.
    pub coherence_c: f64,
    /// ℓ1 coherence measure |c|.
    pub coherence_l1: f64,
    /// Inverse apparent temperature ω/𝒯, `None` for the dark state.
    pub apparent_temp_inverse: Option<f64>,
    /// Inverse local temperature ωβ_Loc of either reduced qubit.
    pub local_beta: f64,
}

impl ObservableReport {
    /// Evaluates every observable at the given stationary parameters.
    pub fn for_steady_state(params: &SteadyStateParams) -> Result<Self> {
        let pops = steady_state_populations(params.omega_beta_bath(), params.r())?;
        let (c, l1) = coherence_sum(params);
        Ok(Self {
            energy_ss: energy_ss(params),
            energy_th: energy_th(params.omega_beta_bath()),
            entropy_ss: entropy_ss(params),
            entropy_th: entropy_th(params.omega_beta_bath()),
            coherence_c: c,
            coherence_l1: l1,
            apparent_temp_inverse: apparent_temperature_from_populations(&pops),
            local_beta: local_inverse_temperature(params),
        })
    }
}

#[cfg(test)]
// Frozen reference constants keep every digit of the high-precision oracle.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::algebra::bell_diagonal_state;
    use approx::assert_abs_diff_eq;

    fn params(x: f64, r: f64) -> SteadyStateParams {
        SteadyStateParams::new(x, r).unwrap()
    }

    #[test]
    fn partition_functions_frozen_values() {
        let (z_two, z_bright, z) = partition_functions(2.0);
        assert_abs_diff_eq!(z_two, 1.288_986_205_361_959_6, epsilon = 1e-15);
        assert_abs_diff_eq!(z_bright, 1.153_650_922_125_346_9, epsilon = 1e-15);
        assert_abs_diff_eq!(z, 0.895_006_414_596_493_48, epsilon = 1e-16);

        assert_abs_diff_eq!(
            partition_functions(3.0).2,
            0.954_823_340_269_087_87,
            epsilon = 5e-16
        );
        assert_abs_diff_eq!(partition_functions(0.0).2, 0.75, epsilon = 1e-16);
        assert_eq!(partition_functions(f64::INFINITY), (1.0, 1.0, 1.0));
        let (z_two, z_bright, z) = partition_functions(f64::NEG_INFINITY);
        assert_eq!((z_two, z_bright), (f64::INFINITY, f64::INFINITY));
        assert_eq!(z, 1.0);

        // z is exactly even and approaches 1 at deep |x|.
        for x in [0.3, 1.0, 7.5, 200.0, 900.0] {
            assert_eq!(partition_functions(x).2, partition_functions(-x).2);
        }
        assert_abs_diff_eq!(partition_functions(900.0).2, 1.0, epsilon = 1e-16);
    }

    #[test]
    fn r_from_initial_beta_matches_thermal_bright_weight() {
        assert_abs_diff_eq!(
            r_from_initial_beta(2.0),
            0.895_006_414_596_493_48,
            epsilon = 1e-16
        );
        assert_eq!(r_from_initial_beta(f64::INFINITY), 1.0);
        assert_eq!(r_from_initial_beta(f64::NEG_INFINITY), 1.0);
        assert_abs_diff_eq!(r_from_initial_beta(0.0), 0.75, epsilon = 1e-16);
        // The thermal bright weight never drops below the hot limit 3/4.
        for x in [-5.0, -1.0, -0.1, 0.2, 1.0, 4.0] {
            assert!(r_from_initial_beta(x) >= 0.75);
        }
    }

    #[test]
    fn coherence_sum_frozen_and_zero_at_thermal_weight() {
        let (c, l1) = coherence_sum(&params(2.0, 1.0));
        assert_abs_diff_eq!(c, 0.117_310_427_826_198_36, epsilon = 1e-15);
        assert_abs_diff_eq!(l1, c, epsilon = 1e-16);

        let z = r_from_initial_beta(2.0);
        let (c, l1) = coherence_sum(&params(2.0, z));
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l1, 0.0, epsilon = 1e-15);

        // c < 0 below the thermal weight.
        let (c, _) = coherence_sum(&params(2.0, 0.3));
        assert!(c < 0.0);
    }

    #[test]
    fn energy_frozen_values_and_limits() {
        assert_abs_diff_eq!(energy_th(2.0), 0.238_405_844_044_235_11, epsilon = 1e-16);
        assert_abs_diff_eq!(energy_th(10.0), 9.079_573_740_486_878_9e-5, epsilon = 1e-19);
        assert_eq!(energy_th(f64::INFINITY), 0.0);
        assert_eq!(energy_th(f64::NEG_INFINITY), 2.0);
        assert_abs_diff_eq!(energy_th(0.0), 1.0, epsilon = 1e-16);

        assert_abs_diff_eq!(
            energy_ss(&params(2.0, 1.0)),
            0.149_062_907_779_131_9,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            energy_ss(&params(2.0, 1.0)) / energy_th(2.0),
            0.625_248_547_814_431_75,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            energy_ss(&params(2.0, 0.75)),
            0.361_797_180_834_348_92,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            energy_ss(&params(-3.0, 0.6)),
            1.568_784_747_169_949_6,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            energy_ss(&params(10.0, 0.75)),
            0.250_034_051_493_046_72,
            epsilon = 1e-15
        );

        // Extreme baths: one dark quantum survives.
        assert_eq!(energy_ss(&params(f64::INFINITY, 0.4)), 0.6);
        assert_eq!(energy_ss(&params(f64::NEG_INFINITY, 0.4)), 1.4);
    }

    #[test]
    fn cold_start_energy_halves_in_a_cold_bath() {
        assert_abs_diff_eq!(
            energy_limit_cold_init(10.0) / energy_th(10.0),
            0.500_045_398_899_138_89,
            epsilon = 1e-14
        );
        // Hot start locks a quarter quantum.
        assert_abs_diff_eq!(
            energy_limit_hot_init(10.0),
            0.250_034_051_493_046_72,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(energy_limit_hot_init(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(energy_limit_cold_init(0.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_frozen_values_and_evenness() {
        assert_abs_diff_eq!(entropy_th(2.0), 0.730_667_710_174_415_22, epsilon = 1e-15);
        assert_abs_diff_eq!(entropy_th(0.0), 4.0f64.ln(), epsilon = 1e-15);
        assert_eq!(entropy_th(f64::INFINITY), 0.0);
        assert_eq!(entropy_th(f64::NEG_INFINITY), 0.0);
        assert_eq!(entropy_th(-2.0), entropy_th(2.0));

        assert_abs_diff_eq!(
            entropy_ss(&params(8.0, 1.0)),
            0.003_020_119_571_023_143_7,
            epsilon = 1e-17
        );
        assert_abs_diff_eq!(
            entropy_th(8.0),
            0.006_036_414_833_255_187_3,
            epsilon = 1e-17
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(8.0, 1.0)) / entropy_th(8.0),
            0.500_316_769_878_871_78,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(12.0, 0.75)),
            0.562_395_051_043_167_87,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            binary_entropy(0.25),
            0.562_335_144_618_808_35,
            epsilon = 5e-16
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(2.0, 0.3)),
            0.743_181_535_272_342_46,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(2.0, 0.9)),
            0.722_034_673_043_795_23,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(-2.0, 0.85)),
            0.797_607_915_255_429_69,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            entropy_ss(&params(f64::INFINITY, 0.3)),
            0.610_864_302_054_893_46,
            epsilon = 1e-15
        );

        // Exact evenness at fixed r.
        for x in [0.4, 1.7, 9.0] {
            assert_eq!(entropy_ss(&params(x, 0.6)), entropy_ss(&params(-x, 0.6)));
        }

        // Stable form agrees with the naive spectrum sum where the latter is
        // accurate.
        let p = params(3.0, 0.8);
        let pops = steady_state_populations(3.0, 0.8).unwrap();
        let naive = crate::algebra::von_neumann_entropy(&bell_diagonal_state(&pops));
        assert_abs_diff_eq!(entropy_ss(&p), naive, epsilon = 1e-12);
    }

    #[test]
    fn apparent_temperature_reads_the_bath_on_the_steady_manifold() {
        // On stationary populations the ladder ratio is exactly e^{ωβ_B}; the
        // bright weight cancels.
        for x in [-3.0, -0.5, 0.0, 1.3, 4.0] {
            for r in [0.2, 0.75, 1.0] {
                let pops = steady_state_populations(x, r).unwrap();
                let app = apparent_temperature_from_populations(&pops).unwrap();
                assert_abs_diff_eq!(app, x, epsilon = 1e-13);
            }
        }

        let pops = BellPopulations::new(0.4, 0.3, 0.1, 0.2).unwrap();
        assert_abs_diff_eq!(
            apparent_temperature_from_populations(&pops).unwrap(),
            0.336_472_236_621_212_93,
            epsilon = 1e-16
        );

        // Dark state: no ladder, no temperature.
        let dark = BellPopulations::new(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(apparent_temperature_from_populations(&dark), None);
        let dark_state = bell_diagonal_state(&dark);
        assert_eq!(apparent_temperature(&dark_state).unwrap(), None);

        // One empty sector pins the temperature at ±0.
        let ground = BellPopulations::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(
            apparent_temperature_from_populations(&ground),
            Some(f64::INFINITY)
        );
        let inverted = BellPopulations::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(
            apparent_temperature_from_populations(&inverted),
            Some(f64::NEG_INFINITY)
        );

        let reduced = crate::algebra::thermal_state(f64::INFINITY);
        let reduced =
            crate::algebra::partial_trace(&reduced, crate::algebra::Qubit::First).unwrap();
        assert!(apparent_temperature(&reduced).is_err());
    }

    #[test]
    fn heat_flow_frozen_value_and_stationarity() {
        let bath = BathSpec::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let pops = BellPopulations::new(0.4, 0.3, 0.1, 0.2).unwrap();
        assert_abs_diff_eq!(
            heat_flow_rate(&pops, &bath),
            -0.709_081_177_424_023_42,
            epsilon = 1e-15
        );

        // No net heat flow once stationary, for any bright weight.
        for r in [0.1, 0.75, 1.0] {
            let pops = steady_state_populations(1.0, r).unwrap();
            assert_abs_diff_eq!(heat_flow_rate(&pops, &bath), 0.0, epsilon = 1e-15);
        }

        // A cold pair in a hot bath absorbs heat.
        let cold_pair = BellPopulations::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let hot_bath = BathSpec::new(1.0, 0.1, 0.0, 0.0).unwrap();
        assert!(heat_flow_rate(&cold_pair, &hot_bath) > 0.0);
    }

    #[test]
    fn local_temperature_frozen_values_and_limits() {
        assert_abs_diff_eq!(
            local_inverse_temperature(&params(2.0, 1.0)),
            2.519_078_909_457_629,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            local_inverse_temperature(&params(2.0, 1.0)) / 2.0,
            1.259_539_454_728_814_5,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            local_inverse_temperature(&params(-2.0, 0.85)),
            -1.829_047_888_572_659_1,
            epsilon = 1e-14
        );

        // The cold-start enhancement approaches 4/3 from below as the bath
        // parameter vanishes.
        let ratio = local_inverse_temperature(&params(0.01, 1.0)) / 0.01;
        assert_abs_diff_eq!(ratio, 1.333_330_864_218_106_8, epsilon = 1e-10);
        assert!(ratio < 4.0 / 3.0);

        assert_eq!(
            local_inverse_temperature(&params(f64::INFINITY, 1.0)),
            f64::INFINITY
        );
        assert_eq!(
            local_inverse_temperature(&params(f64::NEG_INFINITY, 1.0)),
            f64::NEG_INFINITY
        );
        assert_abs_diff_eq!(
            local_inverse_temperature(&params(0.0, 0.6)),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_critical_point_frozen_values() {
        let (r_cr, omega_star) = entropy_critical_r(2.0).unwrap();
        assert_abs_diff_eq!(r_cr, 0.608_510_969_633_033_39, epsilon = 1e-15);
        assert_abs_diff_eq!(omega_star, 0.149_062_907_779_131_9, epsilon = 1e-15);

        // r_cr is even; ω̃* mirrors to 2 − ω̃*.
        let (r_cr_neg, omega_star_neg) = entropy_critical_r(-2.0).unwrap();
        assert_eq!(r_cr_neg, r_cr);
        assert_abs_diff_eq!(omega_star_neg, 2.0 - omega_star, epsilon = 1e-15);

        // S^ss really peaks there: decreasing through r_cr from either side.
        let eps = 1e-6;
        let below = entropy_ss(&params(2.0, r_cr - eps));
        let at = entropy_ss(&params(2.0, r_cr));
        let above = entropy_ss(&params(2.0, r_cr + eps));
        assert!(at > below && at > above);

        assert!(entropy_critical_r(0.0).is_err());
        assert!(entropy_critical_r(f64::INFINITY).is_err());
        assert!(entropy_critical_r(f64::NAN).is_err());
    }

    #[test]
    fn entropy_crossing_frozen_values() {
        let (r_star, c_star) = entropy_crossing_r_star(2.0).unwrap();
        assert_abs_diff_eq!(r_star, 0.290_456_341_975_284_75, epsilon = 5e-12);
        assert_abs_diff_eq!(c_star, -0.675_470_100_282_762_02, epsilon = 5e-12);
        // The crossing is genuine.
        assert_abs_diff_eq!(
            entropy_ss(&params(2.0, r_star)),
            entropy_th(2.0),
            epsilon = 1e-11
        );

        for (x, want) in [
            (0.5, 0.704_280_985_413_033_29),
            (1.0, 0.582_627_352_275_737_54),
            (3.0, 0.115_480_729_374_415_8),
        ] {
            let (r_star, _) = entropy_crossing_r_star(x).unwrap();
            assert_abs_diff_eq!(r_star, want, epsilon = 5e-12);
            let (r_star_neg, _) = entropy_crossing_r_star(-x).unwrap();
            assert_abs_diff_eq!(r_star_neg, want, epsilon = 5e-12);
        }

        // Critical-weight table.
        for (x, want) in [
            (0.5, 0.735_009_867_865_766_59),
            (1.0, 0.696_861_224_611_554_34),
            (3.0, 0.551_571_450_399_457_08),
        ] {
            let (r_cr, _) = entropy_critical_r(x).unwrap();
            assert_abs_diff_eq!(r_cr, want, epsilon = 1e-15);
        }

        assert!(entropy_crossing_r_star(0.0).is_err());
        assert!(entropy_crossing_r_star(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn observable_report_is_consistent_with_parts() {
        let p = params(1.5, 0.82);
        let rep = ObservableReport::for_steady_state(&p).unwrap();
        assert_eq!(rep.energy_ss, energy_ss(&p));
        assert_eq!(rep.energy_th, energy_th(1.5));
        assert_eq!(rep.entropy_ss, entropy_ss(&p));
        assert_eq!(rep.entropy_th, entropy_th(1.5));
        assert_eq!(rep.coherence_c, coherence_sum(&p).0);
        assert_eq!(rep.coherence_l1, rep.coherence_c.abs());
        assert_abs_diff_eq!(rep.apparent_temp_inverse.unwrap(), 1.5, epsilon = 1e-13);
        assert_eq!(rep.local_beta, local_inverse_temperature(&p));
    }

    #[test]
    fn params_validation() {
        assert!(SteadyStateParams::new(f64::NAN, 0.5).is_err());
        assert!(SteadyStateParams::new(1.0, -0.01).is_err());
        assert!(SteadyStateParams::new(1.0, 1.01).is_err());
        assert!(SteadyStateParams::new(f64::INFINITY, 1.0).is_ok());
    }
}
