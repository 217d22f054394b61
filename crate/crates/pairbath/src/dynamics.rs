//! Dissipative dynamics of the pair: thermal jump rates, Liouvillian
//! superoperators, time propagation, closed-form population dynamics, and
//! coherence decay rates.
//!
//! Two dissipation models are supported:
//!
//! - **collective** — the pair couples to the bath through the symmetric
//!   ladder operators S± = σ₁± + σ₂±. The dark state |ψ₋⟩ decouples, so its
//!   population p₋ (equivalently the bright weight r = 1 − p₋) is conserved
//!   and the stationary state depends on the initial condition;
//! - **independent** — each atom couples to the bath on its own and the pair
//!   relaxes to the two-qubit thermal state regardless of where it starts.
//!
//! Rates enter through the dimensionless bath parameter ωβ_B and an overall
//! emission scale γ, normalized so that G↓ + G↑ = γ.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{
    bell_diagonal_state, collective_ladder_ops, cre, BellBasis, BellPopulations, ComplexMatrix,
    DensityMatrix,
};
use crate::error::{Error, Result};

/// Raw-trajectory trace drift beyond which the integrator aborts. RK4
/// preserves the trace of a Liouvillian flow exactly in exact arithmetic, so
/// any drift is accumulated round-off; a value this large means the step is
/// amplifying round-off, i.e. the integration is unstable.
pub const TRACE_DRIFT_TOL: f64 = 1e-6;

/// A conserved quantity's generator row must vanish to this fraction of
/// ‖L‖_F before the steady-state solver treats the quantity as conserved.
/// Exactly conserved quantities give ~1e-16 here; a relaxing one gives O(1).
const CONSERVATION_REL_TOL: f64 = 1e-8;

/// Singular values below this (relative to the largest) are treated as zero
/// when solving the stationary least-squares system. The Liouvillian entries
/// are exact to round-off, so 1e-10 cleanly separates the rank deficiency of
/// a conserved sector from genuine small singular values.
const LSTSQ_SVD_EPS: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Bath specification and rates
// ---------------------------------------------------------------------------

/// Bath and coupling parameters for either dissipation model.
///
/// `omega_beta_bath` is the dimensionless inverse bath temperature ωβ_B and
/// may be ±∞ (zero-temperature limits). `lamb_shift` Ω_L renormalizes the
/// level splitting; `interaction` Ω_I is the exchange splitting of the
/// bright/dark doublet and only enters the collective model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathSpec {
    gamma: f64,
    omega_beta_bath: f64,
    lamb_shift: f64,
    interaction: f64,
}

impl BathSpec {
    /// Validates the parameters: γ must be positive and finite, ωβ_B may be
    /// any extended real except NaN, and both frequency shifts must be
    /// finite.
    pub fn new(
        gamma: f64,
        omega_beta_bath: f64,
        lamb_shift: f64,
        interaction: f64,
    ) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "emission rate gamma must be positive and finite, got {gamma}"
            )));
        }
        if omega_beta_bath.is_nan() {
            return Err(Error::InvalidParameter(
                "bath parameter omega_beta_bath must not be NaN".into(),
            ));
        }
        if !lamb_shift.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lamb_shift must be finite, got {lamb_shift}"
            )));
        }
        if !interaction.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "interaction must be finite, got {interaction}"
            )));
        }
        Ok(Self {
            gamma,
            omega_beta_bath,
            lamb_shift,
            interaction,
        })
    }

    /// Overall emission scale γ.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Dimensionless inverse bath temperature ωβ_B (extended real).
    pub fn omega_beta_bath(&self) -> f64 {
        self.omega_beta_bath
    }

    /// Level-splitting renormalization Ω_L.
    pub fn lamb_shift(&self) -> f64 {
        self.lamb_shift
    }

    /// Exchange splitting Ω_I of the single-excitation doublet.
    pub fn interaction(&self) -> f64 {
        self.interaction
    }

    /// Thermal jump rates (G↓, G↑) for this bath.
    pub fn rates(&self) -> (f64, f64) {
        rates_from_beta(self.gamma, self.omega_beta_bath)
    }
}

/// Thermal jump rates (G↓, G↑) at inverse temperature ωβ_B:
///
/// G↓ = γ/(1 + e^{−ωβ_B}),  G↑ = γ/(1 + e^{ωβ_B}),
///
/// so that G↓ + G↑ = γ and detailed balance G↑/G↓ = e^{−ωβ_B} holds. The
/// limits are natural: ωβ_B → +∞ gives (γ, 0), ωβ_B → −∞ gives (0, γ).
///
/// Panics if γ is not positive and finite or ωβ_B is NaN.
pub fn rates_from_beta(gamma: f64, omega_beta_bath: f64) -> (f64, f64) {
    assert!(
        gamma > 0.0 && gamma.is_finite(),
        "emission rate gamma must be positive and finite"
    );
    assert!(!omega_beta_bath.is_nan(), "omega_beta_bath must not be NaN");
    let down = gamma / (1.0 + (-omega_beta_bath).exp());
    let up = gamma / (1.0 + omega_beta_bath.exp());
    (down, up)
}

// ---------------------------------------------------------------------------
// Superoperator
// ---------------------------------------------------------------------------

/// A 16×16 matrix representation of a linear map on 4×4 operators, acting on
/// column-stacked matrices (entry (i, j) sits at position i + 4j).
#[derive(Clone, Debug)]
pub struct Superoperator {
    matrix: DMatrix<Complex64>,
}

impl Superoperator {
    /// The 16×16 matrix of the map in the column-stacking convention.
    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_inner(self.matrix.clone())
    }

    /// Applies the map to a 4×4 operator.
    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.dim() != 4 {
            return Err(Error::Dimension(
                "superoperators act on 4×4 operators".into(),
            ));
        }
        let v = vectorize(m.inner());
        Ok(ComplexMatrix::from_inner(unvectorize(&(&self.matrix * v))))
    }

    /// Applies the map to a state, returning the (traceless, non-state)
    /// time derivative ρ̇.
    pub fn apply_state(&self, rho: &DensityMatrix) -> Result<ComplexMatrix> {
        self.apply(rho.matrix())
    }
}

/// Column-stacks a 4×4 matrix: v[i + 4j] = m[(i, j)].
fn vectorize(m: &DMatrix<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(16, |k, _| m[(k % 4, k / 4)])
}

/// Inverse of [`vectorize`].
fn unvectorize(v: &DVector<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(4, 4, |i, j| v[i + 4 * j])
}

/// The lowering operators σ₁⁻ = σ⁻⊗𝟙 and σ₂⁻ = 𝟙⊗σ⁻ in the product basis.
fn local_lowering_ops() -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut s1 = DMatrix::zeros(4, 4);
    s1[(0, 2)] = cre(1.0); // |10⟩ → |00⟩
    s1[(1, 3)] = cre(1.0); // |11⟩ → |01⟩
    let mut s2 = DMatrix::zeros(4, 4);
    s2[(0, 1)] = cre(1.0); // |01⟩ → |00⟩
    s2[(2, 3)] = cre(1.0); // |11⟩ → |10⟩
    (s1, s2)
}

/// Assembles −i[H, ·] + Σ_k G_k 𝒟[A_k] in the column-stacking convention,
/// with 𝒟[A]ρ = 2AρA† − A†Aρ − ρA†A.
fn assemble_liouvillian(
    h: &DMatrix<Complex64>,
    jumps: &[(f64, DMatrix<Complex64>)],
) -> Superoperator {
    let id = DMatrix::<Complex64>::identity(4, 4);
    let mut l = (id.kronecker(h) - h.transpose().kronecker(&id)) * Complex64::new(0.0, -1.0);
    for (rate, a) in jumps {
        let ada = a.adjoint() * a;
        let sandwich = a.map(|c| c.conj()).kronecker(a);
        l += (sandwich * cre(2.0) - id.kronecker(&ada) - ada.transpose().kronecker(&id))
            * cre(*rate);
    }
    Superoperator { matrix: l }
}

/// Liouvillian for independent dissipation: each atom has its own raising
/// and lowering channel at the thermal rates, and the Hamiltonian is the
/// shifted level splitting Ω_L(n₁ + n₂). The exchange term Ω_I arises from
/// close spacing and belongs to the collective model; it is ignored here.
pub fn liouvillian_independent(bath: &BathSpec) -> Superoperator {
    let (gd, gu) = bath.rates();
    let ol = cre(bath.lamb_shift());
    let mut h = DMatrix::<Complex64>::zeros(4, 4);
    h[(1, 1)] = ol;
    h[(2, 2)] = ol;
    h[(3, 3)] = ol * 2.0;
    let (s1m, s2m) = local_lowering_ops();
    let jumps = vec![
        (gd, s1m.clone()),
        (gd, s2m.clone()),
        (gu, s1m.adjoint()),
        (gu, s2m.adjoint()),
    ];
    assemble_liouvillian(&h, &jumps)
}

/// Liouvillian for collective dissipation: a single raising and a single
/// lowering channel through S± = σ₁± + σ₂±, plus the Hamiltonian
/// Ω_L(n₁ + n₂) + Ω_I(σ₁⁺σ₂⁻ + σ₁⁻σ₂⁺) whose exchange part splits the
/// bright and dark states by ±Ω_I.
pub fn liouvillian_collective(bath: &BathSpec) -> Superoperator {
    let (gd, gu) = bath.rates();
    let ol = cre(bath.lamb_shift());
    let oi = cre(bath.interaction());
    let mut h = DMatrix::<Complex64>::zeros(4, 4);
    h[(1, 1)] = ol;
    h[(2, 2)] = ol;
    h[(3, 3)] = ol * 2.0;
    h[(1, 2)] = oi;
    h[(2, 1)] = oi;
    let (sp, sm) = collective_ladder_ops();
    let jumps = vec![(gd, sm.inner().clone()), (gu, sp.inner().clone())];
    assemble_liouvillian(&h, &jumps)
}

// ---------------------------------------------------------------------------
// Time evolution
// ---------------------------------------------------------------------------

/// A propagated trajectory: validated states at uniformly spaced times,
/// starting from the initial state at t = 0.
#[derive(Clone, Debug)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Trajectory {
    /// Sample times, starting at 0.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// States at [`Self::times`], in the product basis.
    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// Number of stored samples (steps + 1).
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when no samples are stored (never the case for a propagated
    /// trajectory, which always includes t = 0).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The last stored state.
    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory holds at least t = 0")
    }

    /// The last stored time.
    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds at least t = 0")
    }
}

/// Propagates ρ̇ = ℒρ with classical fixed-step RK4 from t = 0 to `t_max`.
///
/// The requested step is rounded down so that an integer number of steps
/// lands exactly on `t_max`. Accuracy and stability need the step to resolve
/// the fastest decay rate; keep γ·dt ≲ 0.01 (the local error then sits near
/// round-off for these 16-dimensional flows). The raw fourth-order iteration
/// runs unprojected, and every stored sample is validated as a density
/// matrix; if the trace drifts beyond [`TRACE_DRIFT_TOL`] or a sample leaves
/// the physical set, the run aborts with [`Error::Instability`].
pub fn evolve(
    rho0: &DensityMatrix,
    liouvillian: &Superoperator,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory> {
    if rho0.dim() != 4 {
        return Err(Error::Dimension(
            "time evolution needs the 4×4 pair state".into(),
        ));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "step dt must be positive and finite, got {dt}"
        )));
    }
    if !t_max.is_finite() || t_max < dt {
        return Err(Error::InvalidParameter(format!(
            "t_max must be finite and at least dt, got t_max = {t_max}, dt = {dt}"
        )));
    }
    let steps = (t_max / dt).ceil() as usize;
    let h = t_max / steps as f64;
    let l = &liouvillian.matrix;

    let mut y = vectorize(rho0.matrix().inner());
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(rho0.clone());

    let half = cre(0.5 * h);
    let full = cre(h);
    let sixth = cre(h / 6.0);
    for k in 1..=steps {
        let k1 = l * &y;
        let k2 = l * (&y + &k1 * half);
        let k3 = l * (&y + &k2 * half);
        let k4 = l * (&y + &k3 * full);
        y += (k1 + k2 * cre(2.0) + k3 * cre(2.0) + k4) * sixth;

        let t = k as f64 * h;
        let tr = y[0] + y[5] + y[10] + y[15];
        let drift = (tr - cre(1.0)).norm();
        if !(drift <= TRACE_DRIFT_TOL) {
            return Err(Error::Instability(format!(
                "trace drifted by {drift:.3e} at t = {t:.6}; dt = {dt} does not resolve the fastest rate (keep γ·dt ≲ 0.01)"
            )));
        }
        let state = DensityMatrix::from_hermitized(&unvectorize(&y)).map_err(|e| {
            Error::Instability(format!(
                "state left the physical set at t = {t:.6} ({e}); reduce dt"
            ))
        })?;
        times.push(t);
        states.push(state);
    }
    Ok(Trajectory { times, states })
}

// ---------------------------------------------------------------------------
// Steady states
// ---------------------------------------------------------------------------

/// Stationary collective-basis populations for collective dissipation at
/// bath parameter ωβ_B, given the conserved bright weight r ∈ [0, 1].
///
/// Within the bright sector the populations are Gibbs-like,
/// (p₀, p₊, p₁) ∝ (1, e^{−ωβ_B}, e^{−2ωβ_B}), and the dark state keeps
/// p₋ = 1 − r. The limits ωβ_B = ±∞ put the bright weight entirely into
/// |ψ₀⟩ or |ψ₁⟩. Negative ωβ_B is evaluated in an overflow-free form.
pub fn steady_state_populations(omega_beta_bath: f64, r: f64) -> Result<BellPopulations> {
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
    let (w0, wp, w1) = if omega_beta_bath == f64::INFINITY {
        (1.0, 0.0, 0.0)
    } else if omega_beta_bath == f64::NEG_INFINITY {
        (0.0, 0.0, 1.0)
    } else if omega_beta_bath >= 0.0 {
        let e = (-omega_beta_bath).exp();
        let zp = 1.0 + e + e * e;
        (1.0 / zp, e / zp, e * e / zp)
    } else {
        // Rescale by e^{2ωβ_B} so nothing overflows for very negative ωβ_B.
        let e = omega_beta_bath.exp();
        let zp = e * e + e + 1.0;
        (e * e / zp, e / zp, 1.0 / zp)
    };
    BellPopulations::new(r * w0, r * wp, 1.0 - r, r * w1)
}

/// The stationary density matrix of collective dissipation as a Bell-diagonal
/// product-basis state; see [`steady_state_populations`].
pub fn steady_state_analytic(omega_beta_bath: f64, r: f64) -> Result<DensityMatrix> {
    Ok(bell_diagonal_state(&steady_state_populations(
        omega_beta_bath,
        r,
    )?))
}

/// Solves ℒρ = 0 directly from the superoperator matrix.
///
/// The kernel of a collective Liouvillian is two-dimensional because the
/// dark-state weight is conserved; the solver detects conservation of
/// Tr[(𝟙 − |ψ₋⟩⟨ψ₋|)ρ] from the matrix itself and, when conserved, pins that
/// trace to `r` (default 1, the fully bright sector). Passing `r` for
/// dynamics that do not conserve it (the independent model) is rejected. The
/// stationary state is the least-squares solution of ℒρ = 0 with the trace
/// and sector constraints appended, solved by SVD with relative cutoff
/// 1e-10.
pub fn steady_state_numeric(liouvillian: &Superoperator, r: Option<f64>) -> Result<DensityMatrix> {
    if let Some(rv) = r {
        if !(0.0..=1.0).contains(&rv) {
            return Err(Error::InvalidParameter(format!(
                "bright-sector weight r = {rv} outside [0, 1]"
            )));
        }
    }
    let m = &liouvillian.matrix;

    // w column-stacks P = 𝟙 − |ψ₋⟩⟨ψ₋| (real symmetric), so wᵀ vec(ρ) = Tr(Pρ) = r.
    let basis = BellBasis::standard();
    let dark = basis.vector(2);
    let mut p = DMatrix::<Complex64>::identity(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            p[(i, j)] -= dark[i] * dark[j].conj();
        }
    }
    let w = vectorize(&p);
    let generator_row = m.transpose() * &w;
    let conserving = generator_row.norm() < CONSERVATION_REL_TOL * m.norm() * w.norm();
    if r.is_some() && !conserving {
        return Err(Error::InvalidParameter(
            "fixing the bright weight r requires dynamics that conserve the dark-state population; \
             these dynamics relax it"
                .into(),
        ));
    }

    // Stack ℒρ = 0 with Tr ρ = 1 and, when conserved, Tr(Pρ) = r.
    let nrows = 17 + usize::from(conserving);
    let mut a = DMatrix::<Complex64>::zeros(nrows, 16);
    let mut b = DVector::<Complex64>::zeros(nrows);
    a.view_mut((0, 0), (16, 16)).copy_from(m);
    for k in [0usize, 5, 10, 15] {
        a[(16, k)] = cre(1.0);
    }
    b[16] = cre(1.0);
    if conserving {
        for k in 0..16 {
            a[(17, k)] = w[k];
        }
        b[17] = cre(r.unwrap_or(1.0));
    }

    // Real embedding z = x + iy: [[Re A, −Im A], [Im A, Re A]]·[x; y] = [Re b; Im b].
    let mut ra = DMatrix::<f64>::zeros(2 * nrows, 32);
    let mut rb = DVector::<f64>::zeros(2 * nrows);
    for i in 0..nrows {
        rb[i] = b[i].re;
        rb[nrows + i] = b[i].im;
        for j in 0..16 {
            let z = a[(i, j)];
            ra[(i, j)] = z.re;
            ra[(i, 16 + j)] = -z.im;
            ra[(nrows + i, j)] = z.im;
            ra[(nrows + i, 16 + j)] = z.re;
        }
    }
    let x = ra
        .svd(true, true)
        .solve(&rb, LSTSQ_SVD_EPS)
        .map_err(|e| Error::Numerical(format!("stationary least-squares solve failed: {e}")))?;

    let rho = DMatrix::from_fn(4, 4, |i, j| {
        let k = i + 4 * j;
        Complex64::new(x[(k, 0)], x[(16 + k, 0)])
    });
    DensityMatrix::from_hermitized(&rho)
        .map_err(|e| Error::Numerical(format!("stationary solution is not a physical state: {e}")))
}

// ---------------------------------------------------------------------------
// Closed-form population dynamics
// ---------------------------------------------------------------------------

/// Collective-basis populations at time t ≥ 0 under collective dissipation,
/// in closed form.
///
/// The populations decouple from the coherences; with r and p₋ conserved the
/// remaining two degrees of freedom diagonalize in the variables
/// q± = p₊ + (1 ± s)p₀, s = √(G↑/G↓), which relax as q̇± = a±q± + 4G↓r with
///
/// a± = 4(±√(G↓G↑) − G↓ − G↑) < 0.
///
/// `t = +∞` returns the stationary populations. At ωβ_B = ±∞ one rate
/// vanishes, the eigenbasis degenerates, and this form does not apply:
/// [`Error::DegenerateRates`] is returned and the caller should integrate
/// with [`evolve`] instead.
pub fn population_dynamics_closed_form(
    initial: &BellPopulations,
    bath: &BathSpec,
    t: f64,
) -> Result<BellPopulations> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "time t must be nonnegative, got {t}"
        )));
    }
    let (gd, gu) = bath.rates();
    if gd <= 0.0 || gu <= 0.0 {
        return Err(Error::DegenerateRates(format!(
            "closed-form populations need both rates positive; ωβ_B = {} gives G↓ = {gd}, G↑ = {gu} — integrate with `evolve` instead",
            bath.omega_beta_bath()
        )));
    }
    let r = initial.r();
    let pminus = initial.pminus();
    let s = (gu / gd).sqrt();
    let (a_plus, a_minus) = population_decay_rates(bath);

    let q0_plus = initial.pplus() + (1.0 + s) * initial.p0();
    let q0_minus = initial.pplus() + (1.0 - s) * initial.p0();
    let drive = 4.0 * gd * r;
    let q_plus = (a_plus * t).exp() * q0_plus + drive * (a_plus * t).exp_m1() / a_plus;
    let q_minus = (a_minus * t).exp() * q0_minus + drive * (a_minus * t).exp_m1() / a_minus;

    let p0 = (q_plus - q_minus) / (2.0 * s);
    let pplus = 0.5 * (q_plus + q_minus) - p0;
    let p1 = r - p0 - pplus;
    BellPopulations::new(p0, pplus, pminus, p1)
}

/// The two population relaxation rates (a₊, a₋) of collective dissipation,
/// a± = 4(±√(G↓G↑) − G↓ − G↑), ordered slow first (a₋ ≤ a₊ < 0 always, since
/// G↓ + G↑ = γ > 0).
pub fn population_decay_rates(bath: &BathSpec) -> (f64, f64) {
    let (gd, gu) = bath.rates();
    let root = (gd * gu).sqrt();
    (4.0 * (root - gd - gu), 4.0 * (-root - gd - gu))
}

/// A conservative relaxation horizon: the time for the slowest population
/// mode to decay by e^{−10}, i.e. 10/|a₊|.
pub fn relaxation_time(bath: &BathSpec) -> f64 {
    let (a_plus, _) = population_decay_rates(bath);
    10.0 / a_plus.abs()
}

// ---------------------------------------------------------------------------
// Coherence decay rates
// ---------------------------------------------------------------------------

/// Decay generators of the collective-basis coherences under collective
/// dissipation, in the frame rotating with the free level splitting (so Ω_L
/// drops out and only the exchange splitting Ω_I appears).
///
/// Four coherences decay independently; the remaining pair
/// (ρ₁₊, ρ₊₀) mixes through the `coupled` 2×2 block,
/// d/dt (ρ₁₊, ρ₊₀)ᵀ = coupled · (ρ₁₊, ρ₊₀)ᵀ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceRates {
    /// Generator of ρ₊₋ (bright–dark): −2(G↓ + G↑) − 2iΩ_I.
    pub plus_minus: Complex64,
    /// Generator of ρ₁₋: −2G↓ − iΩ_I.
    pub one_minus: Complex64,
    /// Generator of ρ₀₋: −2G↑ − iΩ_I. Its real part vanishes with G↑, so at
    /// zero bath temperature this coherence survives collective decay.
    pub zero_minus: Complex64,
    /// Generator of ρ₁₀ (double-quantum): −2(G↓ + G↑), purely decaying.
    pub one_zero: Complex64,
    /// Mixing block of (ρ₁₊, ρ₊₀), off-diagonals 4G↑ and 4G↓.
    pub coupled: [[Complex64; 2]; 2],
}

impl CoherenceRates {
    /// Eigenvalues of the coupled block, ordered by ascending real part.
    pub fn coupled_eigenvalues(&self) -> (Complex64, Complex64) {
        let [[a, b], [c, d]] = self.coupled;
        let tr = a + d;
        let disc = ((a - d) * (a - d) + cre(4.0) * b * c).sqrt();
        let l1 = (tr - disc) * cre(0.5);
        let l2 = (tr + disc) * cre(0.5);
        if l1.re <= l2.re {
            (l1, l2)
        } else {
            (l2, l1)
        }
    }

    /// True when every coherence decays strictly (all generators and both
    /// coupled eigenvalues have negative real part). False at ωβ_B = ±∞,
    /// where one rate vanishes and a dark-sector coherence becomes
    /// stationary.
    pub fn all_decaying(&self) -> bool {
        let (l1, l2) = self.coupled_eigenvalues();
        [
            self.plus_minus,
            self.one_minus,
            self.zero_minus,
            self.one_zero,
            l1,
            l2,
        ]
        .iter()
        .all(|z| z.re < 0.0)
    }
}

/// Coherence decay table for collective dissipation; see [`CoherenceRates`].
pub fn coherence_decay_rates(bath: &BathSpec) -> CoherenceRates {
    let (gd, gu) = bath.rates();
    let oi = bath.interaction();
    CoherenceRates {
        plus_minus: Complex64::new(-2.0 * (gd + gu), -2.0 * oi),
        one_minus: Complex64::new(-2.0 * gd, -oi),
        zero_minus: Complex64::new(-2.0 * gu, -oi),
        one_zero: Complex64::new(-2.0 * (gd + gu), 0.0),
        coupled: [
            [Complex64::new(-2.0 * (2.0 * gd + gu), oi), cre(4.0 * gu)],
            [cre(4.0 * gd), Complex64::new(-2.0 * (gd + 2.0 * gu), -oi)],
        ],
    }
}

// ---------------------------------------------------------------------------
// Dipole–dipole exchange strength
// ---------------------------------------------------------------------------

/// Near-field dipole–dipole exchange strength
///
/// Ω = d²(1 − 3cos²θ) / (4π·ε·R³)
///
/// for two parallel dipoles of magnitude `dipole` separated by `separation`
/// at angle θ between the dipole axis and the separation axis, in a medium
/// of permittivity `permittivity`. Vanishes at the magic angle
/// cos²θ = 1/3 and changes sign across it.
pub fn vdw_interaction_strength(
    dipole: f64,
    separation: f64,
    cos_theta: f64,
    permittivity: f64,
) -> Result<f64> {
    if !dipole.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "dipole moment must be finite, got {dipole}"
        )));
    }
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "separation must be positive and finite, got {separation}"
        )));
    }
    if !(cos_theta.abs() <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "cos θ must lie in [−1, 1], got {cos_theta}"
        )));
    }
    if !(permittivity > 0.0 && permittivity.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "permittivity must be positive and finite, got {permittivity}"
        )));
    }
    let geometric = 1.0 - 3.0 * cos_theta * cos_theta;
    Ok(dipole * dipole * geometric
        / (4.0 * std::f64::consts::PI * permittivity * separation.powi(3)))
}
