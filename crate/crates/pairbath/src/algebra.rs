//! Dense complex linear algebra for a pair of two-level systems.
//!
//! Everything is small and exact-minded: 2×2 reduced states, 4×4 pair states,
//! 16×16 superoperators. The product basis is ordered
//! {|00⟩, |01⟩, |10⟩, |11⟩} with |0⟩ the single-qubit ground state, so a
//! basis index is 2·q₁ + q₂. The collective basis is ordered
//! {|ψ₀⟩ = |00⟩, |ψ₊⟩, |ψ₋⟩, |ψ₁⟩ = |11⟩} with |ψ±⟩ = (|01⟩ ± |10⟩)/√2:
//! |ψ₊⟩ is the bright single-excitation state, |ψ₋⟩ the dark one.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise Hermiticity tolerance for density-matrix validation.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unit-trace tolerance for density-matrix validation.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues are accepted down to this floor. Fixed-step integration
/// round-off produces spurious negatives of about this size on pure states;
/// anything lower indicates a genuinely unphysical matrix.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Shorthand for a purely real complex scalar.
pub(crate) fn cre(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

/// A dense square complex matrix of dimension 2, 4, or 16.
///
/// The entry contract is row-major: `get(i, j)` is the element in row `i`,
/// column `j`, regardless of internal storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if matches!(dim, 2 | 4 | 16) {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "matrix dimension must be 2, 4, or 16, got {dim}"
            )))
        }
    }

    /// The zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(Self {
            inner: DMatrix::zeros(dim, dim),
        })
    }

    /// The identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(Self {
            inner: DMatrix::identity(dim, dim),
        })
    }

    /// Builds a matrix from `dim²` row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}×{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(dim, dim, entries),
        })
    }

    /// Builds a real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        Self::check_dim(dim)?;
        let mut m = DMatrix::zeros(dim, dim);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = cre(d);
        }
        Ok(Self { inner: m })
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.is_square());
        debug_assert!(Self::check_dim(inner.nrows()).is_ok());
        Self { inner }
    }

    pub(crate) fn inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    /// Matrix dimension (the matrix is square).
    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    /// Entry in row `i`, column `j`. Panics if out of bounds.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    /// Sets the entry in row `i`, column `j`. Panics if out of bounds.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.inner[(i, j)] = value;
    }

    /// Conjugate transpose A†.
    pub fn dagger(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    /// Matrix product A·B. Panics on dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "matrix product dimension mismatch");
        Self {
            inner: &self.inner * &other.inner,
        }
    }

    /// Matrix sum A + B. Panics on dimension mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "matrix sum dimension mismatch");
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    /// Matrix difference A − B. Panics on dimension mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.dim(),
            other.dim(),
            "matrix difference dimension mismatch"
        );
        Self {
            inner: &self.inner - &other.inner,
        }
    }

    /// Scalar multiple s·A.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            inner: &self.inner * s,
        }
    }

    /// Matrix trace.
    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// Frobenius norm ‖A‖_F = √Σ|a_ij|².
    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Maximum entrywise deviation from Hermiticity, max|A_ij − conj(A_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Applies the matrix to a state vector. Panics on dimension mismatch.
    pub fn apply_vector(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim(), v.len(), "matrix-vector dimension mismatch");
        let vec = DVector::from_column_slice(v);
        (&self.inner * vec).iter().copied().collect()
    }
}

// ---------------------------------------------------------------------------
// BellBasis
// ---------------------------------------------------------------------------

/// The orthonormal collective basis {|ψ₀⟩, |ψ₊⟩, |ψ₋⟩, |ψ₁⟩}.
///
/// Basis indices are 0 → |ψ₀⟩ = |00⟩, 1 → |ψ₊⟩, 2 → |ψ₋⟩, 3 → |ψ₁⟩ = |11⟩.
#[derive(Clone, Debug)]
pub struct BellBasis {
    /// Unitary whose columns are the basis vectors in product coordinates.
    unitary: DMatrix<Complex64>,
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::standard()
    }
}

impl BellBasis {
    /// Constructs the standard collective basis.
    pub fn standard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut u = DMatrix::zeros(4, 4);
        u[(0, 0)] = cre(1.0); // |ψ₀⟩ = |00⟩
        u[(1, 1)] = cre(s); // |ψ₊⟩ = (|01⟩ + |10⟩)/√2
        u[(2, 1)] = cre(s);
        u[(1, 2)] = cre(s); // |ψ₋⟩ = (|01⟩ − |10⟩)/√2
        u[(2, 2)] = cre(-s);
        u[(3, 3)] = cre(1.0); // |ψ₁⟩ = |11⟩
        Self { unitary: u }
    }

    /// The `k`-th basis vector in product coordinates. Panics if `k > 3`.
    pub fn vector(&self, k: usize) -> [Complex64; 4] {
        assert!(k < 4, "collective basis index must be 0..=3");
        let col = self.unitary.column(k);
        [col[0], col[1], col[2], col[3]]
    }

    /// The basis-change unitary whose columns are the basis vectors.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_inner(self.unitary.clone())
    }

    /// Matrix element ⟨ψ_bra| M |ψ_ket⟩. Panics on a non-4×4 matrix or an
    /// index above 3.
    pub fn matrix_element(&self, m: &ComplexMatrix, bra: usize, ket: usize) -> Complex64 {
        assert_eq!(m.dim(), 4, "collective matrix elements need a 4×4 matrix");
        assert!(bra < 4 && ket < 4, "collective basis index must be 0..=3");
        let b = self.unitary.column(bra);
        let k = self.unitary.column(ket);
        (b.adjoint() * m.inner() * k)[(0, 0)]
    }

    /// Conjugates a product-basis matrix into collective coordinates, U†MU.
    pub fn to_bell_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.dim(), 4, "basis conversion needs a 4×4 matrix");
        ComplexMatrix::from_inner(self.unitary.adjoint() * m.inner() * &self.unitary)
    }

    /// Conjugates a collective-coordinate matrix back to the product basis,
    /// UMU†.
    pub fn from_bell_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.dim(), 4, "basis conversion needs a 4×4 matrix");
        ComplexMatrix::from_inner(&self.unitary * m.inner() * self.unitary.adjoint())
    }
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (within the tolerances above). Dimension 4 for the pair, 2 for a reduced
/// single-qubit state. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::Dimension(format!(
                "density matrices are 4×4 (pair) or 2×2 (reduced), got {dim}×{dim}"
            )));
        }
        let herm = matrix.hermiticity_defect();
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "Hermiticity defect {herm:.3e} exceeds {HERMITICITY_TOL:.0e}"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {tr} deviates from 1 by more than {TRACE_TOL:.0e}"
            )));
        }
        let lambda_min = hermitian_eigenvalues(matrix.inner())
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if lambda_min < EIGENVALUE_FLOOR {
            return Err(Error::InvalidState(format!(
                "eigenvalue {lambda_min:.3e} below the positivity floor {EIGENVALUE_FLOOR:.0e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Symmetrizes ((M + M†)/2), renormalizes the trace, and validates.
    /// Used by the integrator and the numeric steady-state solver to strip
    /// round-off before validation.
    pub(crate) fn from_hermitized(m: &DMatrix<Complex64>) -> Result<Self> {
        let h = (m + m.adjoint()) * cre(0.5);
        let tr = h.trace().re;
        if !(tr > 0.0) {
            return Err(Error::InvalidState(format!(
                "cannot renormalize a matrix of trace {tr}"
            )));
        }
        Self::new(ComplexMatrix::from_inner(h * cre(1.0 / tr)))
    }

    /// The underlying matrix in the product basis.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Matrix dimension (2 or 4).
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Eigenvalues in ascending order (real, since the matrix is Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = hermitian_eigenvalues(self.matrix.inner());
        ev.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        ev
    }
}

/// Eigenvalues of a (numerically) Hermitian matrix. The input is symmetrized
/// first so that validation tolerances, not the eigensolver, decide what is
/// acceptable.
fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let h = (m + m.adjoint()) * cre(0.5);
    h.symmetric_eigen().eigenvalues.iter().copied().collect()
}

/// Trace distance ½‖ρ − σ‖₁ = ½ Σ|λ_i(ρ − σ)|. Panics on dimension mismatch.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "trace distance needs equal dimensions");
    let diff = a.matrix().inner() - b.matrix().inner();
    hermitian_eigenvalues(&diff)
        .iter()
        .map(|l| l.abs())
        .sum::<f64>()
        * 0.5
}

// ---------------------------------------------------------------------------
// BellPopulations
// ---------------------------------------------------------------------------

/// Populations (p₀, p₊, p₋, p₁) of the collective basis states, together with
/// the bright-sector weight r = p₀ + p₊ + p₁ conserved by collective
/// dissipation.
///
/// Construction clamps negatives above [`EIGENVALUE_FLOOR`] to zero and
/// renormalizes the sum to exactly one, so the stored invariants
/// (populations in [0, 1], Σp = 1, r = p₀ + p₊ + p₁) hold by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellPopulations {
    p0: f64,
    pplus: f64,
    pminus: f64,
    p1: f64,
}

/// Input populations may deviate from unit sum by at most this much before
/// renormalization; larger deviations indicate a genuinely unnormalized input.
const POPULATION_SUM_TOL: f64 = 1e-9;

impl BellPopulations {
    /// Validates, clamps round-off negatives, and renormalizes.
    pub fn new(p0: f64, pplus: f64, pminus: f64, p1: f64) -> Result<Self> {
        let raw = [p0, pplus, pminus, p1];
        for (name, &p) in ["p0", "p_plus", "p_minus", "p1"].iter().zip(&raw) {
            if !p.is_finite() || !(EIGENVALUE_FLOOR..=1.0 + TRACE_TOL).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "population {name} = {p} outside [0, 1]"
                )));
            }
        }
        let clamped = raw.map(|p| p.max(0.0));
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > POPULATION_SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "populations sum to {sum}, not 1"
            )));
        }
        let [p0, pplus, pminus, p1] = clamped.map(|p| p / sum);
        Ok(Self {
            p0,
            pplus,
            pminus,
            p1,
        })
    }

    /// Population of |ψ₀⟩ = |00⟩.
    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Population of the bright state |ψ₊⟩.
    pub fn pplus(&self) -> f64 {
        self.pplus
    }

    /// Population of the dark state |ψ₋⟩.
    pub fn pminus(&self) -> f64 {
        self.pminus
    }

    /// Population of |ψ₁⟩ = |11⟩.
    pub fn p1(&self) -> f64 {
        self.p1
    }

    /// Bright-sector weight r = p₀ + p₊ + p₁ = 1 − p₋.
    pub fn r(&self) -> f64 {
        self.p0 + self.pplus + self.p1
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// The collective ladder operators (S⁺, S⁻) with S⁺ = σ₁⁺ + σ₂⁺ in the
/// product basis; S⁻ = (S⁺)†. S⁺ = √2|ψ₊⟩⟨ψ₀| + √2|ψ₁⟩⟨ψ₊|, so the dark
/// state |ψ₋⟩ is annihilated by both.
pub fn collective_ladder_ops() -> (ComplexMatrix, ComplexMatrix) {
    let mut sp = DMatrix::zeros(4, 4);
    // σ⁺|0⟩ = |1⟩: qubit 1 flips |0q⟩ → |1q⟩ (index +2), qubit 2 flips
    // |q0⟩ → |q1⟩ (index +1).
    sp[(2, 0)] = cre(1.0); // σ₁⁺ on |00⟩ → |10⟩
    sp[(3, 1)] = cre(1.0); // σ₁⁺ on |01⟩ → |11⟩
    sp[(1, 0)] = cre(1.0); // σ₂⁺ on |00⟩ → |01⟩
    sp[(3, 2)] = cre(1.0); // σ₂⁺ on |10⟩ → |11⟩
    let sm = sp.adjoint();
    (ComplexMatrix::from_inner(sp), ComplexMatrix::from_inner(sm))
}

/// Free Hamiltonian H₀ = ω(σ₁⁺σ₁⁻ + σ₂⁺σ₂⁻) = ω·diag(0, 1, 1, 2); counts
/// excitations. Errors on non-positive ω.
pub fn free_hamiltonian(omega: f64) -> Result<ComplexMatrix> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "transition energy omega must be positive and finite, got {omega}"
        )));
    }
    ComplexMatrix::from_diagonal(&[0.0, omega, omega, 2.0 * omega])
}

/// Thermal product state ρ(β) = e^{−βH₀}/Z at dimensionless inverse
/// temperature ωβ, with Z = (1 + e^{−ωβ})². Accepts the extended reals:
/// ωβ = +∞ gives the ground state |00⟩⟨00|, ωβ = −∞ the fully inverted
/// |11⟩⟨11|. Negative ωβ is evaluated in an overflow-free form.
///
/// Panics on NaN input (the extended-real domain excludes NaN).
pub fn thermal_state(omega_beta: f64) -> DensityMatrix {
    assert!(!omega_beta.is_nan(), "omega_beta must not be NaN");
    let weights = if omega_beta == f64::INFINITY {
        [1.0, 0.0, 0.0, 0.0]
    } else if omega_beta == f64::NEG_INFINITY {
        [0.0, 0.0, 0.0, 1.0]
    } else if omega_beta >= 0.0 {
        let e = (-omega_beta).exp(); // e ≤ 1
        let z = (1.0 + e) * (1.0 + e);
        [1.0 / z, e / z, e / z, e * e / z]
    } else {
        // Multiply numerator and denominator by e^{2ωβ} to keep everything
        // bounded for arbitrarily negative ωβ.
        let e = omega_beta.exp(); // e < 1
        let z = (1.0 + e) * (1.0 + e);
        [e * e / z, e / z, e / z, 1.0 / z]
    };
    let m = ComplexMatrix::from_diagonal(&weights).expect("4×4 diagonal");
    DensityMatrix::new(m).expect("thermal weights form a valid state")
}

/// Collective-basis populations ⟨ψ_i|ρ|ψ_i⟩ of a 4×4 state, plus the
/// conserved bright weight r.
pub fn to_bell_populations(rho: &DensityMatrix) -> Result<BellPopulations> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(
            "collective populations need the 4×4 pair state".into(),
        ));
    }
    let m = rho.matrix();
    let p0 = m.get(0, 0).re;
    let mid = 0.5 * (m.get(1, 1).re + m.get(2, 2).re);
    let cross = m.get(1, 2).re; // Re ρ₁₂ = Re ρ₂₁ for Hermitian ρ
    let p1 = m.get(3, 3).re;
    BellPopulations::new(p0, mid + cross, mid - cross, p1)
}

/// The Bell-diagonal 4×4 state Σ p_i |ψ_i⟩⟨ψ_i| in the product basis.
pub fn bell_diagonal_state(pops: &BellPopulations) -> DensityMatrix {
    let mid = 0.5 * (pops.pplus() + pops.pminus());
    let cross = 0.5 * (pops.pplus() - pops.pminus());
    let mut m = ComplexMatrix::zeros(4).expect("4×4");
    m.set(0, 0, cre(pops.p0()));
    m.set(1, 1, cre(mid));
    m.set(2, 2, cre(mid));
    m.set(1, 2, cre(cross));
    m.set(2, 1, cre(cross));
    m.set(3, 3, cre(pops.p1()));
    DensityMatrix::new(m).expect("collective populations form a valid state")
}

/// Which qubit of the pair to keep when tracing the other one out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    /// Keep qubit 1 (the first tensor factor).
    First,
    /// Keep qubit 2 (the second tensor factor).
    Second,
}

/// Reduced 2×2 state of the kept qubit; the trace is preserved.
pub fn partial_trace(rho: &DensityMatrix, keep: Qubit) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(
            "partial trace needs the 4×4 pair state".into(),
        ));
    }
    let m = rho.matrix();
    let idx = |a: usize, c: usize| match keep {
        Qubit::First => 2 * a + c,  // kept index is the high bit
        Qubit::Second => 2 * c + a, // kept index is the low bit
    };
    let mut red = ComplexMatrix::zeros(2)?;
    for a in 0..2 {
        for b in 0..2 {
            let mut s = Complex64::default();
            for c in 0..2 {
                s += m.get(idx(a, c), idx(b, c));
            }
            red.set(a, b, s);
        }
    }
    DensityMatrix::new(red)
}

/// Von Neumann entropy S = −Σ λ ln λ in nats, with 0·ln 0 := 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum()
}

#[cfg(test)]
// Frozen reference constants keep every digit of the high-precision oracle.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ci(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ladder_ops_act_as_expected() {
        let (sp, sm) = collective_ladder_ops();
        // S⁺|00⟩ = |01⟩ + |10⟩
        let v = sp.apply_vector(&[cre(1.0), cre(0.0), cre(0.0), cre(0.0)]);
        assert_eq!(v, vec![cre(0.0), cre(1.0), cre(1.0), cre(0.0)]);
        // Both operators annihilate the dark state.
        let basis = BellBasis::standard();
        let dark = basis.vector(2);
        for op in [&sp, &sm] {
            let w = op.apply_vector(&dark);
            assert!(w.iter().all(|c| c.norm() < 1e-15), "dark state not dark");
        }
        // ⟨ψ₁|S⁺|ψ₊⟩ = √2 and S⁻ = (S⁺)†.
        let elem = basis.matrix_element(&sp, 3, 1);
        assert_abs_diff_eq!(elem.re, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(elem.im, 0.0, epsilon = 1e-15);
        assert_eq!(sp.dagger(), sm);
    }

    #[test]
    fn free_hamiltonian_counts_excitations() {
        let h = free_hamiltonian(1.0).unwrap();
        for (i, want) in [0.0, 1.0, 1.0, 2.0].iter().enumerate() {
            assert_eq!(h.get(i, i), cre(*want));
        }
        // |ψ₋⟩ is a single-excitation eigenstate.
        let basis = BellBasis::standard();
        let dark = basis.vector(2);
        let hv = h.apply_vector(&dark);
        for (a, b) in hv.iter().zip(&dark) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
        assert_eq!(free_hamiltonian(2.0).unwrap().trace(), cre(8.0));
        assert!(free_hamiltonian(0.0).is_err());
        assert!(free_hamiltonian(-1.0).is_err());
    }

    #[test]
    fn thermal_state_limits_and_frozen_point() {
        let hot = thermal_state(0.0);
        for i in 0..4 {
            assert_abs_diff_eq!(hot.matrix().get(i, i).re, 0.25, epsilon = 1e-15);
        }
        let ground = thermal_state(f64::INFINITY);
        assert_eq!(ground.matrix().get(0, 0), cre(1.0));
        let inverted = thermal_state(f64::NEG_INFINITY);
        assert_eq!(inverted.matrix().get(3, 3), cre(1.0));

        let t2 = thermal_state(2.0);
        let want = [
            0.775_803_492_574_375_93,
            0.104_993_585_403_506_52,
            0.104_993_585_403_506_52,
            0.014_209_336_618_611_039,
        ];
        for (i, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(t2.matrix().get(i, i).re, *w, epsilon = 1e-15);
        }
        // Deep negative temperatures stay finite.
        let cold_inverted = thermal_state(-800.0);
        assert_abs_diff_eq!(cold_inverted.matrix().get(3, 3).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bell_populations_of_reference_states() {
        let pops = to_bell_populations(&thermal_state(2.0)).unwrap();
        assert_abs_diff_eq!(pops.r(), 0.895_006_414_596_493_48, epsilon = 1e-15);
        assert_abs_diff_eq!(pops.pplus(), pops.pminus(), epsilon = 1e-16);

        let basis = BellBasis::standard();
        let dark = basis.vector(2);
        let mut m = ComplexMatrix::zeros(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, dark[i] * dark[j].conj());
            }
        }
        let dark_state = DensityMatrix::new(m).unwrap();
        let pops = to_bell_populations(&dark_state).unwrap();
        assert_eq!(
            (pops.p0(), pops.pplus(), pops.pminus(), pops.p1()),
            (0.0, 0.0, 1.0, 0.0)
        );
        assert_eq!(pops.r(), 0.0);

        let pops = to_bell_populations(&thermal_state(0.0)).unwrap();
        assert_abs_diff_eq!(pops.r(), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn bell_diagonal_state_round_trips() {
        let pops = BellPopulations::new(0.4, 0.3, 0.1, 0.2).unwrap();
        let rho = bell_diagonal_state(&pops);
        assert_abs_diff_eq!(rho.matrix().get(1, 1).re, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(1, 2).re, 0.1, epsilon = 1e-15);
        let back = to_bell_populations(&rho).unwrap();
        assert_abs_diff_eq!(back.p0(), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(back.pplus(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(back.pminus(), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(back.p1(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn bell_populations_validation() {
        assert!(BellPopulations::new(0.5, 0.5, 0.5, -0.5).is_err());
        assert!(BellPopulations::new(0.3, 0.3, 0.3, 0.3).is_err());
        // Round-off negatives are clamped.
        let p = BellPopulations::new(1.0, 0.0, -1e-13, 1e-13).unwrap();
        assert_eq!(p.pminus(), 0.0);
    }

    #[test]
    fn partial_trace_reference_values() {
        // Product ground state.
        let ground = thermal_state(f64::INFINITY);
        let red = partial_trace(&ground, Qubit::First).unwrap();
        assert_eq!(red.matrix().get(0, 0), cre(1.0));

        // Maximally entangled bright state: both qubits maximally mixed.
        let pops = BellPopulations::new(0.0, 1.0, 0.0, 0.0).unwrap();
        let bright = bell_diagonal_state(&pops);
        for keep in [Qubit::First, Qubit::Second] {
            let red = partial_trace(&bright, keep).unwrap();
            assert_abs_diff_eq!(red.matrix().get(0, 0).re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(red.matrix().get(1, 1).re, 0.5, epsilon = 1e-15);
        }

        // Reduced state of the r = 1 collective steady state in a cold bath.
        let zp = 1.0 + (-2.0f64).exp() + (-4.0f64).exp();
        let pops = BellPopulations::new(1.0 / zp, (-2.0f64).exp() / zp, 0.0, (-4.0f64).exp() / zp)
            .unwrap();
        let rho = bell_diagonal_state(&pops);
        let red = partial_trace(&rho, Qubit::Second).unwrap();
        assert_abs_diff_eq!(
            red.matrix().get(0, 0).re,
            0.925_468_546_110_434_05,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            red.matrix().get(1, 1).re,
            0.074_531_453_889_565_948,
            epsilon = 1e-14
        );

        assert!(partial_trace(&red, Qubit::First).is_err());
    }

    #[test]
    fn entropy_reference_values() {
        let ground = thermal_state(f64::INFINITY);
        assert_abs_diff_eq!(von_neumann_entropy(&ground), 0.0, epsilon = 1e-12);

        let hot = thermal_state(0.0);
        assert_abs_diff_eq!(von_neumann_entropy(&hot), 4.0f64.ln(), epsilon = 1e-14);

        // Bell-diagonal state with populations (¼,¼,¼,¼) is also maximally
        // mixed.
        let pops = BellPopulations::new(0.25, 0.25, 0.25, 0.25).unwrap();
        let rho = bell_diagonal_state(&pops);
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 4.0f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn entropy_is_basis_invariant_spot_check() {
        let pops = BellPopulations::new(0.55, 0.25, 0.15, 0.05).unwrap();
        let rho = bell_diagonal_state(&pops);
        let basis = BellBasis::standard();
        let rotated = DensityMatrix::new(basis.to_bell_matrix(rho.matrix())).unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&rho),
            von_neumann_entropy(&rotated),
            epsilon = 1e-12
        );
    }

    #[test]
    fn density_matrix_validation_rejects_bad_inputs() {
        // Non-Hermitian.
        let mut m = ComplexMatrix::identity(4).unwrap().scale(cre(0.25));
        m.set(0, 1, ci(0.1, 0.1));
        assert!(DensityMatrix::new(m).is_err());

        // Wrong trace.
        let m = ComplexMatrix::identity(4).unwrap().scale(cre(0.3));
        assert!(DensityMatrix::new(m).is_err());

        // Negative eigenvalue.
        let m = ComplexMatrix::from_diagonal(&[1.5, -0.5, 0.0, 0.0]).unwrap();
        assert!(DensityMatrix::new(m).is_err());

        // Superoperator-sized matrices are not states.
        let m = ComplexMatrix::identity(16).unwrap().scale(cre(1.0 / 16.0));
        assert!(DensityMatrix::new(m).is_err());
    }

    #[test]
    fn trace_distance_reference_values() {
        let a = thermal_state(f64::INFINITY);
        let b = thermal_state(f64::NEG_INFINITY);
        assert_abs_diff_eq!(trace_distance(&a, &b), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(trace_distance(&a, &a), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bell_basis_is_orthonormal() {
        let basis = BellBasis::standard();
        for i in 0..4 {
            for j in 0..4 {
                let vi = basis.vector(i);
                let vj = basis.vector(j);
                let dot: Complex64 = vi.iter().zip(&vj).map(|(a, b)| a.conj() * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - cre(want)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matrix_dimension_contract() {
        assert!(ComplexMatrix::zeros(3).is_err());
        assert!(ComplexMatrix::from_rows(2, &[cre(1.0)]).is_err());
        let m = ComplexMatrix::from_rows(2, &[cre(1.0), cre(0.0), cre(0.0), cre(1.0)]).unwrap();
        assert_eq!(m.get(0, 0), cre(1.0));
        assert_eq!(m.hermiticity_defect(), 0.0);
    }
}
